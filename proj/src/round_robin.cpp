#include "rru/round_robin.hpp"

#include "rru/errors.hpp"
#include "rru/printer.hpp"

namespace rru {

RoundRobinState RoundRobinState::initial(const Program& program, const SchemeRegistry& registry, const Term& goal) {
  RoundRobinState s;
  for (std::size_t i = 0; i < program.decks.size(); ++i) {
    const std::string& name = i < program.schemes.size() ? program.schemes[i] : std::string();
    const Scheme* scheme = registry.find(name);
    if (!scheme) throw ConfigError("deck " + std::to_string(i) + " has no known scheme ('" + name + "')");
    s.entries_.push_back({i, program.decks[i], scheme, Term()});
  }
  s.entries_.push_back({std::nullopt, {}, nullptr, goal});
  return s;
}

std::vector<const RuleDeck*> RoundRobinState::decks() const {
  std::vector<const RuleDeck*> out;
  for (const Entry& e : entries_) {
    if (!e.deck_id) continue;
    if (out.size() <= *e.deck_id) out.resize(*e.deck_id + 1, nullptr);
    out[*e.deck_id] = &e.deck;
  }
  return out;
}

void umr(const Term& goal, RoundRobinState& state, Session& session) {
  using Clock = std::chrono::steady_clock;
  Term current = goal;
  while (!deref(current).is_atom(sym::kTrue)) {
    if (state.max_entries && state.entries_processed >= *state.max_entries) {
      throw StepLimitExceeded("round-robin stopped after " + std::to_string(state.entries_processed) + " entries");
    }
    ++state.entries_processed;
    RoundRobinState::Entry e = std::move(state.entries_.front());
    state.entries_.pop_front();
    if (!e.deck_id) {
      // Compared on renamed copies, so the check binds nothing.
      if (unifiable(rename_apart(current, session), rename_apart(e.marker_goal, session), session.bindings())) {
        throw NoProgress("no rule applied to " + format_term(resolve(current)) + " in a full round");
      }
      e.marker_goal = resolve(current);
      state.entries_.push_back(std::move(e));
      continue;
    }
    const auto t0 = Clock::now();
    UnfoldResult unfolded = unfold_repeat(current, e.deck, *e.scheme, session);
    const auto t1 = Clock::now();
    MipOutcome out = mip_cont(current, unfolded.deck, session);
    const auto t2 = Clock::now();
    state.unfold_time += t1 - t0;
    state.interp_time += t2 - t1;
    state.unfold_stats.steps += unfolded.stats.steps;
    state.unfold_stats.guard_probes += unfolded.stats.guard_probes;
    state.unfold_stats.capped = state.unfold_stats.capped || unfolded.stats.capped;
    state.mip_stats += out.stats;
    if (out.stats.applications() > 0) ++state.rounds;
    // The rule that failed its guard now may hold for a later goal, so it
    // stays on top of the stored deck.
    e.deck.clear();
    if (unfolded.discarded) e.deck.push_back(std::move(*unfolded.discarded));
    std::move(unfolded.deck.begin(), unfolded.deck.end(), std::back_inserter(e.deck));
    state.entries_.push_back(std::move(e));
    current = std::move(out.continuation);
  }
}

}  // namespace rru
