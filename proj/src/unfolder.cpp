#include "rru/unfolder.hpp"

#include <algorithm>

#include "rru/builtins.hpp"
#include "rru/errors.hpp"

namespace rru {

bool guard_applicable(const Term& goal, const GuardedRule& rule, Session& session) {
  Renamer rename(session);
  const Term head = rename(rule.head);
  const Term guard = rename(rule.guard);
  Bindings::Checkpoint cp(session.bindings());
  const bool ok = unify(head, goal, session.bindings()) && eval_builtin(guard, session.bindings());
  cp.rollback();
  return ok;
}

std::size_t default_unfold_cap(const Term& goal) {
  std::size_t size = 64;
  std::vector<const Term*> stack{&goal};
  while (!stack.empty()) {
    const Term& t = deref(*stack.back());
    stack.pop_back();
    ++size;
    if (t.is_int()) size += t.integer_value().bit_length();
    for (const Term& a : t.args()) stack.push_back(&a);
  }
  return size;
}

UnfoldResult unfold_repeat(const Term& goal, const RuleDeck& deck, const Scheme& scheme, Session& session,
                           std::optional<std::size_t> max_steps) {
  UnfoldResult out;
  if (deck.empty()) return out;
  const std::size_t cap = max_steps ? *max_steps : default_unfold_cap(goal);
  // generated[i] is the rule after i+1 steps; the working list is
  // generated reversed followed by the input deck.
  std::vector<GuardedRule> generated;
  while (true) {
    const GuardedRule& top = generated.empty() ? deck.front() : generated.back();
    if (top.is_base()) break;
    ++out.stats.guard_probes;
    if (!guard_applicable(goal, top, session)) {
      out.discarded = top;
      break;
    }
    if (out.stats.steps >= cap) {
      out.stats.capped = true;
      break;
    }
    std::optional<GuardedRule> next;
    try {
      next = scheme.step(top, session);
    } catch (const TemplateMismatch& e) {
      throw SchemeFailure(e.what());
    }
    if (!next) break;
    generated.push_back(std::move(*next));
    ++out.stats.steps;
  }
  const bool dropped_generated = out.discarded && !generated.empty();
  const bool dropped_original = out.discarded && generated.empty();
  if (dropped_generated) generated.pop_back();
  out.deck.reserve(generated.size() + deck.size());
  std::move(generated.rbegin(), generated.rend(), std::back_inserter(out.deck));
  out.deck.insert(out.deck.end(), deck.begin() + (dropped_original ? 1 : 0), deck.end());
  return out;
}

}  // namespace rru
