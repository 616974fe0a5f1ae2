#include "rru/meta_interp.hpp"

#include <algorithm>
#include <optional>

#include "rru/builtins.hpp"
#include "rru/errors.hpp"
#include "rru/printer.hpp"

namespace rru {

MipStats& MipStats::operator+=(const MipStats& o) {
  recursive_applications += o.recursive_applications;
  base_applications += o.base_applications;
  guard_probes += o.guard_probes;
  builtin_calls += o.builtin_calls;
  max_depth = std::max(max_depth, o.max_depth);
  return *this;
}

namespace {

Term conj2(Term a, Term b) {
  if (deref(a).is_atom(sym::kTrue)) return b;
  if (deref(b).is_atom(sym::kTrue)) return a;
  return Term::compound(sym::kComma, {std::move(a), std::move(b)});
}

// A committed rule instance: guard already run, body parts renamed.
struct Applied {
  Term before;
  Term rec_goals;
  Term after;
  bool base;
};

class Interp {
 public:
  Interp(std::span<const GuardedRule> deck, Session& session, MipStats& stats, MipTrace* trace)
      : root_(deck.data()), session_(session), stats_(stats), trace_(trace) {}

  bool solve(const Term& goal, std::span<const GuardedRule> deck, std::size_t depth, std::ptrdiff_t parent) {
    Term g = deref(goal);
    while (g.is_compound(sym::kComma, 2)) {
      if (!solve(g.arg(0), deck, depth, parent)) return false;
      Term rest = deref(g.arg(1));
      g = std::move(rest);
    }
    if (g.is_atom(sym::kTrue)) return true;
    if (is_builtin(g)) return builtin(g);
    for (std::size_t i = 0; i < deck.size(); ++i) {
      std::optional<Applied> a = try_rule(g, deck[i]);
      if (!a) continue;
      const std::ptrdiff_t self = record(deck, i, parent, depth, a->base);
      if (!builtin(a->before)) return false;
      if (!solve(a->rec_goals, deck.subspan(i + 1), depth + 1, self)) return false;
      return builtin(a->after);
    }
    return false;
  }

  Term cont(const Term& goal, std::span<const GuardedRule> deck, std::size_t depth, std::ptrdiff_t parent) {
    Term g = deref(goal);
    if (g.is_compound(sym::kComma, 2)) {
      Term c1 = cont(g.arg(0), deck, depth, parent);
      Term c2 = cont(g.arg(1), deck, depth, parent);
      return conj2(std::move(c1), std::move(c2));
    }
    if (g.is_atom(sym::kTrue)) return g;
    if (is_builtin(g)) {
      if (!builtin(g)) throw CommittedBodyFailure("builtin goal failed: " + format_term(g));
      return Term::atom(sym::kTrue);
    }
    for (std::size_t i = 0; i < deck.size(); ++i) {
      std::optional<Applied> a = try_rule(g, deck[i]);
      if (!a) continue;
      const std::ptrdiff_t self = record(deck, i, parent, depth, a->base);
      if (!builtin(a->before)) throw CommittedBodyFailure("before-goals failed: " + format_term(a->before));
      Term c = cont(a->rec_goals, deck.subspan(i + 1), depth + 1, self);
      if (!builtin(a->after)) throw CommittedBodyFailure("after-goals failed: " + format_term(a->after));
      return c;
    }
    return g;
  }

 private:
  // Renames head and guard, and the body only once the guard has held.
  std::optional<Applied> try_rule(const Term& goal, const GuardedRule& rule) {
    ++stats_.guard_probes;
    Renamer rename(session_);
    const Term head = rename(rule.head);
    const Term guard = rename(rule.guard);
    Bindings& b = session_.bindings();
    Bindings::Checkpoint cp(b);
    if (!unify(head, goal, b) || !eval_builtin(guard, b)) {
      cp.rollback();
      return std::nullopt;
    }
    cp.commit();
    return Applied{rename(rule.before), rename(rule.rec_goals), rename(rule.after), rule.is_base()};
  }

  bool builtin(const Term& g) {
    if (deref(g).is_atom(sym::kTrue)) return true;
    ++stats_.builtin_calls;
    return eval_builtin(g, session_.bindings());
  }

  std::ptrdiff_t record(std::span<const GuardedRule> deck, std::size_t i, std::ptrdiff_t parent, std::size_t depth,
                        bool base) {
    if (base) {
      ++stats_.base_applications;
    } else {
      ++stats_.recursive_applications;
    }
    stats_.max_depth = std::max(stats_.max_depth, depth + 1);
    if (!trace_) return -1;
    trace_->push_back({static_cast<std::size_t>(&deck[i] - root_), parent});
    return static_cast<std::ptrdiff_t>(trace_->size()) - 1;
  }

  const GuardedRule* root_;
  Session& session_;
  MipStats& stats_;
  MipTrace* trace_;
};

}  // namespace

bool mip(const Term& goal, std::span<const GuardedRule> deck, Session& session, MipStats* stats, MipTrace* trace) {
  MipStats local;
  Interp interp(deck, session, stats ? *stats : local, trace);
  return interp.solve(goal, deck, 0, -1);
}

MipOutcome mip_cont(const Term& goal, std::span<const GuardedRule> deck, Session& session, MipTrace* trace) {
  MipOutcome out;
  Interp interp(deck, session, out.stats, trace);
  out.continuation = interp.cont(goal, deck, 0, -1);
  return out;
}

}  // namespace rru
