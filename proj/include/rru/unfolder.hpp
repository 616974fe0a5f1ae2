#pragma once

#include <cstddef>
#include <optional>

#include "rru/rule.hpp"
#include "rru/scheme.hpp"

namespace rru {

struct UnfoldStats {
  std::size_t steps = 0;
  std::size_t guard_probes = 0;
  // Set when unfolding stopped at the step cap rather than at a failed guard.
  bool capped = false;
};

struct UnfoldResult {
  // Most-unfolded first, without the rule whose guard failed.
  RuleDeck deck;
  // The rule whose guard failed, if unfolding stopped that way.
  std::optional<GuardedRule> discarded;
  UnfoldStats stats;
};

// True iff a fresh copy of the rule's head unifies with the goal and its
// guard then succeeds. The bindings are left as they were.
bool guard_applicable(const Term& goal, const GuardedRule& rule, Session& session);

// Upper bound on useful unfolding steps for a goal: a rule built after i
// steps covers 2^i original steps, which no input smaller than 2^i can use.
// Counts nodes plus integer bits, plus a margin of 64.
std::size_t default_unfold_cap(const Term& goal);

// Repeatedly applies the scheme to the top rule while that rule's guard
// holds for the goal. Throws SchemeFailure if the scheme rejects a rule.
UnfoldResult unfold_repeat(const Term& goal, const RuleDeck& deck, const Scheme& scheme, Session& session,
                           std::optional<std::size_t> max_steps = std::nullopt);

}  // namespace rru
