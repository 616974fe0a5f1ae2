#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rru/term.hpp"

namespace rru {

// Clause in the four-part normal form
//
//   Head :- Guard ,!, Before, RecGoals, After.
//
// The green cut sits between the guard and the body. Guard, Before and
// After hold builtins only; RecGoals holds user-predicate calls, or `true`
// for a base case.
struct GuardedRule {
  Term head;
  Term guard;
  Term before;
  Term rec_goals;
  Term after;

  bool is_base() const;
  Symbol predicate() const;
  std::size_t arity() const;

  // Consistent fresh copy of all five parts.
  GuardedRule renamed(Session& session) const;
  // rule(Head, Guard, Before, RecGoals, After), for variant checks.
  Term as_term() const;
};

// Most-unfolded rule first, base cases last.
using RuleDeck = std::vector<GuardedRule>;

struct Program {
  std::string name;
  // One deck per original recursive rule, each ending with the base cases.
  std::vector<RuleDeck> decks;
  // Unfolding scheme name per deck.
  std::vector<std::string> schemes;
  Symbol entry;
  std::size_t entry_arity = 0;

  // The program as originally written: every recursive rule in deck order,
  // followed by the distinct base cases.
  std::vector<GuardedRule> original_clauses() const;
};

// Builds the normal form from a head, a guard and the top-level body items
// (a parenthesized group counts as one item). Exactly three items are read
// positionally as Before, RecGoals, After when that is valid; otherwise the
// flattened body is split into leading builtins, a block of user calls and
// trailing builtins. Throws EngineError if neither works.
GuardedRule normalize_clause(const Term& head, const Term& guard, std::span<const Term> body_items);

// Throws EngineError if a part holds a goal of the wrong class.
void check_rule(const GuardedRule& rule);

bool is_variant(const GuardedRule& a, const GuardedRule& b);

// "H :- G ,!, B, R, A." with variables named by first appearance.
std::string format_rule(const GuardedRule& rule);
std::string format_deck(const RuleDeck& deck);
std::string format_program(const Program& program);

}  // namespace rru
