#pragma once

#include "rru/integer.hpp"
#include "rru/term.hpp"

namespace rru {

// true/0, =/2, \=/2, is/2, </2, >/2, =</2, >=/2, append/3, m/3, clean/2 and
// ,/2. Anything else is a user predicate.
bool is_builtin(const Term& goal);

// Evaluates a ground expression over +, -, * and integers.
// Throws UnboundArithmetic or BadExpression.
Integer eval_arith(const Term& expr);

// Runs a builtin goal. Returns false on logical failure, in which case the
// bindings are exactly as before the call.
bool eval_builtin(const Term& goal, Bindings& bindings);

// Drops `true` conjuncts, keeping the grouping of what remains.
Term clean_conjunction(const Term& goal);

// Flattens nested ','/2 into a right-associated conjunction without `true`
// conjuncts.
Term flatten_conjunction(const Term& goal);

// Stable merge of two ascending integer lists; ties keep the left element
// first.
Term merge_sorted(const Term& left, const Term& right);

}  // namespace rru
