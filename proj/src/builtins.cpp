#include "rru/builtins.hpp"

#include <string>
#include <vector>

#include "rru/errors.hpp"
#include "rru/printer.hpp"

namespace rru {

namespace {

bool is_comparison(Symbol f) {
  return f == sym::kLt || f == sym::kGt || f == sym::kLe || f == sym::kGe;
}

Integer eval_checked(const Term& expr, bool in_comparison) {
  const Term& t = deref(expr);
  switch (t.kind()) {
    case Kind::Int:
      return t.integer_value();
    case Kind::Var:
      if (in_comparison) throw InstantiationError("comparison on unbound variable");
      throw UnboundArithmetic("arithmetic on unbound variable");
    case Kind::Atom:
      throw BadExpression("not an arithmetic expression: " + format_term(t));
    case Kind::Compound:
      break;
  }
  if (t.arity() == 2) {
    Symbol f = t.functor();
    if (f == sym::kPlus) return eval_checked(t.arg(0), in_comparison) + eval_checked(t.arg(1), in_comparison);
    if (f == sym::kMinus) return eval_checked(t.arg(0), in_comparison) - eval_checked(t.arg(1), in_comparison);
    if (f == sym::kTimes) return eval_checked(t.arg(0), in_comparison) * eval_checked(t.arg(1), in_comparison);
  }
  throw BadExpression("unknown arithmetic operator " + t.functor().name() + "/" +
                      std::to_string(t.arity()));
}

bool compare_goal(Symbol f, const Term& lhs, const Term& rhs) {
  int c = compare(eval_checked(lhs, true), eval_checked(rhs, true));
  if (f == sym::kLt) return c < 0;
  if (f == sym::kGt) return c > 0;
  if (f == sym::kLe) return c <= 0;
  return c >= 0;
}

void proper_list(const Term& t, std::vector<Term>& out, const char* who) {
  if (!list_elements(t, out)) {
    throw InstantiationError(std::string(who) + ": expected a proper list, got " + format_term(t));
  }
}

Term append_lists(const Term& front, const Term& back) {
  std::vector<Term> items;
  proper_list(front, items, "append/3");
  return Term::list(items, back);
}

bool run(const Term& goal, Bindings& bindings) {
  const Term& g = deref(goal);
  if (g.is_atom(sym::kTrue)) return true;
  if (!g.is_compound()) throw EngineError("not a builtin goal: " + format_term(g));
  const Symbol f = g.functor();
  const std::size_t n = g.arity();
  if (n == 2) {
    if (f == sym::kComma) return run(g.arg(0), bindings) && run(g.arg(1), bindings);
    if (f == sym::kEq) return unify(g.arg(0), g.arg(1), bindings);
    if (f == sym::kNotEq) return !unifiable(g.arg(0), g.arg(1), bindings);
    if (f == sym::kIs) return unify(g.arg(0), Term::integer(eval_arith(g.arg(1))), bindings);
    if (is_comparison(f)) return compare_goal(f, g.arg(0), g.arg(1));
    if (f == sym::kClean) return unify(g.arg(1), clean_conjunction(g.arg(0)), bindings);
  } else if (n == 3) {
    if (f == sym::kAppend) return unify(g.arg(2), append_lists(g.arg(0), g.arg(1)), bindings);
    if (f == sym::kMerge) return unify(g.arg(2), merge_sorted(g.arg(0), g.arg(1)), bindings);
  }
  throw EngineError("not a builtin goal: " + format_term(g));
}

}  // namespace

bool is_builtin(const Term& goal) {
  const Term& g = deref(goal);
  if (g.is_atom()) return g.functor() == sym::kTrue;
  if (!g.is_compound()) return false;
  const Symbol f = g.functor();
  switch (g.arity()) {
    case 2:
      return f == sym::kComma || f == sym::kEq || f == sym::kNotEq || f == sym::kIs ||
             is_comparison(f) || f == sym::kClean;
    case 3:
      return f == sym::kAppend || f == sym::kMerge;
    default:
      return false;
  }
}

Integer eval_arith(const Term& expr) { return eval_checked(expr, false); }

bool eval_builtin(const Term& goal, Bindings& bindings) {
  Bindings::Checkpoint cp(bindings);
  if (!run(goal, bindings)) return false;  // cp rolls back
  cp.commit();
  return true;
}

Term clean_conjunction(const Term& goal) {
  const Term& g = deref(goal);
  if (!g.is_compound(sym::kComma, 2)) return g;
  Term left = clean_conjunction(g.arg(0));
  Term right = clean_conjunction(g.arg(1));
  if (deref(left).is_atom(sym::kTrue)) return right;
  if (deref(right).is_atom(sym::kTrue)) return left;
  return Term::compound(sym::kComma, {left, right});
}

Term flatten_conjunction(const Term& goal) {
  std::vector<Term> goals;
  std::vector<const Term*> stack{&goal};
  while (!stack.empty()) {
    const Term& g = deref(*stack.back());
    stack.pop_back();
    if (g.is_compound(sym::kComma, 2)) {
      stack.push_back(&g.arg(1));
      stack.push_back(&g.arg(0));
    } else if (!g.is_atom(sym::kTrue)) {
      goals.push_back(g);
    }
  }
  return Term::conjunction(goals);
}

Term merge_sorted(const Term& left, const Term& right) {
  std::vector<Term> xs;
  std::vector<Term> ys;
  proper_list(left, xs, "m/3");
  proper_list(right, ys, "m/3");
  auto value = [](const Term& t) -> const Integer& {
    const Term& d = deref(t);
    if (d.is_var()) throw InstantiationError("m/3: unbound list element");
    if (!d.is_int()) throw TypeError("m/3: non-integer list element " + format_term(d));
    return d.integer_value();
  };
  std::vector<Term> out;
  out.reserve(xs.size() + ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xs.size() && j < ys.size()) {
    if (value(ys[j]) < value(xs[i])) {
      out.push_back(deref(ys[j++]));
    } else {
      out.push_back(deref(xs[i++]));
    }
  }
  for (; i < xs.size(); ++i) out.push_back(deref(xs[i]));
  for (; j < ys.size(); ++j) out.push_back(deref(ys[j]));
  return Term::list(out);
}

}  // namespace rru
