#include "rru/rule.hpp"

#include <sstream>

#include "rru/builtins.hpp"
#include "rru/errors.hpp"
#include "rru/printer.hpp"

namespace rru {

namespace {

void flatten_into(const Term& goal, std::vector<Term>& out) {
  std::vector<const Term*> stack{&goal};
  while (!stack.empty()) {
    const Term& g = deref(*stack.back());
    stack.pop_back();
    if (g.is_compound(sym::kComma, 2)) {
      stack.push_back(&g.arg(1));
      stack.push_back(&g.arg(0));
    } else {
      out.push_back(g);
    }
  }
}

bool all_builtin(const Term& goal) {
  std::vector<Term> goals;
  flatten_into(goal, goals);
  for (const Term& g : goals) {
    if (!is_builtin(g)) return false;
  }
  return true;
}

bool all_user_or_true(const Term& goal) {
  std::vector<Term> goals;
  flatten_into(goal, goals);
  if (goals.size() == 1 && goals[0].is_atom(sym::kTrue)) return true;
  for (const Term& g : goals) {
    if (g.is_var() || g.is_int() || is_builtin(g)) return false;
  }
  return true;
}

Term conj_of(const std::vector<Term>& goals, std::size_t from, std::size_t to) {
  std::vector<Term> part(goals.begin() + static_cast<std::ptrdiff_t>(from),
                         goals.begin() + static_cast<std::ptrdiff_t>(to));
  return Term::conjunction(part);
}

}  // namespace

bool GuardedRule::is_base() const { return deref(rec_goals).is_atom(sym::kTrue); }

Symbol GuardedRule::predicate() const { return deref(head).functor(); }

std::size_t GuardedRule::arity() const { return deref(head).arity(); }

GuardedRule GuardedRule::renamed(Session& session) const {
  Renamer r(session);
  return {r(head), r(guard), r(before), r(rec_goals), r(after)};
}

Term GuardedRule::as_term() const {
  static const Symbol kRule = Symbol::intern("rule");
  return Term::compound(kRule, {head, guard, before, rec_goals, after});
}

std::vector<GuardedRule> Program::original_clauses() const {
  std::vector<GuardedRule> recursive;
  std::vector<GuardedRule> bases;
  for (const RuleDeck& deck : decks) {
    for (const GuardedRule& r : deck) {
      if (!r.is_base()) {
        recursive.push_back(r);
        continue;
      }
      bool dup = false;
      for (const GuardedRule& b : bases) dup = dup || is_variant(b, r);
      if (!dup) bases.push_back(r);
    }
  }
  recursive.insert(recursive.end(), bases.begin(), bases.end());
  return recursive;
}

void check_rule(const GuardedRule& rule) {
  const Term& h = deref(rule.head);
  if (h.is_var() || h.is_int() || is_builtin(h)) {
    throw EngineError("clause head must be a user predicate: " + format_term(h));
  }
  if (!all_builtin(rule.guard)) throw EngineError("guard may only contain builtins");
  if (!all_builtin(rule.before)) throw EngineError("goals before the recursive call must be builtins");
  if (!all_builtin(rule.after)) throw EngineError("goals after the recursive call must be builtins");
  if (!all_user_or_true(rule.rec_goals)) {
    throw EngineError("recursive part must hold user-predicate calls or true");
  }
}

GuardedRule normalize_clause(const Term& head, const Term& guard, std::span<const Term> body_items) {
  const Term guard_flat = flatten_conjunction(guard);
  if (body_items.size() == 3) {
    GuardedRule r{head, guard_flat, flatten_conjunction(body_items[0]), flatten_conjunction(body_items[1]),
                  flatten_conjunction(body_items[2])};
    try {
      check_rule(r);
      return r;
    } catch (const EngineError&) {
      // not in positional form; classify below
    }
  }
  std::vector<Term> goals;
  for (const Term& item : body_items) flatten_into(item, goals);
  std::erase_if(goals, [](const Term& g) { return g.is_atom(sym::kTrue); });
  std::size_t i = 0;
  while (i < goals.size() && is_builtin(goals[i])) ++i;
  std::size_t j = i;
  while (j < goals.size() && !is_builtin(goals[j])) ++j;
  for (std::size_t k = j; k < goals.size(); ++k) {
    if (!is_builtin(goals[k])) {
      throw EngineError("body interleaves builtins and recursive calls: " + format_term(goals[k]));
    }
  }
  GuardedRule r{head, guard_flat, flatten_conjunction(conj_of(goals, 0, i)), conj_of(goals, i, j),
                flatten_conjunction(conj_of(goals, j, goals.size()))};
  check_rule(r);
  return r;
}

bool is_variant(const GuardedRule& a, const GuardedRule& b) { return is_variant(a.as_term(), b.as_term()); }

std::string format_rule(const GuardedRule& rule) {
  std::ostringstream os;
  VarNaming names;
  write_term(os, rule.head, names, 999);
  os << " :- ";
  write_term(os, rule.guard, names, 999);
  os << " ,!, ";
  write_term(os, rule.before, names, 999);
  os << ", ";
  write_term(os, rule.rec_goals, names, 999);
  os << ", ";
  write_term(os, rule.after, names, 999);
  os << '.';
  return os.str();
}

std::string format_deck(const RuleDeck& deck) {
  std::string out;
  for (const GuardedRule& r : deck) {
    out += format_rule(r);
    out += '\n';
  }
  return out;
}

std::string format_program(const Program& program) {
  std::ostringstream os;
  os << ":- program " << program.name << ".\n";
  os << ":- entry " << program.entry.name() << '/' << program.entry_arity << ".\n";
  for (std::size_t i = 0; i < program.decks.size(); ++i) {
    os << ":- deck.\n";
    if (i < program.schemes.size() && !program.schemes[i].empty()) {
      os << ":- scheme " << program.schemes[i] << ".\n";
    }
    os << format_deck(program.decks[i]);
  }
  return os.str();
}

}  // namespace rru
