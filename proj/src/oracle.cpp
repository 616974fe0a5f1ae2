#include "rru/oracle.hpp"

#include <map>
#include <utility>

#include "rru/builtins.hpp"

namespace rru {

OracleConfig OracleConfig::for_program(const Program& program, std::size_t step_limit) {
  return OracleConfig{program.original_clauses(), step_limit};
}

bool solve_naive(const Term& goal, const OracleConfig& config, Session& session, OracleStats* stats) {
  std::map<std::pair<std::uint32_t, std::size_t>, std::vector<const GuardedRule*>> index;
  for (const GuardedRule& c : config.clauses) index[{c.predicate().index(), c.arity()}].push_back(&c);

  OracleStats local;
  OracleStats& st = stats ? *stats : local;
  Bindings& b = session.bindings();
  std::vector<Term> pending{goal};
  while (!pending.empty()) {
    Term g = deref(pending.back());
    pending.pop_back();
    if (g.is_compound(sym::kComma, 2)) {
      pending.push_back(g.arg(1));
      pending.push_back(g.arg(0));
      continue;
    }
    if (g.is_atom(sym::kTrue)) continue;
    if (is_builtin(g)) {
      ++st.builtin_calls;
      if (!eval_builtin(g, b)) return false;
      continue;
    }
    if (++st.calls > config.step_limit) {
      throw StepLimitExceeded("naive run exceeded " + std::to_string(config.step_limit) + " calls");
    }
    if (g.is_var() || g.is_int()) return false;
    auto it = index.find({g.functor().index(), g.arity()});
    if (it == index.end()) return false;
    bool committed = false;
    for (const GuardedRule* c : it->second) {
      Renamer rename(session);
      const Term head = rename(c->head);
      const Term guard = rename(c->guard);
      Bindings::Checkpoint cp(b);
      if (!unify(head, g, b) || !eval_builtin(guard, b)) {
        cp.rollback();
        continue;
      }
      cp.commit();
      pending.push_back(rename(c->after));
      pending.push_back(rename(c->rec_goals));
      pending.push_back(rename(c->before));
      committed = true;
      break;
    }
    if (!committed) return false;
  }
  return true;
}

namespace {

// (F(k), F(k+1))
std::pair<mpz_class, mpz_class> fib_pair(const mpz_class& k) {
  if (k == 0) return {0, 1};
  const mpz_class half = k / 2;
  auto [a, b] = fib_pair(half);
  const mpz_class c = a * (2 * b - a);
  const mpz_class d = a * a + b * b;
  if (k % 2 == 0) return {c, d};
  return {d, c + d};
}

void arity_check(std::string_view name, std::span<const Integer> in, std::size_t n) {
  if (in.size() != n) {
    throw UnsupportedPredicate(std::string(name) + " takes " + std::to_string(n) + " integer input(s)");
  }
}

}  // namespace

Integer closed_form(std::string_view predicate, std::span<const Integer> inputs) {
  if (predicate == "sum") {
    arity_check(predicate, inputs, 1);
    const mpz_class n = inputs[0].to_mpz();
    return Integer(mpz_class(n * (n + 1) / 2));
  }
  if (predicate == "fib") {
    arity_check(predicate, inputs, 1);
    const mpz_class n = inputs[0].to_mpz();
    if (n < 0) throw UnsupportedPredicate("fib of a negative number");
    return Integer(fib_pair(n).first);
  }
  if (predicate == "gcd") {
    arity_check(predicate, inputs, 2);
    mpz_class a = abs(inputs[0].to_mpz());
    mpz_class b = abs(inputs[1].to_mpz());
    while (b != 0) {
      mpz_class r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return Integer(a);
  }
  throw UnsupportedPredicate("no closed form for '" + std::string(predicate) + "'");
}

}  // namespace rru
