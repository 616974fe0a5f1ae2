#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rru/errors.hpp"
#include "rru/oracle.hpp"
#include "rru/round_robin.hpp"
#include "rru/scheme.hpp"
#include "test_support.hpp"

using namespace rru;
using rru::testing::query;
using rru::testing::show;

namespace {

struct Gcd {
  Session s;
  Program p = rru::testing::shipped("gcd", s);
  SchemeRegistry registry = SchemeRegistry::with_builtin_schemes();

  Term goal(const Integer& m, const Integer& n) {
    return Term::compound(Symbol::intern("g"), {Term::integer(m), Term::integer(n), s.fresh_var()});
  }

  // Runs umr and returns (answer, rounds).
  std::pair<Integer, std::size_t> run(const Integer& m, const Integer& n) {
    const Term g = goal(m, n);
    RoundRobinState state = RoundRobinState::initial(p, registry, g);
    umr(g, state, s);
    const Term& x = deref(deref(g).arg(2));
    EXPECT_TRUE(x.is_int());
    return {x.integer_value(), rounds_used(state)};
  }
};

double log2_of(const Integer& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.to_mpz().get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

Integer random_u64(std::mt19937_64& rng) { return Integer::from_string(std::to_string(1 + rng() % UINT64_MAX)); }

}  // namespace

TEST(Umr, Gcd12And8) {
  Gcd g;
  const auto [x, rounds] = g.run(12, 8);
  EXPECT_EQ(x, Integer(4));
  EXPECT_EQ(rounds, 2u);
}

TEST(Umr, EqualInputsNeedOneRound) {
  Gcd g;
  const auto [x, rounds] = g.run(7, 7);
  EXPECT_EQ(x, Integer(7));
  EXPECT_EQ(rounds, 1u);
}

TEST(Umr, NoProgressOnOneAndZero) {
  Gcd g;
  const Term goal = g.goal(1, 0);
  RoundRobinState state = RoundRobinState::initial(g.p, g.registry, goal);
  EXPECT_THROW(umr(goal, state, g.s), NoProgress);
  EXPECT_LE(state.entries_processed, 6u);
}

// Zero arguments: either no guard holds or every applied rule subtracts 0.
TEST(Umr, NoProgressOnZeroArguments) {
  Gcd g;
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{0, 5}, {5, 0}, {0, 1}}) {
    const Term goal = g.goal(m, n);
    RoundRobinState state = RoundRobinState::initial(g.p, g.registry, goal);
    EXPECT_THROW(umr(goal, state, g.s), NoProgress) << m << "," << n;
  }
}

TEST(Umr, NoProgressWhenNoGuardHolds) {
  Session s;
  const Program p = rru::testing::shipped("sum", s);
  auto q = query(s, "s(0,R)");
  RoundRobinState state = RoundRobinState::initial(p, SchemeRegistry::with_builtin_schemes(), q.goal);
  EXPECT_THROW(umr(q.goal, state, s), NoProgress);
  EXPECT_EQ(state.rounds, 0u);
  EXPECT_TRUE(deref(q.var("R")).is_var());
}

TEST(Umr, MarkerRotatesWithGoal) {
  Gcd g;
  const Term goal = g.goal(12, 8);
  RoundRobinState state = RoundRobinState::initial(g.p, g.registry, goal);
  ASSERT_EQ(state.entries().size(), 3u);
  EXPECT_FALSE(state.entries().back().deck_id);
  umr(goal, state, g.s);
  std::size_t markers = 0;
  for (const auto& e : state.entries()) markers += !e.deck_id;
  EXPECT_EQ(markers, 1u);
}

TEST(Umr, DecksAreKeptAndExtended) {
  Gcd g;
  const Term goal = g.goal(Integer::pow2(20), 37);
  RoundRobinState state = RoundRobinState::initial(g.p, g.registry, goal);
  umr(goal, state, g.s);
  const auto decks = state.decks();
  ASSERT_EQ(decks.size(), 2u);
  EXPECT_GT(decks[1]->size(), 10u);
  // Every stored deck still ends in the base case.
  for (const RuleDeck* d : decks) EXPECT_TRUE(d->back().is_base());
}

TEST(Umr, MaxEntriesLimit) {
  Gcd g;
  const Term goal = g.goal(Integer::pow2(30) + Integer(1), 3);
  RoundRobinState state = RoundRobinState::initial(g.p, g.registry, goal);
  state.max_entries = 1;
  EXPECT_THROW(umr(goal, state, g.s), StepLimitExceeded);
}

TEST(Umr, UnknownSchemeIsConfigError) {
  Session s;
  Program p = rru::testing::shipped("gcd", s);
  p.schemes[1] = "nope";
  EXPECT_THROW(RoundRobinState::initial(p, SchemeRegistry::with_builtin_schemes(), s.fresh_var()), ConfigError);
}

TEST(Umr, PowerOfTwoAnd37WithinBound) {
  Gcd g;
  const auto [x, rounds] = g.run(Integer::pow2(20), 37);
  EXPECT_EQ(x, Integer(1));
  EXPECT_LE(rounds, 2u * 20 + 2);
}

TEST(Umr, SecondArgumentOneNeedsAtMostTwoRounds) {
  Gcd g;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 65536);
    const auto [x, rounds] = g.run(n, 1);
    EXPECT_EQ(x, Integer(1));
    EXPECT_LE(rounds, 2u) << n;
  }
}

TEST(Umr, RandomPairsAgreeAndStayLogarithmic) {
  Gcd g;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t a = 1 + rng() % UINT64_MAX;
    const std::uint64_t b = 1 + (rng() >> (rng() % 64));
    const Integer m = Integer::from_string(std::to_string(a));
    const Integer n = Integer::from_string(std::to_string(b));
    const auto [x, rounds] = g.run(m, n);
    const Integer expected[] = {m, n};
    EXPECT_EQ(x, closed_form("gcd", expected)) << a << "," << b;
    EXPECT_LE(static_cast<double>(rounds), 2 * log2_of(std::max(m, n)) + 2) << a << "," << b;
  }
}

// Two consecutive productive rounds at least halve the larger argument.
TEST(Umr, LargerValueHalvesEveryTwoRounds) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    Session s;
    const Program p = rru::testing::shipped("gcd", s);
    auto scheme = make_gcd_scheme();
    const Integer m = random_u64(rng);
    const Integer n = random_u64(rng);
    Term goal = Term::compound(Symbol::intern("g"), {Term::integer(m), Term::integer(n), s.fresh_var()});
    std::vector<Integer> maxima;
    std::size_t deck = 0;
    std::size_t idle = 0;
    while (!deref(goal).is_atom(sym::kTrue) && idle < 2) {
      const Term& g = deref(goal);
      maxima.push_back(std::max(deref(g.arg(0)).integer_value(), deref(g.arg(1)).integer_value()));
      const UnfoldResult u = unfold_repeat(goal, p.decks[deck], *scheme, s);
      const MipOutcome out = mip_cont(goal, u.deck, s);
      if (out.stats.applications() == 0) {
        ++idle;
        maxima.pop_back();
      } else {
        idle = 0;
      }
      goal = out.continuation;
      deck = 1 - deck;
    }
    ASSERT_TRUE(deref(goal).is_atom(sym::kTrue));
    for (std::size_t k = 2; k < maxima.size(); ++k) {
      EXPECT_LE(maxima[k] * Integer(2), maxima[k - 2]) << "pair " << i << " step " << k;
    }
  }
}
