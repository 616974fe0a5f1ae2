#include <gtest/gtest.h>

#include "rru/errors.hpp"
#include "rru/scheme.hpp"
#include "rru/unfolder.hpp"
#include "test_support.hpp"

using namespace rru;
using rru::testing::term;

namespace {

struct SumFixture : ::testing::Test {
  Session s;
  Program p = rru::testing::shipped("sum", s);
  std::unique_ptr<TemplateScheme> scheme = make_sum_scheme();

  UnfoldResult unfold(const std::string& n) {
    return unfold_repeat(term(s, "s(" + n + ",S)"), p.decks[0], *scheme, s);
  }
};

}  // namespace

TEST_F(SumFixture, GuardApplicable) {
  const GuardedRule r64 = parse_rule("s(A,C) :- A>64 ,!, B is A-64, s(B,D), C is 64*A-2016+D.", s);
  const GuardedRule r128 = parse_rule("s(A,C) :- A>128 ,!, B is A-128, s(B,D), C is 128*A-8128+D.", s);
  auto q = rru::testing::query(s, "s(100,S)");
  EXPECT_TRUE(guard_applicable(q.goal, r64, s));
  EXPECT_FALSE(guard_applicable(q.goal, r128, s));
  EXPECT_FALSE(guard_applicable(term(s, "s(1,S)"), p.decks[0][0], s));
  EXPECT_TRUE(deref(q.var("S")).is_var());
  EXPECT_EQ(s.bindings().trail_size(), 0u);
}

TEST_F(SumFixture, Deck100) {
  const UnfoldResult r = unfold("100");
  ASSERT_EQ(r.deck.size(), 8u);
  const std::pair<int, int> expected[] = {{64, 2016}, {32, 496}, {16, 120}, {8, 28}, {4, 6}, {2, 1}, {1, 0}};
  for (std::size_t i = 0; i < 7; ++i) {
    const auto params = sum_params(r.deck[i]);
    ASSERT_TRUE(params);
    EXPECT_EQ(params->v, Integer(expected[i].first));
    EXPECT_EQ(params->w, Integer(expected[i].second));
  }
  EXPECT_TRUE(r.deck[7].is_base());
  ASSERT_TRUE(r.discarded);
  EXPECT_EQ(sum_params(*r.discarded)->v, Integer(128));
  EXPECT_FALSE(r.stats.capped);
}

TEST_F(SumFixture, Deck10) {
  const UnfoldResult r = unfold("10");
  ASSERT_EQ(r.deck.size(), 5u);
  const char* guards[] = {"A>8", "A>4", "A>2", "A>1"};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(format_term(r.deck[i].guard), guards[i]);
  EXPECT_EQ(sum_params(*r.discarded)->v, Integer(16));
}

TEST_F(SumFixture, BaseOnlyForOne) {
  const UnfoldResult r = unfold("1");
  ASSERT_EQ(r.deck.size(), 1u);
  EXPECT_TRUE(r.deck[0].is_base());
  EXPECT_EQ(r.stats.steps, 0u);
}

TEST_F(SumFixture, TwoGivesOriginalAndBase) {
  const UnfoldResult r = unfold("2");
  ASSERT_EQ(r.deck.size(), 2u);
  EXPECT_TRUE(is_variant(r.deck[0], p.decks[0][0]));
  EXPECT_TRUE(r.deck[1].is_base());
}

// Recursive rules kept for s(n,_): rule i (guard A > 2^i) is kept while
// n > 2^i, which a plain loop over the guards decides.
TEST_F(SumFixture, DeckLengthByGuardSimulation) {
  for (std::uint64_t n = 2; n <= 4096; ++n) {
    std::size_t kept = 0;
    for (std::uint64_t v = 1; n > v; v *= 2) ++kept;
    const UnfoldResult r = unfold(std::to_string(n));
    ASSERT_EQ(r.deck.size(), kept + 1) << n;
    // Closed form of the same count.
    std::size_t log = 0;
    while ((std::uint64_t{2} << log) <= n - 1) ++log;
    ASSERT_EQ(kept, log + 1) << n;
  }
}

TEST_F(SumFixture, GuardsMonotoneAndAllApplicable) {
  const Term goal = term(s, "s(5000,S)");
  const UnfoldResult r = unfold_repeat(goal, p.decks[0], *scheme, s);
  for (const GuardedRule& rule : r.deck) {
    if (!rule.is_base()) EXPECT_TRUE(guard_applicable(goal, rule, s)) << format_rule(rule);
  }
}

TEST_F(SumFixture, Deterministic) {
  const std::string a = format_deck(unfold("777").deck);
  const std::string b = format_deck(unfold("777").deck);
  EXPECT_EQ(a, b);
}

TEST_F(SumFixture, InputDeckUntouched) {
  const std::string before = format_deck(p.decks[0]);
  (void)unfold("1000");
  EXPECT_EQ(format_deck(p.decks[0]), before);
}

TEST_F(SumFixture, ExplicitCapStopsEarly) {
  const UnfoldResult r = unfold_repeat(term(s, "s(100000,S)"), p.decks[0], *scheme, s, 3);
  EXPECT_TRUE(r.stats.capped);
  EXPECT_EQ(r.stats.steps, 3u);
  EXPECT_EQ(r.deck.size(), 5u);
}

TEST(Unfolder, DefaultCapGrowsWithInput) {
  Session s;
  const std::size_t small = default_unfold_cap(term(s, "s(3,S)"));
  const std::size_t big = default_unfold_cap(Term::compound(Symbol::intern("s"),
                                                            {Term::integer(Integer::pow2(5000)), s.fresh_var()}));
  EXPECT_GE(big, small + 4999);
}

// With N = 0 the guard M > A*N holds for every A, so only the cap ends
// unfolding.
TEST(Unfolder, GcdWithZeroIsCapped) {
  Session s;
  const Program p = rru::testing::shipped("gcd", s);
  auto scheme = make_gcd_scheme();
  const UnfoldResult r = unfold_repeat(term(s, "g(1,0,X)"), p.decks[1], *scheme, s);
  EXPECT_TRUE(r.stats.capped);
  EXPECT_FALSE(r.discarded);
}

TEST(Unfolder, SchemeErrorBecomesSchemeFailure) {
  Session s;
  const Program p = rru::testing::shipped("sum", s);
  auto wrong = make_fib_scheme();
  EXPECT_THROW(unfold_repeat(term(s, "s(10,S)"), p.decks[0], *wrong, s), SchemeFailure);
}

TEST(Unfolder, FibDeck20) {
  Session s;
  const Program p = rru::testing::shipped("fib", s);
  auto scheme = make_fib_scheme();
  const UnfoldResult r = unfold_repeat(term(s, "f(20,F)"), p.decks[0], *scheme, s);
  ASSERT_EQ(r.deck.size(), 6u);
  const int expected[][3] = {{16, 1597, 987}, {8, 34, 21}, {4, 5, 3}, {2, 2, 1}, {1, 1, 1}};
  for (std::size_t i = 0; i < 5; ++i) {
    const auto fp = fib_params(r.deck[i]);
    ASSERT_TRUE(fp);
    EXPECT_EQ(fp->a, Integer(expected[i][0]));
    EXPECT_EQ(fp->p, Integer(expected[i][1]));
    EXPECT_EQ(fp->q, Integer(expected[i][2]));
  }
}
