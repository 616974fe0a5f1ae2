#include <gtest/gtest.h>

#include "rru/errors.hpp"
#include "rru/meta_interp.hpp"
#include "rru/scheme.hpp"
#include "rru/unfolder.hpp"
#include "test_support.hpp"

using namespace rru;
using rru::testing::query;
using rru::testing::show;
using rru::testing::term;

namespace {

RuleDeck unfolded(std::string_view program, const Term& goal, Session& s, std::size_t deck = 0) {
  const Program p = rru::testing::shipped(program, s);
  auto registry = SchemeRegistry::with_builtin_schemes();
  return unfold_repeat(goal, p.decks[deck], *registry.find(p.schemes[deck]), s).deck;
}

}  // namespace

TEST(Mip, Sum10) {
  Session s;
  auto q = query(s, "s(10,R)");
  const RuleDeck deck = unfolded("sum", q.goal, s);
  ASSERT_EQ(deck.size(), 5u);
  MipStats stats;
  MipTrace trace;
  ASSERT_TRUE(mip(q.goal, deck, s, &stats, &trace));
  EXPECT_EQ(show(q.var("R")), "55");
  // A>8 on 10, then A>1 on 2, then the base case on 1.
  ASSERT_EQ(trace.size(), 3u);
  EXPECT_EQ(trace[0].deck_index, 0u);
  EXPECT_EQ(trace[1].deck_index, 3u);
  EXPECT_EQ(trace[2].deck_index, 4u);
  EXPECT_EQ(stats.recursive_applications, 2u);
  EXPECT_EQ(stats.base_applications, 1u);
}

TEST(Mip, FibOfTwoIsOne) {
  Session s;
  auto q = query(s, "f(2,F)");
  const RuleDeck deck = unfolded("fib", q.goal, s);
  ASSERT_TRUE(mip(q.goal, deck, s));
  EXPECT_EQ(show(q.var("F")), "1");
}

TEST(Mip, TrueWithAnyDeck) {
  Session s;
  EXPECT_TRUE(mip(term(s, "true"), {}, s));
  const RuleDeck deck = unfolded("sum", term(s, "s(5,R)"), s);
  EXPECT_TRUE(mip(term(s, "true"), deck, s));
  EXPECT_EQ(s.bindings().trail_size(), 0u);
}

TEST(Mip, FailsWhenNoRuleApplies) {
  Session s;
  const RuleDeck deck = unfolded("sum", term(s, "s(5,R)"), s);
  EXPECT_FALSE(mip(term(s, "s(0,R)"), deck, s));
  EXPECT_FALSE(mip(term(s, "t(1)"), deck, s));
}

TEST(Mip, BuiltinGoalsRunDirectly) {
  Session s;
  auto q = query(s, "(X is 3*4, s(X,R))");
  const RuleDeck deck = unfolded("sum", term(s, "s(12,R)"), s);
  ASSERT_TRUE(mip(q.goal, deck, s));
  EXPECT_EQ(show(q.var("R")), "78");
}

// Each deck element is applied at most once on every root-to-leaf path.
TEST(Mip, AtMostOncePerPath) {
  for (const char* text : {"f(20,F)", "f(37,F)", "s(1000,R)", "f(64,F)"}) {
    Session s;
    auto q = query(s, text);
    const RuleDeck deck = unfolded(text[0] == 'f' ? "fib" : "sum", q.goal, s);
    MipTrace trace;
    ASSERT_TRUE(mip(q.goal, deck, s, nullptr, &trace));
    for (std::size_t i = 0; i < trace.size(); ++i) {
      std::vector<bool> seen(deck.size(), false);
      for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i); j >= 0; j = trace[static_cast<std::size_t>(j)].parent) {
        const std::size_t d = trace[static_cast<std::size_t>(j)].deck_index;
        ASSERT_FALSE(seen[d]) << text << " entry " << i;
        seen[d] = true;
      }
    }
  }
}

TEST(Mip, OneRecursiveApplicationForPowerOfTwoPlusOne) {
  for (unsigned i = 4; i <= 64; ++i) {
    Session s;
    const Term goal = Term::compound(Symbol::intern("s"),
                                     {Term::integer(Integer::pow2(i) + Integer(1)), s.fresh_var()});
    const RuleDeck deck = unfolded("sum", goal, s);
    MipStats stats;
    ASSERT_TRUE(mip(goal, deck, s, &stats));
    EXPECT_EQ(stats.recursive_applications, 1u) << i;
  }
}

TEST(MipCont, ContinuationWhenDeckRunsOut) {
  Session s;
  auto q = query(s, "g(12,8,X)");
  const Program p = rru::testing::shipped("gcd", s);
  const RuleDeck& subtract_larger = p.decks[1];
  const RuleDeck recursive_only(subtract_larger.begin(), subtract_larger.end() - 1);
  const MipOutcome out = mip_cont(q.goal, recursive_only, s);
  EXPECT_EQ(show(out.continuation), "g(4,8,A)");
  EXPECT_EQ(out.stats.recursive_applications, 1u);
}

TEST(MipCont, EmptyDeckReturnsGoal) {
  Session s;
  EXPECT_EQ(show(mip_cont(term(s, "true"), {}, s).continuation), "true");
  auto q = query(s, "s(3,R)");
  const MipOutcome out = mip_cont(q.goal, {}, s);
  EXPECT_TRUE(out.continuation.same_node(q.goal) || show(out.continuation) == "s(3,A)");
  EXPECT_TRUE(deref(q.var("R")).is_var());
}

TEST(MipCont, ConjunctionOfContinuations) {
  Session s;
  const Program p = rru::testing::shipped("gcd", s);
  const RuleDeck recursive_only(p.decks[1].begin(), p.decks[1].end() - 1);
  const MipOutcome out = mip_cont(term(s, "(g(12,8,X), g(3,5,Y))"), recursive_only, s);
  EXPECT_EQ(show(out.continuation), "g(4,8,A), g(3,5,B)");
}

TEST(MipCont, CommittedBodyFailureThrows) {
  Session s;
  const GuardedRule bad = parse_rule("p(X) :- X>0 ,!, X=2, true, true.", s);
  const RuleDeck deck{bad};
  EXPECT_THROW(mip_cont(term(s, "p(1)"), deck, s), CommittedBodyFailure);
  EXPECT_FALSE(mip(term(s, "p(1)"), deck, s));
  EXPECT_THROW(mip_cont(term(s, "1 > 2"), deck, s), CommittedBodyFailure);
}

TEST(MipCont, AgreesWithMipWhenComplete) {
  for (int n = 1; n <= 40; ++n) {
    Session s1;
    Session s2;
    auto q1 = query(s1, "f(" + std::to_string(n) + ",F)");
    auto q2 = query(s2, "f(" + std::to_string(n) + ",F)");
    const RuleDeck d1 = unfolded("fib", q1.goal, s1);
    const RuleDeck d2 = unfolded("fib", q2.goal, s2);
    ASSERT_TRUE(mip(q1.goal, d1, s1));
    const MipOutcome out = mip_cont(q2.goal, d2, s2);
    ASSERT_EQ(show(out.continuation), "true");
    EXPECT_EQ(show(q1.goal), show(q2.goal));
  }
}
