#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rru/errors.hpp"
#include "rru/oracle.hpp"
#include "test_support.hpp"

using namespace rru;
using rru::testing::query;
using rru::testing::show;

namespace {

std::string naive(std::string_view program, const std::string& goal) {
  Session s;
  const Program p = rru::testing::shipped(program, s);
  auto q = query(s, goal);
  if (!solve_naive(q.goal, OracleConfig::for_program(p), s)) return "false";
  return show(q.var("R"));
}

Integer cf(std::string_view name, std::initializer_list<Integer> in) {
  return closed_form(name, std::vector<Integer>(in));
}

}  // namespace

TEST(SolveNaive, Examples) {
  EXPECT_EQ(naive("sum", "s(10,R)"), "55");
  EXPECT_EQ(naive("fib", "f(10,R)"), "55");
  EXPECT_EQ(naive("fib", "f(0,R)"), "0");
  EXPECT_EQ(naive("rev", "r([1,2,3],R)"), "[3,2,1]");
  EXPECT_EQ(naive("sort", "s([3,1,2],R)"), "[1,2,3]");
  EXPECT_EQ(naive("gcd", "g(12,8,R)"), "4");
  EXPECT_EQ(naive("sum", "s(0,R)"), "false");
  EXPECT_EQ(naive("sum", "t(0,R)"), "false");
}

TEST(SolveNaive, StepLimit) {
  Session s;
  const Program p = rru::testing::shipped("sum", s);
  EXPECT_THROW(solve_naive(query(s, "s(100,R)").goal, OracleConfig::for_program(p, 10), s), StepLimitExceeded);
}

TEST(SolveNaive, DeepRecursionDoesNotUseNativeStack) {
  EXPECT_EQ(naive("sum", "s(300000,R)"), "45000150000");
}

TEST(ClosedForm, Examples) {
  EXPECT_EQ(cf("sum", {10}), Integer(55));
  EXPECT_EQ(cf("gcd", {12, 8}), Integer(4));
  EXPECT_EQ(cf("fib", {16}), Integer(987));
  EXPECT_EQ(cf("fib", {0}), Integer(0));
  EXPECT_EQ(cf("sum", {Integer::pow2(100)}).to_mpz(), (mpz_class(1) << 199) + (mpz_class(1) << 99));
  EXPECT_THROW(cf("rev", {1}), UnsupportedPredicate);
  EXPECT_THROW(cf("gcd", {1}), UnsupportedPredicate);
}

TEST(OracleAgreement, SumAndFibAgainstClosedForm) {
  for (int n = 1; n <= 512; ++n) {
    EXPECT_EQ(naive("sum", "s(" + std::to_string(n) + ",R)"), cf("sum", {n}).to_string()) << n;
  }
  for (int n = 0; n <= 24; ++n) {
    EXPECT_EQ(naive("fib", "f(" + std::to_string(n) + ",R)"), rru::testing::fib(n).get_str()) << n;
  }
}

TEST(OracleAgreement, GcdRandomPairs) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 200);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 200);
    const std::string expected = std::to_string(rru::testing::euclid(m, n));
    EXPECT_EQ(naive("gcd", "g(" + std::to_string(m) + "," + std::to_string(n) + ",R)"), expected);
    EXPECT_EQ(cf("gcd", {m, n}).to_string(), expected);
  }
}

TEST(OracleAgreement, ListsAgainstStandardLibrary) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    const auto xs = rru::testing::random_list(rng, 64, -50, 50);
    auto reversed = xs;
    std::reverse(reversed.begin(), reversed.end());
    auto sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    const std::string in = rru::testing::list_text(xs);
    EXPECT_EQ(naive("rev", "r(" + in + ",R)"), rru::testing::list_text(reversed));
    EXPECT_EQ(naive("sort", "s(" + in + ",R)"), rru::testing::list_text(sorted));
  }
}
