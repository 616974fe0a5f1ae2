#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "rru/integer.hpp"

using rru::Integer;

namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

mpz_class z(std::int64_t v) { return mpz_class(std::to_string(v)); }

}  // namespace

TEST(Integer, SmallArithmetic) {
  EXPECT_EQ(Integer(2) + Integer(3), Integer(5));
  EXPECT_EQ(Integer(2) - Integer(3), Integer(-1));
  EXPECT_EQ(Integer(-4) * Integer(6), Integer(-24));
  EXPECT_EQ(-Integer(7), Integer(-7));
  EXPECT_TRUE(Integer(5).is_small());
}

TEST(Integer, OverflowPromotesAndDemotes) {
  const Integer big = Integer(kMax) + Integer(1);
  EXPECT_FALSE(big.is_small());
  EXPECT_EQ(big.to_string(), "9223372036854775808");
  const Integer back = big - Integer(1);
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, Integer(kMax));

  EXPECT_EQ((Integer(kMin) - Integer(1)).to_string(), "-9223372036854775809");
  EXPECT_EQ((-Integer(kMin)).to_string(), "9223372036854775808");
  EXPECT_EQ((Integer(kMin) * Integer(-1)).to_string(), "9223372036854775808");
  EXPECT_EQ((Integer(kMax) * Integer(kMax)).to_mpz(), z(kMax) * z(kMax));
}

TEST(Integer, ParseAndPrint) {
  EXPECT_EQ(Integer::from_string("-42"), Integer(-42));
  EXPECT_EQ(Integer::from_string("+7"), Integer(7));
  const std::string digits = "123456789012345678901234567890";
  EXPECT_EQ(Integer::from_string(digits).to_string(), digits);
  EXPECT_EQ(Integer::from_string("-" + digits).to_string(), "-" + digits);
  EXPECT_THROW(Integer::from_string(""), std::invalid_argument);
  EXPECT_THROW(Integer::from_string("-"), std::invalid_argument);
  EXPECT_THROW(Integer::from_string("12a"), std::invalid_argument);
}

TEST(Integer, Pow2BitLength) {
  EXPECT_EQ(Integer::pow2(0), Integer(1));
  EXPECT_EQ(Integer::pow2(10), Integer(1024));
  EXPECT_EQ(Integer::pow2(1600).bit_length(), 1601u);
  EXPECT_EQ(Integer::pow2(62).bit_length(), 63u);
  EXPECT_EQ(Integer(0).bit_length(), 0u);
  EXPECT_EQ(Integer(-8).bit_length(), 4u);
  mpz_class expected = 1;
  expected <<= 5000;
  EXPECT_EQ(Integer::pow2(5000).to_mpz(), expected);
}

TEST(Integer, CompareMixedRepresentations) {
  const Integer big = Integer::pow2(80);
  EXPECT_LT(Integer(kMax), big);
  EXPECT_GT(Integer(kMin), -big);
  EXPECT_EQ(big.sign(), 1);
  EXPECT_EQ((-big).sign(), -1);
  EXPECT_EQ(Integer(0).sign(), 0);
}

// The int64 fast path must agree with GMP near the overflow boundaries.
TEST(Integer, RandomAgainstGmp) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 3);
  auto draw = [&]() -> std::int64_t {
    switch (pick(rng)) {
      case 0:
        return static_cast<std::int64_t>(rng());
      case 1:
        return kMax - static_cast<std::int64_t>(rng() % 1000);
      case 2:
        return kMin + static_cast<std::int64_t>(rng() % 1000);
      default:
        return static_cast<std::int64_t>(rng() % 2001) - 1000;
    }
  };
  for (int i = 0; i < 5000; ++i) {
    const std::int64_t a = draw();
    const std::int64_t b = draw();
    EXPECT_EQ((Integer(a) + Integer(b)).to_mpz(), z(a) + z(b));
    EXPECT_EQ((Integer(a) - Integer(b)).to_mpz(), z(a) - z(b));
    EXPECT_EQ((Integer(a) * Integer(b)).to_mpz(), z(a) * z(b));
    EXPECT_EQ(Integer(a) < Integer(b), a < b);
  }
}
