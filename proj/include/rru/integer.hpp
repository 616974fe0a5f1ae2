#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace rru {

// Arbitrary-precision signed integer. Values that fit in 64 bits are kept
// inline; everything else lives in a GMP integer. The representation is
// canonical: a big value is never one that would fit in int64_t.
class Integer {
 public:
  Integer() = default;
  Integer(std::int64_t v) : rep_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : rep_(static_cast<std::int64_t>(v)) {}  // NOLINT
  explicit Integer(const mpz_class& v);
  explicit Integer(mpz_class&& v);

  // Parses an optionally signed decimal literal. Throws std::invalid_argument.
  static Integer from_string(std::string_view text);
  // 2^k, built by repeated squaring.
  static Integer pow2(std::uint64_t k);

  bool is_small() const { return std::holds_alternative<std::int64_t>(rep_); }
  std::int64_t small() const { return std::get<std::int64_t>(rep_); }
  mpz_class to_mpz() const;

  int sign() const;
  // Number of bits in |value|; 0 for zero.
  std::size_t bit_length() const;
  std::string to_string() const;

  friend Integer operator+(const Integer& a, const Integer& b);
  friend Integer operator-(const Integer& a, const Integer& b);
  friend Integer operator*(const Integer& a, const Integer& b);
  Integer operator-() const;

  friend int compare(const Integer& a, const Integer& b);
  friend bool operator==(const Integer& a, const Integer& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Integer& a, const Integer& b) { return compare(a, b) != 0; }
  friend bool operator<(const Integer& a, const Integer& b) { return compare(a, b) < 0; }
  friend bool operator>(const Integer& a, const Integer& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Integer& a, const Integer& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Integer& a, const Integer& b) { return compare(a, b) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

 private:
  void normalize();
  // Views the value as a GMP integer without copying big values.
  const mpz_class& view(mpz_class& scratch) const;

  std::variant<std::int64_t, mpz_class> rep_{std::int64_t{0}};
};

}  // namespace rru
