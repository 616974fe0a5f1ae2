#include "rru/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace rru {

namespace {

mpz_class widen(std::int64_t v) {
  mpz_class z;
  // mpz_set_si takes a long; on LP64 that is 64 bits.
  static_assert(sizeof(long) == sizeof(std::int64_t));
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return z;
}

}  // namespace

Integer::Integer(const mpz_class& v) : rep_(v) { normalize(); }
Integer::Integer(mpz_class&& v) : rep_(std::move(v)) { normalize(); }

void Integer::normalize() {
  if (auto* z = std::get_if<mpz_class>(&rep_)) {
    if (mpz_fits_slong_p(z->get_mpz_t())) {
      rep_ = static_cast<std::int64_t>(mpz_get_si(z->get_mpz_t()));
    }
  }
}

Integer Integer::from_string(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  mpz_class z;
  z.set_str(s, 10);
  return Integer(std::move(z));
}

Integer Integer::pow2(std::uint64_t k) {
  Integer result(1);
  Integer base(2);
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

const mpz_class& Integer::view(mpz_class& scratch) const {
  if (is_small()) {
    mpz_set_si(scratch.get_mpz_t(), static_cast<long>(small()));
    return scratch;
  }
  return std::get<mpz_class>(rep_);
}

mpz_class Integer::to_mpz() const {
  if (is_small()) return widen(small());
  return std::get<mpz_class>(rep_);
}

int Integer::sign() const {
  if (is_small()) return (small() > 0) - (small() < 0);
  return sgn(std::get<mpz_class>(rep_));
}

std::size_t Integer::bit_length() const {
  if (sign() == 0) return 0;
  if (is_small()) {
    std::uint64_t m = small() < 0 ? 0 - static_cast<std::uint64_t>(small())
                                  : static_cast<std::uint64_t>(small());
    return 64 - static_cast<std::size_t>(__builtin_clzll(m));
  }
  return mpz_sizeinbase(std::get<mpz_class>(rep_).get_mpz_t(), 2);
}

std::string Integer::to_string() const {
  if (is_small()) return std::to_string(small());
  return std::get<mpz_class>(rep_).get_str(10);
}

Integer operator+(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    std::int64_t r;
    if (!__builtin_add_overflow(a.small(), b.small(), &r)) return Integer(r);
  }
  mpz_class sa, sb;
  return Integer(mpz_class(a.view(sa) + b.view(sb)));
}

Integer operator-(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    std::int64_t r;
    if (!__builtin_sub_overflow(a.small(), b.small(), &r)) return Integer(r);
  }
  mpz_class sa, sb;
  return Integer(mpz_class(a.view(sa) - b.view(sb)));
}

Integer operator*(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    std::int64_t r;
    if (!__builtin_mul_overflow(a.small(), b.small(), &r)) return Integer(r);
  }
  mpz_class sa, sb;
  return Integer(mpz_class(a.view(sa) * b.view(sb)));
}

Integer Integer::operator-() const { return Integer(0) - *this; }

int compare(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return (a.small() > b.small()) - (a.small() < b.small());
  // Canonical form: a big value always lies outside the int64 range.
  if (a.is_small()) return -b.sign();
  if (b.is_small()) return a.sign();
  int c = cmp(std::get<mpz_class>(a.rep_), std::get<mpz_class>(b.rep_));
  return (c > 0) - (c < 0);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

}  // namespace rru
