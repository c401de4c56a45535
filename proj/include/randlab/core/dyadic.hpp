#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace randlab {

using BigInt = boost::multiprecision::cpp_int;

/// An exact dyadic rational numerator / 2^exponent.
///
/// Always kept canonical: the numerator is odd, or the value is zero and the
/// exponent is 0. Canonical form makes equality structural.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt numerator, std::uint64_t exponent);
  explicit Dyadic(long long integer) : Dyadic(BigInt(integer), 0) {}

  /// 2^{-k}.
  static Dyadic inverse_pow2(std::uint64_t k) { return Dyadic(BigInt(1), k); }
  static Dyadic one() { return Dyadic(BigInt(1), 0); }
  static Dyadic zero() { return {}; }

  const BigInt& numerator() const noexcept { return num_; }
  std::uint64_t exponent() const noexcept { return exp_; }
  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return num_.sign(); }

  /// value * 2^shift (shift may be negative).
  Dyadic scaled(std::int64_t shift) const;

  /// Numerator over a common denominator 2^exponent (exponent >= this->exponent()).
  BigInt numerator_at(std::uint64_t exponent) const;

  Dyadic& operator+=(const Dyadic& other);
  Dyadic& operator-=(const Dyadic& other);
  Dyadic operator-() const { return Dyadic(-num_, exp_); }
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// Exact comparison against the rational p/q (q > 0).
  std::strong_ordering compare_rational(const BigInt& p, const BigInt& q) const;

  /// Canonical text "p/2^k".
  std::string str() const;

 private:
  void canonicalize();

  BigInt num_ = 0;
  std::uint64_t exp_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

/// 2^k as a big integer.
BigInt pow2(std::uint64_t k);

}  // namespace randlab
