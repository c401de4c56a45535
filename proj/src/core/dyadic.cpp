#include "randlab/core/dyadic.hpp"

#include <algorithm>
#include <ostream>

#include "randlab/core/error.hpp"

namespace randlab {

BigInt pow2(std::uint64_t k) {
  BigInt out = 1;
  out <<= k;
  return out;
}

Dyadic::Dyadic(BigInt numerator, std::uint64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const BigInt magnitude = boost::multiprecision::abs(num_);
  const std::uint64_t twos = boost::multiprecision::lsb(magnitude);
  const std::uint64_t shift = std::min(twos, exp_);
  num_ >>= shift;  // exact: the low `shift` bits are zero
  exp_ -= shift;
}

Dyadic Dyadic::scaled(std::int64_t shift) const {
  if (shift >= 0) {
    const auto s = static_cast<std::uint64_t>(shift);
    if (s <= exp_) return Dyadic(num_, exp_ - s);
    return Dyadic(num_ << (s - exp_), 0);
  }
  return Dyadic(num_, exp_ + static_cast<std::uint64_t>(-shift));
}

BigInt Dyadic::numerator_at(std::uint64_t exponent) const {
  if (exponent < exp_) throw Error("numerator_at: exponent below canonical exponent");
  return num_ << (exponent - exp_);
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  const std::uint64_t e = std::max(exp_, other.exp_);
  num_ = numerator_at(e) + other.numerator_at(e);
  exp_ = e;
  canonicalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& other) {
  const std::uint64_t e = std::max(exp_, other.exp_);
  num_ = numerator_at(e) - other.numerator_at(e);
  exp_ = e;
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const std::uint64_t e = std::max(a.exp_, b.exp_);
  const BigInt lhs = a.numerator_at(e);
  const BigInt rhs = b.numerator_at(e);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering Dyadic::compare_rational(const BigInt& p, const BigInt& q) const {
  if (q <= 0) throw Error("compare_rational: denominator must be positive");
  // num / 2^exp  vs  p / q   <=>   num * q  vs  p * 2^exp
  const BigInt lhs = num_ * q;
  const BigInt rhs = p << exp_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::str() const { return num_.str() + "/2^" + std::to_string(exp_); }

std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.str(); }

}  // namespace randlab
