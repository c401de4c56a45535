#include "randlab/core/bitstring.hpp"

#include <ostream>

#include "randlab/core/error.hpp"

namespace randlab {

BitString::BitString(std::string_view text) {
  if (text == "^") return;
  bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error("invalid bit string '" + std::string(text) + "'");
    }
    bits_.push_back(c);
  }
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    if ((value >> i) & 1u) out[width - 1 - i] = '1';
  }
  return BitString(Raw{std::move(out)});
}

BitString BitString::from_nat(std::uint64_t index) {
  // Strings of length n occupy indices [2^n - 1, 2^{n+1} - 2].
  std::size_t len = 0;
  while (len < 63 && index + 1 >= (std::uint64_t{1} << (len + 1))) ++len;
  return from_uint(index + 1 - (std::uint64_t{1} << len), len);
}

bool BitString::is_prefix_of(const BitString& other) const noexcept {
  return size() <= other.size() && other.bits_.compare(0, size(), bits_) == 0;
}

BitString BitString::prefix(std::size_t n) const {
  return BitString(Raw{bits_.substr(0, n)});
}

BitString BitString::suffix_from(std::size_t pos) const {
  if (pos >= bits_.size()) return {};
  return BitString(Raw{bits_.substr(pos)});
}

BitString BitString::with_bit(int bit) const {
  BitString out = *this;
  out.push_back(bit);
  return out;
}

BitString BitString::sibling() const {
  if (empty()) throw Error("the empty string has no sibling");
  BitString out = *this;
  out.bits_.back() = out.bits_.back() == '0' ? '1' : '0';
  return out;
}

BitString& BitString::push_back(int bit) {
  bits_.push_back(bit ? '1' : '0');
  return *this;
}

BitString& BitString::append(const BitString& tail) {
  bits_ += tail.bits_;
  return *this;
}

std::uint64_t BitString::to_uint() const {
  if (size() > 64) throw Error("bit string too long for a 64-bit integer");
  std::uint64_t v = 0;
  for (char c : bits_) v = (v << 1) | (c == '1' ? 1u : 0u);
  return v;
}

std::uint64_t BitString::nat() const {
  if (size() > 62) throw GuardExceeded("nat index overflows for strings longer than 62 bits");
  return (std::uint64_t{1} << size()) - 1 + to_uint();
}

std::ostream& operator<<(std::ostream& os, const BitString& s) { return os << s.str(); }

}  // namespace randlab
