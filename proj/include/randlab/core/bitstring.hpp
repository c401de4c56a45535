#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace randlab {

/// A finite binary string. The empty string is rendered as "^".
///
/// Ordering is plain lexicographic order on the bits, which places every
/// string before its proper extensions and orders incomparable strings left
/// to right in the binary tree.
class BitString {
 public:
  BitString() = default;

  /// Parses "0101"-style text; "^" and "" both denote the empty string.
  explicit BitString(std::string_view text);

  static BitString zeros(std::size_t n) { return BitString(Raw{std::string(n, '0')}); }
  static BitString ones(std::size_t n) { return BitString(Raw{std::string(n, '1')}); }

  /// The `width`-bit big-endian binary representation of `value`.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  /// Inverse of nat(): length-lexicographic enumeration of all strings.
  static BitString from_nat(std::uint64_t index);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  /// Bit at position i as 0 or 1.
  int operator[](std::size_t i) const noexcept { return bits_[i] == '1' ? 1 : 0; }

  /// this ⪯ other.
  bool is_prefix_of(const BitString& other) const noexcept;
  bool is_proper_prefix_of(const BitString& other) const noexcept {
    return size() < other.size() && is_prefix_of(other);
  }
  bool comparable(const BitString& other) const noexcept {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }

  /// The prefix of length n (n is clamped to size()).
  BitString prefix(std::size_t n) const;
  BitString suffix_from(std::size_t pos) const;

  BitString with_bit(int bit) const;
  BitString sibling() const;
  BitString parent() const { return prefix(size() == 0 ? 0 : size() - 1); }

  BitString& push_back(int bit);
  BitString& append(const BitString& tail);
  friend BitString operator+(BitString a, const BitString& b) { return std::move(a.append(b)); }

  /// Integer value of the bits read big-endian; requires size() <= 64.
  std::uint64_t to_uint() const;

  /// Length-lexicographic index: ^ -> 0, 0 -> 1, 1 -> 2, 00 -> 3, ...
  std::uint64_t nat() const;

  /// Text form; "^" for the empty string.
  std::string str() const { return bits_.empty() ? std::string("^") : bits_; }
  const std::string& raw() const noexcept { return bits_; }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  struct Raw {
    std::string bits;
  };
  explicit BitString(Raw raw) : bits_(std::move(raw.bits)) {}

  std::string bits_;
};

std::ostream& operator<<(std::ostream& os, const BitString& s);

}  // namespace randlab

template <>
struct std::hash<randlab::BitString> {
  std::size_t operator()(const randlab::BitString& s) const noexcept {
    return std::hash<std::string>{}(s.raw());
  }
};
