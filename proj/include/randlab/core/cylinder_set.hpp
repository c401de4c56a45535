#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "randlab/core/bitstring.hpp"
#include "randlab/core/dyadic.hpp"

namespace randlab {

/// A clopen subset of Cantor space, stored as its canonical antichain.
///
/// The antichain is sorted lexicographically, no element is a prefix of
/// another, and no pair of siblings σ0, σ1 is present (they are merged into
/// σ). Two CylinderSets denote the same set iff their antichains are equal.
class CylinderSet {
 public:
  CylinderSet() = default;
  CylinderSet(std::initializer_list<BitString> strings);

  /// Canonical antichain generating the same open set as `strings`.
  static CylinderSet normalize(std::vector<BitString> strings);
  static CylinderSet full() { return CylinderSet(std::vector<BitString>{BitString{}}, Canonical{}); }
  static CylinderSet cylinder(const BitString& s) { return CylinderSet(std::vector<BitString>{s}, Canonical{}); }

  /// Parses the text form "{00,1}" (also accepts bare comma lists).
  static CylinderSet parse(std::string_view text);

  const std::vector<BitString>& antichain() const noexcept { return strings_; }
  std::size_t size() const noexcept { return strings_.size(); }
  bool empty() const noexcept { return strings_.empty(); }
  bool is_full() const noexcept { return strings_.size() == 1 && strings_.front().empty(); }
  std::size_t max_length() const noexcept;

  /// μ of the generated open set.
  Dyadic measure() const;

  /// μ(this ∩ [σ]) / μ([σ]).
  Dyadic conditional_measure(const BitString& sigma) const;

  /// Some antichain element is a prefix of x, i.e. [x] ⊆ this.
  bool contains_prefix_of(const BitString& x) const;

  /// [σ] ∩ this ≠ ∅.
  bool meets(const BitString& sigma) const;

  /// this ∩ [σ].
  CylinderSet restrict_to(const BitString& sigma) const;

  /// {Z : ηZ ∈ this}.
  CylinderSet shifted_by(const BitString& eta) const;

  /// Text form "{00,1}"; "{}" when empty.
  std::string str() const;

  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;

 private:
  struct Canonical {};
  CylinderSet(std::vector<BitString> canonical, Canonical) : strings_(std::move(canonical)) {}

  friend CylinderSet unite(const CylinderSet&, const CylinderSet&);
  friend CylinderSet intersect(const CylinderSet&, const CylinderSet&);
  friend CylinderSet subtract(const CylinderSet&, const CylinderSet&);

  std::vector<BitString> strings_;
};

CylinderSet unite(const CylinderSet& a, const CylinderSet& b);
CylinderSet intersect(const CylinderSet& a, const CylinderSet& b);
CylinderSet subtract(const CylinderSet& a, const CylinderSet& b);
inline CylinderSet complement(const CylinderSet& a) { return subtract(CylinderSet::full(), a); }
bool is_subset(const CylinderSet& a, const CylinderSet& b);
inline bool disjoint(const CylinderSet& a, const CylinderSet& b) { return intersect(a, b).empty(); }

std::ostream& operator<<(std::ostream& os, const CylinderSet& c);

}  // namespace randlab
