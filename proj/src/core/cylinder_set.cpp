#include "randlab/core/cylinder_set.hpp"

#include <algorithm>
#include <ostream>

#include "randlab/core/error.hpp"

namespace randlab {
namespace {

// Stack pass over a lexicographically sorted list: drops duplicates and
// extensions of earlier elements, then merges sibling pairs bottom-up.
std::vector<BitString> canonical_from_sorted(std::vector<BitString>&& sorted) {
  std::vector<BitString> stack;
  stack.reserve(sorted.size());
  for (auto& s : sorted) {
    if (!stack.empty() && stack.back().is_prefix_of(s)) continue;
    stack.push_back(std::move(s));
    while (stack.size() >= 2) {
      const BitString& top = stack.back();
      const BitString& below = stack[stack.size() - 2];
      if (top.empty() || top.size() != below.size() || below != top.sibling()) break;
      BitString parent = top.parent();
      stack.pop_back();
      stack.back() = std::move(parent);
    }
  }
  return stack;
}

// Index of the element that is a prefix of x, or npos.
std::size_t find_prefix_of(const std::vector<BitString>& chain, const BitString& x) {
  auto it = std::upper_bound(chain.begin(), chain.end(), x);
  if (it == chain.begin()) return std::string::npos;
  --it;
  return it->is_prefix_of(x) ? static_cast<std::size_t>(it - chain.begin()) : std::string::npos;
}

// Range of elements extending x.
std::pair<std::size_t, std::size_t> extensions_of(const std::vector<BitString>& chain,
                                                  const BitString& x) {
  auto lo = std::lower_bound(chain.begin(), chain.end(), x);
  auto hi = lo;
  while (hi != chain.end() && x.is_prefix_of(*hi)) ++hi;
  return {static_cast<std::size_t>(lo - chain.begin()), static_cast<std::size_t>(hi - chain.begin())};
}

// Antichain for [p] minus the cylinders of `ext` (all of which extend p).
void complement_within(const BitString& p, std::span<const BitString> ext,
                       std::vector<BitString>& out) {
  if (ext.empty()) {
    out.push_back(p);
    return;
  }
  if (ext.front() == p) return;
  const std::size_t depth = p.size();
  auto split = std::find_if(ext.begin(), ext.end(),
                            [depth](const BitString& s) { return s[depth] == 1; });
  const auto mid = static_cast<std::size_t>(split - ext.begin());
  complement_within(p.with_bit(0), ext.subspan(0, mid), out);
  complement_within(p.with_bit(1), ext.subspan(mid), out);
}

}  // namespace

CylinderSet::CylinderSet(std::initializer_list<BitString> strings)
    : CylinderSet(normalize(std::vector<BitString>(strings))) {}

CylinderSet CylinderSet::normalize(std::vector<BitString> strings) {
  std::sort(strings.begin(), strings.end());
  return CylinderSet(canonical_from_sorted(std::move(strings)), Canonical{});
}

CylinderSet CylinderSet::parse(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw Error("unterminated cylinder set '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<BitString> strings;
  while (!trim(text).empty()) {
    const auto comma = text.find(',');
    strings.emplace_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return normalize(std::move(strings));
}

std::size_t CylinderSet::max_length() const noexcept {
  std::size_t m = 0;
  for (const auto& s : strings_) m = std::max(m, s.size());
  return m;
}

Dyadic CylinderSet::measure() const {
  const std::size_t top = max_length();
  BigInt total = 0;
  for (const auto& s : strings_) total += pow2(top - s.size());
  return Dyadic(std::move(total), top);
}

Dyadic CylinderSet::conditional_measure(const BitString& sigma) const {
  return restrict_to(sigma).measure().scaled(static_cast<std::int64_t>(sigma.size()));
}

bool CylinderSet::contains_prefix_of(const BitString& x) const {
  return find_prefix_of(strings_, x) != std::string::npos;
}

bool CylinderSet::meets(const BitString& sigma) const {
  if (contains_prefix_of(sigma)) return true;
  auto [lo, hi] = extensions_of(strings_, sigma);
  return lo != hi;
}

CylinderSet CylinderSet::restrict_to(const BitString& sigma) const {
  if (contains_prefix_of(sigma)) return cylinder(sigma);
  auto [lo, hi] = extensions_of(strings_, sigma);
  return CylinderSet(std::vector<BitString>(strings_.begin() + static_cast<std::ptrdiff_t>(lo),
                                            strings_.begin() + static_cast<std::ptrdiff_t>(hi)),
                     Canonical{});
}

CylinderSet CylinderSet::shifted_by(const BitString& eta) const {
  if (contains_prefix_of(eta)) return full();
  auto [lo, hi] = extensions_of(strings_, eta);
  std::vector<BitString> out;
  out.reserve(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) out.push_back(strings_[i].suffix_from(eta.size()));
  return CylinderSet(canonical_from_sorted(std::move(out)), Canonical{});
}

std::string CylinderSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < strings_.size(); ++i) {
    if (i) out += ',';
    out += strings_[i].str();
  }
  return out + "}";
}

CylinderSet unite(const CylinderSet& a, const CylinderSet& b) {
  std::vector<BitString> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.strings_.begin(), a.strings_.end(), b.strings_.begin(), b.strings_.end(),
             std::back_inserter(merged));
  return CylinderSet(canonical_from_sorted(std::move(merged)), CylinderSet::Canonical{});
}

CylinderSet intersect(const CylinderSet& a, const CylinderSet& b) {
  // Linear merge: the extensions of a string form a contiguous lexicographic
  // interval starting at the string itself.
  std::vector<BitString> out;
  std::size_t i = 0, j = 0;
  const auto& x = a.strings_;
  const auto& y = b.strings_;
  while (i < x.size() && j < y.size()) {
    if (x[i].is_prefix_of(y[j])) {
      out.push_back(y[j++]);
    } else if (y[j].is_prefix_of(x[i])) {
      out.push_back(x[i++]);
    } else if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return CylinderSet(canonical_from_sorted(std::move(out)), CylinderSet::Canonical{});
}

CylinderSet subtract(const CylinderSet& a, const CylinderSet& b) {
  std::vector<BitString> out;
  const auto& y = b.strings_;
  for (const auto& s : a.strings_) {
    if (find_prefix_of(y, s) != std::string::npos) continue;
    auto [lo, hi] = extensions_of(y, s);
    complement_within(s, std::span<const BitString>(y.data() + lo, hi - lo), out);
  }
  return CylinderSet(canonical_from_sorted(std::move(out)), CylinderSet::Canonical{});
}

bool is_subset(const CylinderSet& a, const CylinderSet& b) { return subtract(a, b).empty(); }

std::ostream& operator<<(std::ostream& os, const CylinderSet& c) { return os << c.str(); }

}  // namespace randlab
