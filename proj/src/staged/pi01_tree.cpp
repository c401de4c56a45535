#include "randlab/staged/pi01_tree.hpp"

#include <algorithm>

#include "randlab/core/error.hpp"

namespace randlab {
namespace {

constexpr std::size_t kSurvivorGuard = std::size_t{1} << 20;

}  // namespace

Pi01Tree::Pi01Tree(std::size_t depth, Enumerator removals) : depth_(depth), removed_(std::move(removals)) {
  for (const auto& e : removed_.enumerator().entries()) {
    if (e.string.size() > depth_) {
      throw InvariantViolation("removal " + e.string.str() + " is longer than the tree depth " +
                               std::to_string(depth_));
    }
  }
  for (const auto& [stage, set] : removed_.snapshots()) classes_.emplace_back(stage, complement(set));
}

const CylinderSet& Pi01Tree::class_at(Stage s) const {
  auto it = std::upper_bound(classes_.begin(), classes_.end(), s,
                             [](Stage v, const auto& snap) { return v < snap.first; });
  return std::prev(it)->second;
}

std::vector<BitString> Pi01Tree::survivors(const BitString& sigma, std::size_t l, Stage s) const {
  std::vector<BitString> out;
  if (l < sigma.size()) return out;
  const CylinderSet& cls = class_at(s);
  std::vector<BitString> stack{sigma};
  while (!stack.empty()) {
    BitString node = std::move(stack.back());
    stack.pop_back();
    if (!cls.meets(node)) continue;
    if (node.size() == l) {
      out.push_back(std::move(node));
      if (out.size() > kSurvivorGuard) throw GuardExceeded("survivor enumeration exceeds 2^20 strings");
      continue;
    }
    stack.push_back(node.with_bit(1));
    stack.push_back(node.with_bit(0));
  }
  return out;
}

std::optional<BitString> Pi01Tree::leftmost(const BitString& sigma, std::size_t l, Stage s) const {
  if (l < sigma.size()) return std::nullopt;
  const CylinderSet inside = class_at(s).restrict_to(sigma);
  if (inside.empty()) return std::nullopt;
  const BitString& c = inside.antichain().front();
  if (c.size() >= l) return c.prefix(l);
  return c + BitString::zeros(l - c.size());
}

std::optional<BitString> Pi01Tree::rightmost(const BitString& sigma, std::size_t l, Stage s) const {
  if (l < sigma.size()) return std::nullopt;
  const CylinderSet inside = class_at(s).restrict_to(sigma);
  if (inside.empty()) return std::nullopt;
  const BitString& c = inside.antichain().back();
  if (c.size() >= l) return c.prefix(l);
  return c + BitString::ones(l - c.size());
}

Pi01Tree Pi01Tree::minus(const StagedOpenSet& u) const {
  return Pi01Tree(depth_, merge(removed_.enumerator(), u.enumerator()));
}

Pi01Tree random_tree(std::mt19937_64& rng, const TreeParams& params) {
  if (params.max_removal_length > params.depth) throw Error("random_tree: removals longer than depth");
  std::vector<StagedString> kept;
  CylinderSet removed;
  const Dyadic budget = Dyadic::one() - params.min_measure;
  for (std::size_t i = 0; i < params.removal_attempts; ++i) {
    const std::size_t span = params.max_removal_length - params.min_removal_length + 1;
    const std::size_t len = params.min_removal_length + draw_below(rng, span);
    BitString s = random_string(rng, len);
    const auto stage = static_cast<Stage>(draw_below(rng, std::uint64_t{params.horizon} + 1));
    CylinderSet next = unite(removed, CylinderSet::cylinder(s));
    if (next.measure() > budget) continue;
    removed = std::move(next);
    kept.push_back({stage, std::move(s)});
  }
  return Pi01Tree(params.depth, Enumerator(std::move(kept), params.horizon));
}

}  // namespace randlab
