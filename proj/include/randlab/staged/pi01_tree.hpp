#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "randlab/core/cylinder_set.hpp"
#include "randlab/staged/enumerator.hpp"
#include "randlab/staged/staged_open_set.hpp"

namespace randlab {

/// A co-c.e. tree of bounded depth: strings are removed over time, and
/// removing a string removes all of its extensions.
///
/// The class at stage s is the complement of the removed cylinders; a node τ
/// survives at stage s iff [τ] meets that class.
class Pi01Tree {
 public:
  Pi01Tree() : Pi01Tree(0, Enumerator{}) {}
  Pi01Tree(std::size_t depth, Enumerator removals);

  static Pi01Tree full(std::size_t depth, Stage horizon = 0) {
    return Pi01Tree(depth, Enumerator({}, horizon));
  }

  std::size_t depth() const noexcept { return depth_; }
  Stage horizon() const noexcept { return removed_.horizon(); }
  const Enumerator& removals() const noexcept { return removed_.enumerator(); }
  const StagedOpenSet& removed() const noexcept { return removed_; }

  const CylinderSet& class_at(Stage s) const;
  const CylinderSet& final_class() const { return classes_.back().second; }
  Dyadic class_measure(Stage s) const { return class_at(s).measure(); }

  bool survives(const BitString& tau, Stage s) const { return class_at(s).meets(tau); }

  /// Surviving length-l extensions of sigma at stage s, in lexicographic order.
  std::vector<BitString> survivors(const BitString& sigma, std::size_t l, Stage s) const;

  /// Lexicographically least / greatest surviving length-l extension of sigma.
  std::optional<BitString> leftmost(const BitString& sigma, std::size_t l, Stage s) const;
  std::optional<BitString> rightmost(const BitString& sigma, std::size_t l, Stage s) const;

  /// This class minus the open set u, stage by stage.
  Pi01Tree minus(const StagedOpenSet& u) const;

 private:
  std::size_t depth_ = 0;
  StagedOpenSet removed_;
  std::vector<std::pair<Stage, CylinderSet>> classes_;
};

struct TreeParams {
  std::size_t depth = 24;
  std::size_t removal_attempts = 12;
  std::size_t min_removal_length = 2;
  std::size_t max_removal_length = 10;
  Stage horizon = 8;
  /// Candidate removals that would push the final class below this are dropped.
  Dyadic min_measure = Dyadic::inverse_pow2(1);
};

Pi01Tree random_tree(std::mt19937_64& rng, const TreeParams& params);

}  // namespace randlab
