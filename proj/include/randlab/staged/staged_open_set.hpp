#pragma once

#include <utility>
#include <vector>

#include "randlab/core/cylinder_set.hpp"
#include "randlab/staged/enumerator.hpp"

namespace randlab {

/// The open set generated by an Enumerator, with a snapshot per change stage.
/// Queries past the horizon return the final set.
class StagedOpenSet {
 public:
  StagedOpenSet() : snapshots_{{0, CylinderSet{}}} {}
  explicit StagedOpenSet(Enumerator enumerator);

  /// All of `c` present from stage 0.
  static StagedOpenSet constant(const CylinderSet& c, Stage horizon = 0);

  /// Builds from a list of (stage, set) snapshots, which must be monotone.
  static StagedOpenSet from_snapshots(const std::vector<std::pair<Stage, CylinderSet>>& snapshots,
                                      Stage horizon);

  const Enumerator& enumerator() const noexcept { return enumerator_; }
  Stage horizon() const noexcept { return enumerator_.horizon(); }

  const CylinderSet& at(Stage s) const;
  const CylinderSet& final() const { return snapshots_.back().second; }
  Dyadic measure(Stage s) const { return at(s).measure(); }

  /// Stages at which the generated set grows (excluding stage 0).
  std::vector<Stage> growth_stages() const;

  /// The same set with nothing enumerated before `start`.
  StagedOpenSet starting_at(Stage start) const { return StagedOpenSet(enumerator_.delayed_until(start)); }

  const std::vector<std::pair<Stage, CylinderSet>>& snapshots() const noexcept { return snapshots_; }

 private:
  Enumerator enumerator_;
  std::vector<std::pair<Stage, CylinderSet>> snapshots_;
};

}  // namespace randlab
