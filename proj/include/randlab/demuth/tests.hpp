#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "randlab/core/cylinder_set.hpp"
#include "randlab/staged/staged_open_set.hpp"

namespace randlab::demuth {

/// A sequence of open sets, each taking over at its stage. The live version
/// at stage s is the last one whose stage is <= s.
class VersionedOpenSet {
 public:
  /// A single empty version at stage 0.
  VersionedOpenSet() : versions_{{0, StagedOpenSet{}}} {}
  explicit VersionedOpenSet(std::vector<std::pair<Stage, StagedOpenSet>> versions);

  const std::vector<std::pair<Stage, StagedOpenSet>>& versions() const noexcept { return versions_; }
  std::size_t version_count() const noexcept { return versions_.size(); }
  std::size_t live_index(Stage s) const;
  const StagedOpenSet& live(Stage s) const { return versions_[live_index(s)].second; }
  /// Content of the live version at stage s.
  const CylinderSet& at(Stage s) const { return live(s).at(s); }
  const CylinderSet& final_set() const { return versions_.back().second.final(); }
  Stage horizon() const;

 private:
  std::vector<std::pair<Stage, StagedOpenSet>> versions_;
};

struct DemuthTest {
  std::vector<VersionedOpenSet> levels;
  /// Bound on the number of versions of each level.
  std::vector<std::uint64_t> version_bound;

  std::size_t level_count() const noexcept { return levels.size(); }
};

struct DiffPair {
  StagedOpenSet u;
  StagedOpenSet v;

  CylinderSet final_difference() const { return subtract(u.final(), v.final()); }
};

struct DiffUnionTest {
  std::vector<std::vector<DiffPair>> levels;
  /// Bound on the number of pairs at each level.
  std::vector<std::uint64_t> pair_bound;

  std::size_t level_count() const noexcept { return levels.size(); }
  /// Final union of the differences at level n.
  CylinderSet final_level(std::size_t n) const;
};

/// Level n becomes version_bound[n] pairs: pair k is (k-th version, that
/// version again once a (k+1)-th appears), padded with empty pairs.
DiffUnionTest demuth_to_diffunion(const DemuthTest& t);

/// Output level n is built from input level n+1. A new version is emitted at
/// each stage where some V_k's measure passes a new multiple of 2^{-n-1}/h,
/// h being the input pair bound at level n+1; crossings within one stage
/// are coalesced into one version.
///
/// Throws InvariantViolation if an input level exceeds its measure or pair
/// bound.
DemuthTest diffunion_to_demuth(const DiffUnionTest& t);

/// Levels whose final set contains a prefix of x.
std::vector<std::size_t> solovay_profile(const BitString& x, const DemuthTest& t);
std::vector<std::size_t> solovay_profile(const BitString& x, const DiffUnionTest& t);

struct LevelCheck {
  std::size_t level = 0;
  std::uint64_t count = 0;  // versions or pairs
  std::uint64_t count_bound = 0;
  Dyadic measure;
  Dyadic measure_bound;
  bool pass = true;
};

struct VerifyReport {
  std::vector<LevelCheck> levels;
  bool pass = true;
  /// First failing level, as the witness.
  std::optional<std::size_t> witness;
};

VerifyReport verify_demuth(const DemuthTest& t);
VerifyReport verify_diffunion(const DiffUnionTest& t);

struct ConversionCheck {
  bool pass = true;
  std::vector<std::string> failures;
};

/// Forward conversion: every final level set-equal to the final version, and
/// the output within its pair bounds.
ConversionCheck check_forward_conversion(const DemuthTest& t);

/// Converse conversion: per output level n, versions ≤ h²·2^{n+1}, final
/// measure ≤ 2^{-n}, and every version containing the final input level n+1.
ConversionCheck check_converse_conversion(const DiffUnionTest& t);

struct RandomTestParams {
  std::size_t levels = 5;
  std::uint64_t max_bound = 6;
  std::size_t depth = 10;
  Stage horizon = 12;
  std::size_t strings_per_set = 6;
};

/// Random valid Demuth test: every version of level n has measure <= 2^{-n}.
DemuthTest random_demuth_test(std::mt19937_64& rng, const RandomTestParams& params);

/// Random valid difference test. U sets are large and V sets cover most of
/// them, so V measures grow across many stages.
DiffUnionTest random_diffunion_test(std::mt19937_64& rng, const RandomTestParams& params);

}  // namespace randlab::demuth
