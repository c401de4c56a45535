#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "randlab/core/bitstring.hpp"
#include "randlab/demuth/tests.hpp"
#include "randlab/staged/enumerator.hpp"
#include "randlab/staged/functional.hpp"

namespace randlab::minpair {

/// Families of size 2^N are searched only for N up to this.
inline constexpr std::uint64_t kMaxFamilyLog2 = 16;

struct PairFamily {
  BitString base;
  std::uint64_t n = 0;  // Nat(base)
  Stage found_at = 0;
  std::vector<std::pair<BitString, BitString>> pairs;  // (σ_i, τ_i)
};

/// Earliest family of 2^Nat(σ) pairs: stage-major, and at the discovery stage
/// the first 2^N maximal outputs (lexicographic) of axioms whose oracle is
/// comparable with σ. σ_i is the shortest such oracle for τ_i when it strictly
/// extends σ, else σ0. Throws GuardExceeded when Nat(σ) > kMaxFamilyLog2.
std::optional<PairFamily> find_family(const TuringFunctional& phi, const BitString& sigma, Stage s);

struct FApprox {
  BitString sigma;
  std::uint64_t n = 0;
  std::optional<PairFamily> family;
  /// (stage, index) each time the chosen index moves; empty before discovery.
  std::vector<std::pair<Stage, std::size_t>> index_history;
  /// (stage, value) each time f(σ)[s] changes, starting with (0, σ) or the
  /// value at stage 0.
  std::vector<std::pair<Stage, BitString>> value_history;
  Stage horizon = 0;

  BitString value_at(Stage s) const;
  BitString final_value() const { return value_history.back().second; }
  std::size_t mind_changes() const { return value_history.size() - 1; }
  std::optional<std::size_t> final_index() const;
};

/// Full approximation history of f(σ) up to the later of the two horizons.
/// Throws InvariantViolation if no index qualifies at some stage (impossible
/// for consistent functionals) or the change count exceeds 2^N.
FApprox f_approx(const TuringFunctional& phi, const TuringFunctional& psi, const BitString& sigma);

/// f(σ)[s].
BitString f_value(const TuringFunctional& phi, const TuringFunctional& psi, const BitString& sigma, Stage s);

/// The open set Ψ^{-1}(τ) as it grows stage by stage.
StagedOpenSet preimage_set(const TuringFunctional& psi, const BitString& tau, Stage horizon);

/// Versions: empty until discovery, then Ψ^{-1}(τ_j) for each index taken.
demuth::VersionedOpenSet induced_demuth_level(const TuringFunctional& phi, const TuringFunctional& psi,
                                              const BitString& sigma);

/// Levels N = 0..levels-1 over σ = Nat^{-1}(N), with version bound 2^N + 1.
demuth::DemuthTest induced_demuth_test(const TuringFunctional& phi, const TuringFunctional& psi,
                                       std::size_t levels);

struct BranchIsolation {
  BitString leaf;
  std::size_t onset = 0;            // every node from this depth on has one child
  std::size_t branching_nodes = 0;  // along the branch
};

struct IsolationReport {
  std::size_t max_antichain = 0;
  std::uint64_t n = 0;
  bool hypothesis = false;  // max_antichain < 2^N
  bool pass = true;         // structural check (only meaningful with the hypothesis)
  std::vector<BranchIsolation> branches;
};

/// Throws Error if the final set of t is not closed under prefixes.
IsolationReport isolated_path_analysis(const Enumerator& t, std::uint64_t n);

/// The c.e. tree of prefixes of Φ-outputs over oracles comparable with σ.
Enumerator output_tree(const TuringFunctional& phi, const BitString& sigma);

enum class Case { One, Two };
std::string to_string(Case c);

struct CaseReport {
  Case kind = Case::One;
  BitString sigma;
  std::uint64_t n = 0;
  BitString f_value;
  bool f_on_path = false;  // f(σ) ⪯ G-prefix
  // Case 1
  std::optional<IsolationReport> isolation;
  // Case 2
  BitString tau;
  bool x_in_level = false;
  BitString phi_output;
  BitString psi_output;
  std::optional<std::size_t> disagreement;
};

/// Classifies position n of the G-prefix (σ = G↾n). Outputs are compared at
/// the later horizon; a disagreement is reported only at an explicit position.
CaseReport classify_case(const TuringFunctional& phi, const TuringFunctional& psi, const BitString& g_prefix,
                         const BitString& x, std::size_t n);

struct PairParams {
  std::size_t phi_axioms = 40;
  std::size_t psi_axioms = 30;
  std::size_t max_oracle_length = 5;
  std::size_t max_output_length = 4;
  Stage horizon = 12;
};

/// Random consistent (Φ, Ψ). Ψ's outputs are drawn near Φ's outputs, so the
/// induced preimages grow and force index switches.
std::pair<TuringFunctional, TuringFunctional> random_pair(std::mt19937_64& rng, const PairParams& params);

}  // namespace randlab::minpair
