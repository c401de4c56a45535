#pragma once

#include <random>
#include <vector>

#include "randlab/core/cylinder_set.hpp"
#include "randlab/staged/enumerator.hpp"

namespace randlab {

/// Axiom (oracle, output) enumerated at `stage`: every oracle extending
/// `oracle` computes at least `output`.
struct Axiom {
  Stage stage = 0;
  BitString oracle;
  BitString output;

  friend bool operator==(const Axiom&, const Axiom&) = default;
};

/// A finite stage-indexed Turing functional. Construction rejects axiom sets
/// where comparable oracles have incomparable outputs.
class TuringFunctional {
 public:
  TuringFunctional() = default;
  TuringFunctional(std::vector<Axiom> axioms, Stage horizon);

  Stage horizon() const noexcept { return horizon_; }
  const std::vector<Axiom>& axioms() const noexcept { return axioms_; }

  /// Longest output of an axiom with oracle ⪯ sigma enumerated by stage s.
  BitString apply(const BitString& sigma, Stage s) const;

  /// Canonical open set of oracles whose stage-s output extends tau.
  CylinderSet preimage(const BitString& tau, Stage s) const;

  std::vector<Stage> change_stages() const;

 private:
  std::vector<Axiom> axioms_;
  Stage horizon_ = 0;
};

struct FunctionalParams {
  std::size_t attempts = 12;
  std::size_t max_oracle_length = 4;
  std::size_t max_output_length = 4;
  Stage horizon = 10;
};

/// Random consistent functional: candidate axioms are drawn and kept only if
/// consistent with those already kept.
TuringFunctional random_functional(std::mt19937_64& rng, const FunctionalParams& params);

}  // namespace randlab
