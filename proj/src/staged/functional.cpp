#include "randlab/staged/functional.hpp"

#include <algorithm>

#include "randlab/core/error.hpp"

namespace randlab {
namespace {

bool conflicts(const Axiom& a, const Axiom& b) {
  return a.oracle.comparable(b.oracle) && !a.output.comparable(b.output);
}

}  // namespace

TuringFunctional::TuringFunctional(std::vector<Axiom> axioms, Stage horizon)
    : axioms_(std::move(axioms)), horizon_(horizon) {
  std::sort(axioms_.begin(), axioms_.end(), [](const Axiom& a, const Axiom& b) {
    if (a.stage != b.stage) return a.stage < b.stage;
    if (a.oracle != b.oracle) return a.oracle < b.oracle;
    return a.output < b.output;
  });
  axioms_.erase(std::unique(axioms_.begin(), axioms_.end()), axioms_.end());
  for (std::size_t i = 0; i < axioms_.size(); ++i) {
    if (axioms_[i].stage > horizon_) {
      throw InvariantViolation("axiom enumerated at stage " + std::to_string(axioms_[i].stage) +
                               " beyond horizon " + std::to_string(horizon_));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (conflicts(axioms_[i], axioms_[j])) {
        throw InvariantViolation("inconsistent functional: (" + axioms_[j].oracle.str() + "," +
                                 axioms_[j].output.str() + ") and (" + axioms_[i].oracle.str() + "," +
                                 axioms_[i].output.str() + ")");
      }
    }
  }
}

BitString TuringFunctional::apply(const BitString& sigma, Stage s) const {
  BitString best;
  for (const auto& a : axioms_) {
    if (a.stage > s) break;
    if (a.oracle.is_prefix_of(sigma) && a.output.size() > best.size()) best = a.output;
  }
  return best;
}

CylinderSet TuringFunctional::preimage(const BitString& tau, Stage s) const {
  if (tau.empty()) return CylinderSet::full();
  std::vector<BitString> oracles;
  for (const auto& a : axioms_) {
    if (a.stage > s) break;
    if (tau.is_prefix_of(a.output)) oracles.push_back(a.oracle);
  }
  return CylinderSet::normalize(std::move(oracles));
}

std::vector<Stage> TuringFunctional::change_stages() const {
  std::vector<Stage> out;
  for (const auto& a : axioms_) {
    if (out.empty() || out.back() != a.stage) out.push_back(a.stage);
  }
  return out;
}

TuringFunctional random_functional(std::mt19937_64& rng, const FunctionalParams& params) {
  std::vector<Axiom> kept;
  for (std::size_t i = 0; i < params.attempts; ++i) {
    Axiom candidate;
    candidate.stage = static_cast<Stage>(draw_below(rng, std::uint64_t{params.horizon} + 1));
    candidate.oracle = random_string(rng, 1 + draw_below(rng, params.max_oracle_length));
    candidate.output = random_string(rng, 1 + draw_below(rng, params.max_output_length));
    const bool ok = std::none_of(kept.begin(), kept.end(),
                                 [&](const Axiom& a) { return conflicts(a, candidate); });
    if (ok) kept.push_back(std::move(candidate));
  }
  return TuringFunctional(std::move(kept), params.horizon);
}

}  // namespace randlab
