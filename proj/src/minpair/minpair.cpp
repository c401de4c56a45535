#include "randlab/minpair/minpair.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "randlab/core/error.hpp"

namespace randlab::minpair {
namespace {

Stage joint_horizon(const TuringFunctional& phi, const TuringFunctional& psi) {
  return std::max(phi.horizon(), psi.horizon());
}

std::vector<Stage> candidate_stages(const TuringFunctional& phi, Stage s) {
  std::vector<Stage> out{0};
  for (Stage t : phi.change_stages())
    if (t > 0 && t <= s) out.push_back(t);
  return out;
}

}  // namespace

std::optional<PairFamily> find_family(const TuringFunctional& phi, const BitString& sigma, Stage s) {
  const std::uint64_t n = sigma.nat();
  if (n > kMaxFamilyLog2)
    throw GuardExceeded("find_family: 2^" + std::to_string(n) + " pairs exceeds the family guard 2^" +
                        std::to_string(kMaxFamilyLog2));
  const std::size_t count = std::size_t{1} << n;
  for (Stage t : candidate_stages(phi, s)) {
    std::vector<const Axiom*> usable;
    for (const auto& a : phi.axioms())
      if (a.stage <= t && a.oracle.comparable(sigma)) usable.push_back(&a);
    std::vector<BitString> outputs;
    for (const Axiom* a : usable) outputs.push_back(a->output);
    std::sort(outputs.begin(), outputs.end());
    outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
    // In lexicographic order the extensions of a string follow it directly.
    std::vector<BitString> maximal;
    for (std::size_t i = 0; i < outputs.size(); ++i)
      if (i + 1 == outputs.size() || !outputs[i].is_prefix_of(outputs[i + 1])) maximal.push_back(outputs[i]);
    if (maximal.size() < count) continue;

    PairFamily family{sigma, n, t, {}};
    for (std::size_t i = 0; i < count; ++i) {
      const BitString& tau = maximal[i];
      const Axiom* best = nullptr;
      for (const Axiom* a : usable) {
        if (a->output != tau) continue;
        if (!best || a->oracle.size() < best->oracle.size() ||
            (a->oracle.size() == best->oracle.size() && a->oracle < best->oracle))
          best = a;
      }
      BitString witness = sigma.is_proper_prefix_of(best->oracle) ? best->oracle : sigma.with_bit(0);
      if (!tau.is_prefix_of(phi.apply(witness, t)))
        throw InvariantViolation("find_family: witness " + witness.str() + " does not compute " + tau.str());
      family.pairs.emplace_back(std::move(witness), tau);
    }
    return family;
  }
  return std::nullopt;
}

BitString FApprox::value_at(Stage s) const {
  BitString v = value_history.front().second;
  for (const auto& [stage, value] : value_history) {
    if (stage > s) break;
    v = value;
  }
  return v;
}

std::optional<std::size_t> FApprox::final_index() const {
  if (index_history.empty()) return std::nullopt;
  return index_history.back().second;
}

FApprox f_approx(const TuringFunctional& phi, const TuringFunctional& psi, const BitString& sigma) {
  FApprox out;
  out.sigma = sigma;
  out.n = sigma.nat();
  out.horizon = joint_horizon(phi, psi);
  out.family = find_family(phi, sigma, out.horizon);
  out.value_history.emplace_back(0, sigma);
  if (!out.family) return out;

  const Dyadic threshold = Dyadic::inverse_pow2(out.n);
  const auto& pairs = out.family->pairs;
  for (Stage t = out.family->found_at; t <= out.horizon; ++t) {
    std::optional<std::size_t> j;
    for (std::size_t i = 0; i < pairs.size() && !j; ++i)
      if (psi.preimage(pairs[i].second, t).measure() <= threshold) j = i;
    if (!j)
      throw InvariantViolation("f_approx: no index of the family for " + sigma.str() + " has preimage measure <= 2^-" +
                               std::to_string(out.n) + " at stage " + std::to_string(t));
    if (out.index_history.empty() || out.index_history.back().second != *j) out.index_history.emplace_back(t, *j);
    const BitString& value = pairs[*j].first;
    if (out.value_history.back().second != value) {
      // a stage-0 discovery replaces the initial value
      if (out.value_history.back().first == t)
        out.value_history.back().second = value;
      else
        out.value_history.emplace_back(t, value);
    }
  }
  if (out.mind_changes() > (std::uint64_t{1} << out.n))
    throw InvariantViolation("f_approx: " + std::to_string(out.mind_changes()) + " changes for " + sigma.str());
  return out;
}

BitString f_value(const TuringFunctional& phi, const TuringFunctional& psi, const BitString& sigma, Stage s) {
  return f_approx(phi, psi, sigma).value_at(s);
}

StagedOpenSet preimage_set(const TuringFunctional& psi, const BitString& tau, Stage horizon) {
  std::vector<std::pair<Stage, CylinderSet>> snapshots{{0, psi.preimage(tau, 0)}};
  for (Stage t : psi.change_stages()) {
    if (t == 0 || t > horizon) continue;
    CylinderSet c = psi.preimage(tau, t);
    if (c != snapshots.back().second) snapshots.emplace_back(t, std::move(c));
  }
  return StagedOpenSet::from_snapshots(snapshots, horizon);
}

demuth::VersionedOpenSet induced_demuth_level(const TuringFunctional& phi, const TuringFunctional& psi,
                                              const BitString& sigma) {
  const FApprox fa = f_approx(phi, psi, sigma);
  if (!fa.family) return demuth::VersionedOpenSet{};
  std::vector<std::pair<Stage, StagedOpenSet>> versions;
  if (fa.family->found_at > 0) versions.emplace_back(0, StagedOpenSet{});
  for (const auto& [stage, j] : fa.index_history)
    versions.emplace_back(stage, preimage_set(psi, fa.family->pairs[j].second, fa.horizon));
  return demuth::VersionedOpenSet(std::move(versions));
}

demuth::DemuthTest induced_demuth_test(const TuringFunctional& phi, const TuringFunctional& psi,
                                       std::size_t levels) {
  demuth::DemuthTest t;
  for (std::size_t n = 0; n < levels; ++n) {
    t.levels.push_back(induced_demuth_level(phi, psi, BitString::from_nat(n)));
    t.version_bound.push_back((std::uint64_t{1} << n) + 1);
  }
  return t;
}

IsolationReport isolated_path_analysis(const Enumerator& t, std::uint64_t n) {
  const std::vector<BitString> nodes = t.final_set();
  const std::unordered_set<BitString> present(nodes.begin(), nodes.end());
  std::unordered_map<BitString, std::size_t> children;
  for (const auto& s : nodes) {
    if (s.empty()) continue;
    if (!present.count(s.parent()))
      throw Error("isolated_path_analysis: " + s.str() + " is present but its parent is not");
    ++children[s.parent()];
  }
  IsolationReport report;
  report.n = n;
  std::vector<BitString> leaves;
  for (const auto& s : nodes)
    if (!children.count(s)) leaves.push_back(s);
  report.max_antichain = leaves.size();
  report.hypothesis = n >= 63 || report.max_antichain < (std::uint64_t{1} << n);
  if (!report.hypothesis) return report;

  std::size_t total_branching = 0;
  for (const auto& [node, c] : children)
    if (c >= 2) ++total_branching;
  for (const auto& leaf : leaves) {
    BranchIsolation b{leaf, 0, 0};
    for (std::size_t d = 0; d < leaf.size(); ++d) {
      auto it = children.find(leaf.prefix(d));
      if (it != children.end() && it->second >= 2) {
        ++b.branching_nodes;
        b.onset = d + 1;
      }
    }
    report.branches.push_back(std::move(b));
  }
  // A binary tree with L leaves has L - 1 branching nodes.
  report.pass = leaves.empty() || total_branching + 1 == leaves.size();
  return report;
}

Enumerator output_tree(const TuringFunctional& phi, const BitString& sigma) {
  std::vector<StagedString> entries;
  for (const auto& a : phi.axioms()) {
    if (!a.oracle.comparable(sigma)) continue;
    for (std::size_t l = 0; l <= a.output.size(); ++l) entries.push_back({a.stage, a.output.prefix(l)});
  }
  return Enumerator(std::move(entries), phi.horizon());
}

std::string to_string(Case c) { return c == Case::One ? "case1" : "case2"; }

CaseReport classify_case(const TuringFunctional& phi, const TuringFunctional& psi, const BitString& g_prefix,
                         const BitString& x, std::size_t n) {
  if (n > g_prefix.size()) throw Error("classify_case: position " + std::to_string(n) + " beyond the G-prefix");
  CaseReport r;
  r.sigma = g_prefix.prefix(n);
  r.n = r.sigma.nat();
  const FApprox fa = f_approx(phi, psi, r.sigma);
  r.f_value = fa.final_value();
  r.f_on_path = r.f_value.is_prefix_of(g_prefix);
  const Stage h = fa.horizon;
  r.phi_output = phi.apply(g_prefix, h);
  r.psi_output = psi.apply(x, h);
  if (r.f_value == r.sigma) {
    r.kind = Case::One;
    r.isolation = isolated_path_analysis(output_tree(phi, r.sigma), r.n);
    return r;
  }
  r.kind = Case::Two;
  r.tau = fa.family->pairs[*fa.final_index()].second;
  r.x_in_level = psi.preimage(r.tau, h).contains_prefix_of(x);
  const std::size_t common = std::min(r.phi_output.size(), r.psi_output.size());
  for (std::size_t i = 0; i < common; ++i)
    if (r.phi_output[i] != r.psi_output[i]) {
      r.disagreement = i;
      break;
    }
  return r;
}

namespace {

bool consistent_with(const std::vector<Axiom>& kept, const Axiom& a) {
  for (const auto& b : kept)
    if (a.oracle.comparable(b.oracle) && !a.output.comparable(b.output)) return false;
  return true;
}

}  // namespace

std::pair<TuringFunctional, TuringFunctional> random_pair(std::mt19937_64& rng, const PairParams& params) {
  const auto draw_stage = [&] { return static_cast<Stage>(draw_below(rng, std::uint64_t{params.horizon} + 1)); };
  std::vector<Axiom> phi;
  for (std::size_t i = 0; i < params.phi_axioms; ++i) {
    Axiom a{draw_stage(), random_string(rng, draw_below(rng, params.max_oracle_length + 1)),
            random_string(rng, 1 + draw_below(rng, params.max_output_length))};
    if (consistent_with(phi, a)) phi.push_back(std::move(a));
  }
  std::vector<Axiom> psi;
  for (std::size_t i = 0; i < params.psi_axioms && !phi.empty(); ++i) {
    const BitString& near = phi[draw_below(rng, phi.size())].output;
    BitString out = near.prefix(1 + draw_below(rng, near.size())) + random_string(rng, draw_below(rng, 3));
    Axiom a{draw_stage(), random_string(rng, 1 + draw_below(rng, params.max_oracle_length)), std::move(out)};
    if (consistent_with(psi, a)) psi.push_back(std::move(a));
  }
  return {TuringFunctional(std::move(phi), params.horizon), TuringFunctional(std::move(psi), params.horizon)};
}

}  // namespace randlab::minpair
