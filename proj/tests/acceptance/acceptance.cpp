// One PASS/FAIL line per acceptance criterion. Tolerances are exact unless a
// runtime limit is stated next to the criterion.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "randlab/coding/kucera_gacs.hpp"
#include "randlab/fireworks/fireworks.hpp"
#include "randlab/minpair/minpair.hpp"
#include "randlab/scenario/scenario.hpp"

using namespace randlab;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = RANDLAB_SCENARIO_DIR;
const std::vector<std::string> kBundled{"fireworks_small", "conversion_sweep", "coding", "minpair", "interaction"};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Adversary lists named by fireworks experiments across the bundled scenarios.
std::vector<std::pair<std::string, std::vector<Enumerator>>> bundled_suites() {
  std::vector<std::pair<std::string, std::vector<Enumerator>>> out;
  std::set<std::string> seen;
  for (const auto& name : kBundled) {
    const auto s = scenario::load_scenario(kScenarios / (name + ".yaml"));
    for (const auto& e : s.experiments) {
      if (e.kind.rfind("fireworks_", 0) != 0) continue;
      std::string key = name + ":";
      std::vector<Enumerator> advs;
      for (const auto& a : e.params["adversaries"]) {
        key += a.as<std::string>() + ",";
        advs.push_back(s.enumerators.at(a.as<std::string>()));
      }
      if (seen.insert(key).second) out.emplace_back(key, std::move(advs));
    }
  }
  return out;
}

Outcome fireworks_bound() {
  Outcome o;
  std::size_t suites = 0;
  for (const auto& [key, advs] : bundled_suites()) {
    if (advs.size() != 3) continue;
    fireworks::Config cfg;
    cfg.adversaries = advs;
    cfg.k = 2;
    const auto sw = fireworks::sweep(cfg);
    ++suites;
    const bool ok = sw.failure_probability <= sw.bound && sw.bound < Dyadic::inverse_pow2(2);
    o.pass = o.pass && ok;
    o.detail += key + " " + sw.failure_probability.str() + "<=" + sw.bound.str() + "; ";
  }
  o.pass = o.pass && suites > 0;
  return o;
}

Outcome trichotomy() {
  Outcome o;
  std::size_t fixings = 0, suites = 0;
  for (const auto& [key, advs] : bundled_suites()) {
    if (advs.size() > 3) continue;
    fireworks::Config cfg;
    cfg.adversaries = advs;
    cfg.k = 0;  // N(e,0) = 2^{e+1} <= 8
    const auto r = fireworks::check_trichotomy(cfg, fireworks::sweep(cfg));
    fixings += r.fixings_checked;
    ++suites;
    if (!r.pass) {
      o.pass = false;
      o.detail += key + ": " + r.violations.front() + "; ";
    }
  }
  o.pass = o.pass && suites > 0;
  o.detail += std::to_string(suites) + " suites, " + std::to_string(fixings) + " fixings";
  return o;
}

Outcome forward_conversion() {
  std::mt19937_64 rng(301);
  std::size_t bad = 0;
  for (int i = 0; i < 100; ++i) {
    const auto t = demuth::random_demuth_test(rng, {});
    const auto d = demuth::demuth_to_diffunion(t);
    for (std::size_t n = 0; n < t.level_count(); ++n)
      if (!(d.final_level(n) == t.levels[n].final_set())) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " unequal levels over 100 tests"};
}

Outcome converse_conversion() {
  std::mt19937_64 rng(302);
  std::size_t bad = 0;
  std::string first;
  for (int i = 0; i < 100; ++i) {
    const auto chk = demuth::check_converse_conversion(demuth::random_diffunion_test(rng, {}));
    if (!chk.pass) {
      ++bad;
      if (first.empty()) first = chk.failures.front();
    }
  }
  return {bad == 0, std::to_string(bad) + " failing tests over 100" + (first.empty() ? "" : ": " + first)};
}

Outcome kg_roundtrip() {
  std::mt19937_64 rng(303);
  std::vector<BitString> payloads;
  for (std::uint64_t i = 0; BitString::from_nat(i).size() <= 5; ++i) payloads.push_back(BitString::from_nat(i));
  std::size_t bad = 0, low_measure = 0;
  for (int i = 0; i < 50; ++i) {
    const auto tree = random_tree(rng, TreeParams{});
    const Stage last = tree.horizon();
    if (tree.class_measure(last) < Dyadic::inverse_pow2(1)) ++low_measure;
    for (const auto& xi : payloads) {
      const BitString tau = coding::kg_encode(xi, BitString{}, tree);
      if (!tree.survives(tau, last) || coding::kg_decode(tau, BitString{}, tree, last) != xi) ++bad;
    }
  }
  return {bad == 0 && low_measure == 0, std::to_string(bad) + " failures over 50 trees x " +
                                            std::to_string(payloads.size()) + " payloads; " +
                                            std::to_string(low_measure) + " trees below measure 1/2"};
}

Outcome gamma_confinement() {
  std::mt19937_64 rng(304);
  std::size_t late = 0, over = 0, below = 0, samples = 0;
  for (int i = 0; i < 30; ++i) {
    const auto scheme = coding::random_scheme(rng, coding::SchemeParams{});
    for (int k = 0; k < 4; ++k) {
      std::vector<BitString> payloads;
      const std::size_t count = 1 + draw_below(rng, 3);
      for (std::size_t j = 0; j < count; ++j) payloads.push_back(random_string(rng, draw_below(rng, 5)));
      const auto chk = coding::check_decoding(payloads, scheme);
      late += chk.disagreements_at_or_above;
      below += chk.disagreements - chk.disagreements_at_or_above;
      if (chk.disagreements > chk.stabilization) ++over;
      ++samples;
    }
  }
  return {late == 0 && over == 0, std::to_string(samples) + " samples; disagreements at/above N: " +
                                      std::to_string(late) + ", below N: " + std::to_string(below)};
}

Outcome dense_hitting() {
  const std::vector<coding::DenseOpen> opens{
      {BitString("11"), 0, 16}, {BitString("00"), 0, 16}, {BitString("1"), 0, 24}, {BitString("0"), 0, 24}};
  std::vector<CylinderSet> sets;
  for (const auto& d : opens) sets.push_back(d.build());
  std::mt19937_64 rng(305);
  std::size_t misses = 0;
  for (int i = 0; i < 10; ++i) {
    const auto scheme = coding::random_scheme(rng, coding::SchemeParams{});
    std::vector<BitString> payloads;
    for (const auto& u : sets) payloads.push_back(coding::extend_into_open(payloads, u, scheme).next_payload);
    const auto enc = coding::w2r_encode(payloads, scheme);
    const BitString out =
        coding::gamma_decode(enc.codeword, static_cast<Stage>(enc.codeword.size()), scheme).defined_prefix();
    for (const auto& u : sets)
      if (!u.contains_prefix_of(out)) ++misses;
  }
  return {misses == 0, std::to_string(misses) + " misses over 10 schemes x 4 opens"};
}

Outcome mind_changes() {
  std::mt19937_64 rng(306);
  std::size_t over = 0, invalid = 0, max_changes = 0;
  for (int i = 0; i < 100; ++i) {
    const auto [phi, psi] = minpair::random_pair(rng, minpair::PairParams{});
    for (std::uint64_t n = 0; n <= 4; ++n) {
      const auto fa = minpair::f_approx(phi, psi, BitString::from_nat(n));
      max_changes = std::max<std::size_t>(max_changes, fa.mind_changes());
      if (fa.mind_changes() > (std::uint64_t{1} << n)) ++over;
    }
    if (!demuth::verify_demuth(minpair::induced_demuth_test(phi, psi, 5)).pass) ++invalid;
  }
  return {over == 0 && invalid == 0, std::to_string(over) + " bound violations, " + std::to_string(invalid) +
                                         " invalid induced tests, max changes " + std::to_string(max_changes)};
}

CylinderSet random_set(std::mt19937_64& rng) {
  std::vector<BitString> strings;
  const std::size_t count = draw_below(rng, 6);
  for (std::size_t i = 0; i < count; ++i) strings.push_back(random_string(rng, draw_below(rng, 9)));
  return CylinderSet::normalize(strings);
}

Dyadic brute_measure(const CylinderSet& c) {
  std::uint64_t hits = 0;
  for (std::uint64_t v = 0; v < 256; ++v)
    if (c.contains_prefix_of(BitString::from_uint(v, 8))) ++hits;
  return Dyadic(BigInt(hits), 8);
}

Outcome core_algebra() {
  std::mt19937_64 rng(307);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_set(rng), b = random_set(rng);
    if (unite(a, b).measure() + intersect(a, b).measure() != a.measure() + b.measure()) ++bad;
    if (!(CylinderSet::normalize(a.antichain()) == a)) ++bad;
    for (const auto& c : {a, b, unite(a, b), intersect(a, b), subtract(a, b)})
      if (c.measure() != brute_measure(c)) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " failures over 1000 pairs"};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome golden() {
  Outcome o;
  std::size_t files = 0;
  for (const auto& name : kBundled) {
    const auto artifacts = scenario::render(scenario::run_scenario(scenario::load_scenario(kScenarios / (name + ".yaml"))));
    const fs::path dir = kScenarios / "golden" / name;
    std::set<std::string> expected;
    if (fs::is_directory(dir))
      for (const auto& e : fs::directory_iterator(dir)) expected.insert(e.path().filename().string());
    std::set<std::string> produced;
    for (const auto& a : artifacts) {
      produced.insert(a.file);
      ++files;
      if (!fs::exists(dir / a.file) || slurp(dir / a.file) != a.content) {
        o.pass = false;
        o.detail += name + "/" + a.file + " differs; ";
      }
    }
    if (produced != expected) {
      o.pass = false;
      o.detail += name + ": file sets differ; ";
    }
  }
  o.detail += std::to_string(files) + " files compared";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"fireworks failure bound", fireworks_bound},   {"outcome trichotomy", trichotomy},
      {"forward conversion identity", forward_conversion}, {"converse conversion bounds", converse_conversion},
      {"tree coding round trip", kg_roundtrip},        {"decoder error confinement", gamma_confinement},
      {"dense-open hitting", dense_hitting},           {"mind-change bound", mind_changes},
      {"cylinder set algebra", core_algebra},          {"golden determinism", golden}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " (" << secs << "s): " << o.detail;
    std::cout << line.str() << "\n";
  }
  return all ? 0 : 1;
}
