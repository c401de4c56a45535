#include "randlab/demuth/tests.hpp"

#include <algorithm>
#include <set>

#include "randlab/core/error.hpp"

namespace randlab::demuth {
namespace {

// Number of m >= 1 with m * 2^{-(n+1)} / h strictly below mu.
BigInt multiples_passed(const Dyadic& mu, std::uint64_t h, std::size_t n) {
  if (mu.sign() <= 0) return 0;
  const BigInt scaled = mu.numerator() * h * pow2(n + 1);
  const BigInt ceiling = (scaled + pow2(mu.exponent()) - 1) >> mu.exponent();
  return ceiling - 1;
}

Stage max_horizon(const std::vector<DiffPair>& pairs) {
  Stage h = 0;
  for (const auto& p : pairs) h = std::max({h, p.u.horizon(), p.v.horizon()});
  return h;
}

// Random strings of length in [min_len, max_len] whose union stays within `cap`.
StagedOpenSet random_bounded_set(std::mt19937_64& rng, std::size_t attempts, std::size_t min_len,
                                 std::size_t max_len, const Dyadic& cap, Stage horizon) {
  std::vector<StagedString> entries;
  CylinderSet so_far;
  for (std::size_t i = 0; i < attempts; ++i) {
    BitString s = random_string(rng, min_len + draw_below(rng, max_len - min_len + 1));
    CylinderSet next = unite(so_far, CylinderSet::cylinder(s));
    if (next.measure() > cap) continue;
    so_far = std::move(next);
    entries.push_back({static_cast<Stage>(draw_below(rng, std::uint64_t{horizon} + 1)), std::move(s)});
  }
  return StagedOpenSet(Enumerator(std::move(entries), horizon));
}

}  // namespace

VersionedOpenSet::VersionedOpenSet(std::vector<std::pair<Stage, StagedOpenSet>> versions)
    : versions_(std::move(versions)) {
  if (versions_.empty()) throw InvariantViolation("a versioned open set needs at least one version");
  if (versions_.front().first != 0) throw InvariantViolation("the first version must start at stage 0");
  for (std::size_t i = 1; i < versions_.size(); ++i) {
    if (versions_[i].first <= versions_[i - 1].first) {
      throw InvariantViolation("version stages must be strictly increasing");
    }
  }
}

std::size_t VersionedOpenSet::live_index(Stage s) const {
  auto it = std::upper_bound(versions_.begin(), versions_.end(), s,
                             [](Stage v, const auto& version) { return v < version.first; });
  return static_cast<std::size_t>(std::prev(it) - versions_.begin());
}

Stage VersionedOpenSet::horizon() const {
  Stage h = 0;
  for (const auto& [stage, set] : versions_) h = std::max({h, stage, set.horizon()});
  return h;
}

CylinderSet DiffUnionTest::final_level(std::size_t n) const {
  CylinderSet out;
  for (const auto& p : levels.at(n)) out = unite(out, p.final_difference());
  return out;
}

DiffUnionTest demuth_to_diffunion(const DemuthTest& t) {
  DiffUnionTest out;
  out.pair_bound = t.version_bound;
  for (std::size_t n = 0; n < t.level_count(); ++n) {
    const auto& versions = t.levels[n].versions();
    const std::uint64_t h = t.version_bound.at(n);
    if (versions.size() > h) {
      throw InvariantViolation("level " + std::to_string(n) + " has " + std::to_string(versions.size()) +
                               " versions, above its bound " + std::to_string(h));
    }
    std::vector<DiffPair> pairs;
    for (std::size_t k = 0; k < versions.size(); ++k) {
      const StagedOpenSet& u = versions[k].second;
      StagedOpenSet v;
      if (k + 1 < versions.size()) v = u.starting_at(versions[k + 1].first);
      pairs.push_back({u, std::move(v)});
    }
    pairs.resize(h);
    out.levels.push_back(std::move(pairs));
  }
  return out;
}

DemuthTest diffunion_to_demuth(const DiffUnionTest& t) {
  DemuthTest out;
  for (std::size_t n = 0; n + 1 < t.level_count(); ++n) {
    const auto& pairs = t.levels[n + 1];
    const std::uint64_t h = std::max<std::uint64_t>(1, t.pair_bound.at(n + 1));
    if (pairs.size() > h) {
      throw InvariantViolation("input level " + std::to_string(n + 1) + " has " + std::to_string(pairs.size()) +
                               " pairs, above its bound " + std::to_string(h));
    }
    const Dyadic input_measure = t.final_level(n + 1).measure();
    if (input_measure > Dyadic::inverse_pow2(n + 1)) {
      throw InvariantViolation("input level " + std::to_string(n + 1) + " has measure " + input_measure.str() +
                               " above 2^-" + std::to_string(n + 1));
    }

    const Stage horizon = std::max<Stage>(1, max_horizon(pairs));
    // Stages at which some V_k can pass a new multiple. Growth present at
    // stage 0 is first seen at stage 1.
    std::set<Stage> candidates{1};
    std::set<Stage> u_stages{0};
    for (const auto& p : pairs) {
      for (Stage g : p.v.growth_stages()) candidates.insert(std::max<Stage>(1, g));
      for (Stage g : p.u.growth_stages()) u_stages.insert(g);
    }

    auto version_at = [&](const std::vector<CylinderSet>& removed) {
      std::vector<std::pair<Stage, CylinderSet>> snapshots;
      for (Stage s : u_stages) {
        CylinderSet content;
        for (std::size_t k = 0; k < pairs.size(); ++k) content = unite(content, subtract(pairs[k].u.at(s), removed[k]));
        if (!snapshots.empty() && snapshots.back().second == content) continue;
        snapshots.emplace_back(s, std::move(content));
      }
      return StagedOpenSet::from_snapshots(snapshots, horizon);
    };

    std::vector<std::pair<Stage, StagedOpenSet>> versions;
    versions.emplace_back(0, version_at(std::vector<CylinderSet>(pairs.size())));
    std::vector<BigInt> passed(pairs.size(), 0);
    for (Stage s : candidates) {
      bool changed = false;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        BigInt now = multiples_passed(pairs[k].v.measure(s), h, n);
        if (now > passed[k]) {
          passed[k] = std::move(now);
          changed = true;
        }
      }
      if (!changed) continue;
      std::vector<CylinderSet> removed;
      for (const auto& p : pairs) removed.push_back(p.v.at(s));
      versions.emplace_back(s, version_at(removed));
    }
    out.levels.emplace_back(std::move(versions));
    out.version_bound.push_back(h * h * (std::uint64_t{1} << (n + 1)));
  }
  return out;
}

std::vector<std::size_t> solovay_profile(const BitString& x, const DemuthTest& t) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < t.level_count(); ++n) {
    if (t.levels[n].final_set().contains_prefix_of(x)) out.push_back(n);
  }
  return out;
}

std::vector<std::size_t> solovay_profile(const BitString& x, const DiffUnionTest& t) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < t.level_count(); ++n) {
    if (t.final_level(n).contains_prefix_of(x)) out.push_back(n);
  }
  return out;
}

namespace {

VerifyReport finish(std::vector<LevelCheck> levels) {
  VerifyReport report;
  report.levels = std::move(levels);
  for (const auto& l : report.levels) {
    if (!l.pass && report.pass) {
      report.pass = false;
      report.witness = l.level;
    }
  }
  return report;
}

}  // namespace

VerifyReport verify_demuth(const DemuthTest& t) {
  std::vector<LevelCheck> levels;
  for (std::size_t n = 0; n < t.level_count(); ++n) {
    LevelCheck c;
    c.level = n;
    c.count = t.levels[n].version_count();
    c.count_bound = n < t.version_bound.size() ? t.version_bound[n] : 0;
    c.measure = t.levels[n].final_set().measure();
    c.measure_bound = Dyadic::inverse_pow2(n);
    c.pass = c.count <= c.count_bound && c.measure <= c.measure_bound;
    levels.push_back(std::move(c));
  }
  return finish(std::move(levels));
}

VerifyReport verify_diffunion(const DiffUnionTest& t) {
  std::vector<LevelCheck> levels;
  for (std::size_t n = 0; n < t.level_count(); ++n) {
    LevelCheck c;
    c.level = n;
    c.count = t.levels[n].size();
    c.count_bound = n < t.pair_bound.size() ? t.pair_bound[n] : 0;
    c.measure = t.final_level(n).measure();
    c.measure_bound = Dyadic::inverse_pow2(n);
    c.pass = c.count <= c.count_bound && c.measure <= c.measure_bound;
    levels.push_back(std::move(c));
  }
  return finish(std::move(levels));
}

DemuthTest random_demuth_test(std::mt19937_64& rng, const RandomTestParams& params) {
  DemuthTest t;
  for (std::size_t n = 0; n < params.levels; ++n) {
    const std::uint64_t h = 1 + draw_below(rng, params.max_bound);
    const std::uint64_t count = std::min<std::uint64_t>(1 + draw_below(rng, h), std::uint64_t{params.horizon} + 1);
    std::set<Stage> stages{0};
    while (stages.size() < count) stages.insert(static_cast<Stage>(1 + draw_below(rng, params.horizon)));
    std::vector<std::pair<Stage, StagedOpenSet>> versions;
    const std::size_t min_len = std::max<std::size_t>(1, n);
    for (Stage s : stages) {
      versions.emplace_back(s, random_bounded_set(rng, params.strings_per_set, min_len, std::max(min_len, params.depth),
                                                  Dyadic::inverse_pow2(n), params.horizon));
    }
    t.levels.emplace_back(std::move(versions));
    t.version_bound.push_back(h);
  }
  return t;
}

DiffUnionTest random_diffunion_test(std::mt19937_64& rng, const RandomTestParams& params) {
  DiffUnionTest t;
  const std::size_t max_u_len = std::max<std::size_t>(2, params.depth / 2);
  for (std::size_t n = 0; n < params.levels; ++n) {
    const std::uint64_t h = 1 + draw_below(rng, params.max_bound);
    const std::uint64_t count = 1 + draw_below(rng, h);
    std::vector<std::vector<StagedString>> u_entries(count), v_entries(count);
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t i = 0; i < params.strings_per_set; ++i) {
        BitString s = random_string(rng, 2 + draw_below(rng, max_u_len - 1));
        const auto stage = static_cast<Stage>(draw_below(rng, std::uint64_t{params.horizon} + 1));
        if (draw_below(rng, 4) != 0) {
          // V takes an extension of s at the same stage or later.
          BitString ext = s + random_string(rng, draw_below(rng, 3));
          const auto later = static_cast<Stage>(stage + draw_below(rng, std::uint64_t{params.horizon} - stage + 1));
          v_entries[k].push_back({later, std::move(ext)});
        }
        u_entries[k].push_back({stage, std::move(s)});
      }
    }
    auto build = [&] {
      std::vector<DiffPair> pairs;
      for (std::size_t k = 0; k < count; ++k) {
        pairs.push_back({StagedOpenSet(Enumerator(u_entries[k], params.horizon)),
                         StagedOpenSet(Enumerator(v_entries[k], params.horizon))});
      }
      return pairs;
    };
    // Move leftover difference cylinders into V until the level meets its bound.
    std::vector<DiffPair> pairs = build();
    const Dyadic cap = Dyadic::inverse_pow2(n);
    for (std::size_t k = 0; k < count; ++k) {
      const CylinderSet leftover = pairs[k].final_difference();
      for (const auto& d : leftover.antichain()) {
        DiffUnionTest probe{{pairs}, {h}};
        if (probe.final_level(0).measure() <= cap) break;
        v_entries[k].push_back({static_cast<Stage>(draw_below(rng, std::uint64_t{params.horizon} + 1)), d});
        pairs = build();
      }
    }
    t.levels.push_back(std::move(pairs));
    t.pair_bound.push_back(h);
  }
  return t;
}

ConversionCheck check_forward_conversion(const DemuthTest& t) {
  ConversionCheck out;
  const DiffUnionTest d = demuth_to_diffunion(t);
  if (!verify_diffunion(d).pass) out.failures.push_back("output violates its pair or measure bounds");
  for (std::size_t n = 0; n < t.level_count(); ++n)
    if (d.final_level(n) != t.levels[n].final_set())
      out.failures.push_back("level " + std::to_string(n) + ": " + d.final_level(n).str() +
                             " != " + t.levels[n].final_set().str());
  out.pass = out.failures.empty();
  return out;
}

ConversionCheck check_converse_conversion(const DiffUnionTest& t) {
  ConversionCheck out;
  const DemuthTest w = diffunion_to_demuth(t);
  for (std::size_t n = 0; n < w.level_count(); ++n) {
    const std::uint64_t h = std::max<std::uint64_t>(1, t.pair_bound.at(n + 1));
    const std::string at = "level " + std::to_string(n) + ": ";
    if (w.levels[n].version_count() > h * h * (std::uint64_t{1} << (n + 1)))
      out.failures.push_back(at + std::to_string(w.levels[n].version_count()) + " versions");
    if (w.levels[n].final_set().measure() > Dyadic::inverse_pow2(n))
      out.failures.push_back(at + "final measure " + w.levels[n].final_set().measure().str());
    const CylinderSet next = t.final_level(n + 1);
    for (const auto& [stage, version] : w.levels[n].versions())
      if (!is_subset(next, version.final()))
        out.failures.push_back(at + "version at stage " + std::to_string(stage) + " misses part of the next level");
  }
  if (!verify_demuth(w).pass) out.failures.push_back("output fails verify_demuth");
  out.pass = out.failures.empty();
  return out;
}

}  // namespace randlab::demuth
