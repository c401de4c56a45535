#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "params.hpp"
#include "randlab/fireworks/fireworks.hpp"
#include "randlab/minpair/minpair.hpp"
#include "randlab/scenario/scenario.hpp"

namespace randlab::scenario {
namespace {

const std::set<std::string> kSections{"name",     "seed",       "enumerators", "functionals",  "functional_pairs",
                                      "trees",    "families",   "schemes",     "dense_opens",  "demuth_tests",
                                      "diffunion_tests", "experiments"};

class Loader {
 public:
  Loader(Scenario& s, std::string source) : s_(s), source_(std::move(source)) {}

  void load(const YAML::Node& root) {
    Params top(root, source_, &s_.overrides);
    for (const auto& kv : root) {
      const auto key = kv.first.as<std::string>();
      if (!kSections.count(key)) top.fail(kv.first, "unknown section '" + key + "'");
    }
    s_.name = top.get<std::string>("name", s_.name);
    s_.seed = s_.overrides.seed.value_or(top.get<std::uint64_t>("seed", 0));

    each(top, "enumerators", [&](const Params& p, const std::string& name) {
      insert(s_.enumerators, p, name, enumerator(p, "enumerator:" + name));
    });
    each(top, "functionals", [&](const Params& p, const std::string& name) {
      insert(s_.functionals, p, name, functional(p, name));
    });
    if (top.has("functional_pairs")) {
      for (const auto& item : top.at("functional_pairs")) {
        const Params p = top.wrap(item);
        const auto names = p.convert<std::vector<std::string>>(p.at("names"));
        if (names.size() != 2) p.fail("'names' needs exactly two entries");
        std::mt19937_64 rng(s_.seed_for("pair:" + names[0] + "," + names[1]));
        const Params g = p.child("generate");
        minpair::PairParams pp;
        pp.phi_axioms = g.get<std::size_t>("phi_axioms", pp.phi_axioms);
        pp.psi_axioms = g.get<std::size_t>("psi_axioms", pp.psi_axioms);
        pp.max_oracle_length = g.get<std::size_t>("max_oracle_length", pp.max_oracle_length);
        pp.max_output_length = g.get<std::size_t>("max_output_length", pp.max_output_length);
        pp.horizon = g.get<Stage>("horizon", pp.horizon);
        auto [phi, psi] = minpair::random_pair(rng, pp);
        insert(s_.functionals, p, names[0], std::move(phi));
        insert(s_.functionals, p, names[1], std::move(psi));
      }
    }
    each(top, "trees", [&](const Params& p, const std::string& name) { insert(s_.trees, p, name, tree(p, name)); });
    each(top, "families", [&](const Params& p, const std::string& name) {
      insert(s_.families, p, name, family(p, name));
    });
    each(top, "schemes", [&](const Params& p, const std::string& name) {
      insert(s_.schemes, p, name, scheme(p, name));
    });
    each(top, "dense_opens", [&](const Params& p, const std::string& name) {
      insert(s_.dense_opens, p, name, dense_open(p));
    });
    each(top, "demuth_tests", [&](const Params& p, const std::string& name) {
      std::mt19937_64 rng(s_.seed_for("demuth:" + name));
      insert(s_.demuth_tests, p, name, guarded(p, [&] { return demuth::random_demuth_test(rng, test_params(p)); }));
    });
    each(top, "diffunion_tests", [&](const Params& p, const std::string& name) {
      std::mt19937_64 rng(s_.seed_for("diffunion:" + name));
      insert(s_.diffunion_tests, p, name,
             guarded(p, [&] { return demuth::random_diffunion_test(rng, test_params(p)); }));
    });

    if (top.has("experiments")) {
      const YAML::Node list = top.at("experiments");
      if (!list.IsSequence()) top.fail(list, "'experiments' must be a list");
      std::set<std::string> names;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const Params p = top.wrap(list[i]);
        ExperimentSpec e;
        e.kind = p.require<std::string>("kind");
        const auto& kinds = experiment_kinds();
        if (std::find(kinds.begin(), kinds.end(), e.kind) == kinds.end())
          p.fail(p.at("kind"), "unknown experiment kind '" + e.kind + "'");
        e.name = p.get<std::string>("name", e.kind + "_" + std::to_string(i));
        if (!names.insert(e.name).second) p.fail("duplicate experiment name '" + e.name + "'");
        e.params = list[i];
        e.line = list[i].Mark().line + 1;
        s_.experiments.push_back(std::move(e));
      }
    }
  }

 private:
  template <class F>
  void each(const Params& top, const std::string& section, F&& build) {
    if (!top.has(section)) return;
    const YAML::Node list = top.at(section);
    if (!list.IsSequence()) top.fail(list, "'" + section + "' must be a list");
    for (const auto& item : list) {
      const Params p = top.wrap(item);
      build(p, p.require<std::string>("name"));
    }
  }

  template <class M, class V>
  void insert(M& map, const Params& p, const std::string& name, V&& value) {
    if (!map.emplace(name, std::forward<V>(value)).second) p.fail("duplicate name '" + name + "'");
  }

  // Library errors raised while building an object are reported at its line.
  template <class F>
  auto guarded(const Params& p, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      p.fail(e.what());
    }
  }

  Enumerator enumerator(const Params& p, const std::string& label) {
    if (p.node().IsScalar()) {
      const auto name = p.convert<std::string>(p.node());
      auto it = s_.enumerators.find(name);
      if (it == s_.enumerators.end()) p.fail("unknown enumerator '" + name + "'");
      return it->second;
    }
    return guarded(p, [&]() -> Enumerator {
      if (p.has("schedule")) {
        std::vector<std::pair<Stage, std::vector<BitString>>> schedule;
        Stage last = 0;
        for (const auto& step : p.at("schedule")) {
          const Params sp = p.wrap(step);
          const auto stage = sp.require<Stage>("stage");
          schedule.emplace_back(stage, sp.bit_list(sp.at("strings")));
          last = std::max(last, stage);
        }
        return Enumerator::from_schedule(schedule, p.get<Stage>("horizon", last));
      }
      if (p.has("generate")) {
        const Params g = p.child("generate");
        EnumeratorParams ep;
        ep.count = g.get<std::size_t>("count", ep.count);
        ep.min_length = g.get<std::size_t>("min_length", ep.min_length);
        ep.max_length = g.get<std::size_t>("max_length", ep.max_length);
        ep.horizon = p.get<Stage>("horizon", ep.horizon);
        std::mt19937_64 rng(s_.seed_for(label));
        return random_enumerator(rng, ep);
      }
      if (p.has("staircase")) {
        const Params st = p.child("staircase");
        return fireworks::staircase(st.require<std::size_t>("count"), st.get<Stage>("period", 1),
                                    st.get<Stage>("offset", 0), p.require<Stage>("horizon"));
      }
      if (p.has("strings")) return Enumerator::from_schedule({{0, p.bit_list(p.at("strings"))}}, p.get<Stage>("horizon", 0));
      if (p.node().IsMap() && p.node().size() <= 2 && p.has("horizon")) return Enumerator({}, p.require<Stage>("horizon"));
      p.fail("enumerator needs 'schedule', 'strings', 'generate' or 'staircase'");
    });
  }

  TuringFunctional functional(const Params& p, const std::string& name) {
    return guarded(p, [&]() -> TuringFunctional {
      if (p.has("axioms")) {
        std::vector<Axiom> axioms;
        Stage last = 0;
        for (const auto& a : p.at("axioms")) {
          const Params ap = p.wrap(a);
          Axiom ax{ap.require<Stage>("stage"), ap.bits(ap.at("oracle")), ap.bits(ap.at("output"))};
          last = std::max(last, ax.stage);
          axioms.push_back(std::move(ax));
        }
        return TuringFunctional(std::move(axioms), p.get<Stage>("horizon", last));
      }
      const Params g = p.child("generate");
      FunctionalParams fp;
      fp.attempts = g.get<std::size_t>("attempts", fp.attempts);
      fp.max_oracle_length = g.get<std::size_t>("max_oracle_length", fp.max_oracle_length);
      fp.max_output_length = g.get<std::size_t>("max_output_length", fp.max_output_length);
      fp.horizon = p.get<Stage>("horizon", fp.horizon);
      std::mt19937_64 rng(s_.seed_for("functional:" + name));
      return random_functional(rng, fp);
    });
  }

  TreeParams tree_params(const Params& g) {
    TreeParams tp;
    tp.depth = g.get<std::size_t>("depth", tp.depth);
    tp.removal_attempts = g.get<std::size_t>("removal_attempts", tp.removal_attempts);
    tp.min_removal_length = g.get<std::size_t>("min_removal_length", tp.min_removal_length);
    tp.max_removal_length = g.get<std::size_t>("max_removal_length", tp.max_removal_length);
    tp.horizon = g.get<Stage>("horizon", tp.horizon);
    tp.min_measure = Dyadic::inverse_pow2(g.get<std::uint64_t>("min_measure_log2", 1));
    return tp;
  }

  Pi01Tree tree(const Params& p, const std::string& name) {
    if (p.has("generate")) {
      std::mt19937_64 rng(s_.seed_for("tree:" + name));
      const TreeParams tp = tree_params(p.child("generate"));
      return guarded(p, [&] { return random_tree(rng, tp); });
    }
    const auto depth = p.require<std::size_t>("depth");
    Enumerator removals = p.has("removals") ? enumerator(p.child("removals"), "tree:" + name)
                                            : Enumerator({}, p.get<Stage>("horizon", 0));
    return guarded(p, [&] { return Pi01Tree(depth, std::move(removals)); });
  }

  coding::OpenFamily family(const Params& p, const std::string& name) {
    std::vector<StagedOpenSet> levels;
    const YAML::Node list = p.at("levels");
    for (std::size_t k = 0; k < list.size(); ++k)
      levels.emplace_back(enumerator(p.wrap(list[k]), "family:" + name + ":" + std::to_string(k)));
    return guarded(p, [&] { return coding::OpenFamily(std::move(levels)); });
  }

  coding::W2RScheme scheme(const Params& p, const std::string& name) {
    if (p.has("generate")) {
      const Params g = p.child("generate");
      coding::SchemeParams sp;
      sp.tree_depth = g.get<std::size_t>("depth", sp.tree_depth);
      sp.removal_attempts = g.get<std::size_t>("removal_attempts", sp.removal_attempts);
      sp.min_removal_length = g.get<std::size_t>("min_removal_length", sp.min_removal_length);
      sp.max_removal_length = g.get<std::size_t>("max_removal_length", sp.max_removal_length);
      sp.families = g.get<std::size_t>("families", sp.families);
      sp.levels = g.get<std::size_t>("levels", sp.levels);
      sp.strings_per_level = g.get<std::size_t>("strings_per_level", sp.strings_per_level);
      sp.max_base_length = g.get<std::size_t>("max_base_length", sp.max_base_length);
      sp.horizon = g.get<Stage>("horizon", sp.horizon);
      std::mt19937_64 rng(s_.seed_for("scheme:" + name));
      return guarded(p, [&] { return coding::random_scheme(rng, sp); });
    }
    coding::W2RScheme out;
    const auto base = p.require<std::string>("base");
    if (!s_.trees.count(base)) p.fail(p.at("base"), "unknown tree '" + base + "'");
    out.base = s_.trees.at(base);
    for (const auto& f : p.at("families")) {
      const auto fname = p.convert<std::string>(f);
      if (!s_.families.count(fname)) p.fail(f, "unknown family '" + fname + "'");
      out.families.push_back(s_.families.at(fname));
    }
    out.star = p.has("star") ? p.convert<std::vector<std::uint64_t>>(p.at("star")) : std::vector<std::uint64_t>{};
    if (!p.has("star"))
      for (std::uint64_t e = 0; e < out.families.size(); ++e) out.star.push_back(e);
    guarded(p, [&] {
      out.validate();
      return 0;
    });
    return out;
  }

  DenseOpenSpec dense_open(const Params& p) {
    if (p.has("strings")) {
      const CylinderSet c = CylinderSet::normalize(p.bit_list(p.at("strings")));
      return {c, c.str()};
    }
    const auto window = p.convert<std::vector<std::size_t>>(p.at("window"));
    if (window.size() != 2) p.fail(p.at("window"), "'window' needs [lo, hi]");
    const coding::DenseOpen d{p.bits(p.at("pattern")), window[0], window[1]};
    return guarded(p, [&] { return DenseOpenSpec{d.build(), d.describe()}; });
  }

  demuth::RandomTestParams test_params(const Params& p) {
    const Params g = p.has("generate") ? p.child("generate") : p;
    demuth::RandomTestParams rp;
    rp.levels = g.get<std::size_t>("levels", rp.levels);
    rp.max_bound = g.get<std::uint64_t>("max_bound", rp.max_bound);
    rp.depth = g.get<std::size_t>("depth", rp.depth);
    rp.horizon = g.get<Stage>("horizon", rp.horizon);
    rp.strings_per_set = g.get<std::size_t>("strings_per_set", rp.strings_per_set);
    return rp;
  }

  Scenario& s_;
  std::string source_;
};

}  // namespace

std::uint64_t Scenario::seed_for(const std::string& label) const {
  // FNV-1a of the label mixed into the scenario seed.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return std::mt19937_64(seed ^ h)();
}

Scenario parse_scenario(const std::string& text, const std::string& source, const Overrides& overrides) {
  Scenario s;
  s.source = source;
  s.overrides = overrides;
  s.name = std::filesystem::path(source).stem().string();
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (root.IsNull()) {
    if (overrides.seed) s.seed = *overrides.seed;
    return s;
  }
  if (!root.IsMap()) throw ConfigError(source + ":1: a scenario must be a mapping");
  Loader(s, source).load(root);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open scenario file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.string(), overrides);
}

}  // namespace randlab::scenario
