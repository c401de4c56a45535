#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "randlab/scenario/scenario.hpp"

namespace sc = randlab::scenario;

namespace {

struct Options {
  std::string scenario;
  std::string out;
  std::string name;
  std::optional<std::uint64_t> seed, horizon, depth;
  std::string direction;
  std::optional<std::uint64_t> tmax;
  std::vector<std::string> dense_opens;
};

// Narrows the experiment list and applies per-command parameter overrides.
void adjust(sc::Scenario& s, Options o) {
  if (o.dense_opens.size() == 1 && std::filesystem::is_regular_file(o.dense_opens.front())) {
    const auto extra = sc::load_scenario(o.dense_opens.front(), s.overrides);
    o.dense_opens.clear();
    for (const auto& [name, d] : extra.dense_opens) {
      s.dense_opens.insert_or_assign(name, d);
      o.dense_opens.push_back(name);
    }
  }
  std::vector<sc::ExperimentSpec> kept;
  for (auto spec : s.experiments) {
    spec.params = YAML::Clone(spec.params);
    if (spec.kind == "tests_convert" && !o.direction.empty()) {
      const auto d = spec.params["direction"] ? spec.params["direction"].as<std::string>() : std::string("d2u");
      if (d != o.direction) continue;
    }
    if (spec.kind == "w2r_decode" && o.tmax) spec.params["tmax"] = *o.tmax;
    if (spec.kind == "w2r_claim2" && !o.dense_opens.empty()) spec.params["dense_opens"] = o.dense_opens;
    kept.push_back(std::move(spec));
  }
  s.experiments = std::move(kept);
}

int execute(const Options& o, const std::vector<std::string>& kinds) {
  try {
    auto s = sc::load_scenario(o.scenario, sc::Overrides{o.seed, o.horizon, o.depth});
    adjust(s, o);
    const auto run = sc::run_scenario(s, kinds, o.name);
    if (run.experiments.empty()) {
      std::cerr << "no matching experiments in " << o.scenario << "\n";
      return 2;
    }
    const auto artifacts = sc::render(run);
    for (const auto& a : artifacts)
      if (a.file == "summary.txt") std::cout << a.content;
    if (!o.out.empty()) sc::write_artifacts(artifacts, o.out);
    return run.pass() ? 0 : 1;
  } catch (const sc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const randlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staged computability experiments"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> kinds;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", o.scenario, "Scenario YAML file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "Directory for report files");
    cmd->add_option("--name", o.name, "Run only the experiment with this name");
    cmd->add_option("--seed", o.seed, "Override the scenario seed");
    cmd->add_option("--horizon", o.horizon, "Override every 'horizon' parameter");
    cmd->add_option("--depth", o.depth, "Override every 'depth' parameter");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, std::vector<std::string> ks, const std::string& help) {
    auto* cmd = parent->add_subcommand(name, help);
    common(cmd);
    cmd->callback([&kinds, ks] { kinds = ks; });
    return cmd;
  };

  leaf(&app, "run", {}, "Run every experiment of a scenario");

  auto* fw = app.add_subcommand("fireworks", "Fireworks construction")->require_subcommand(1);
  leaf(fw, "run", {"fireworks_run"}, "Single runs");
  leaf(fw, "sweep", {"fireworks_sweep"}, "Exhaustive cap sweeps");
  leaf(fw, "extract", {"fireworks_extract"}, "Failure-set extraction");

  auto* tests = app.add_subcommand("tests", "Test conversions")->require_subcommand(1);
  leaf(tests, "convert", {"tests_convert", "conversion_sweep"}, "Conversions between test kinds")
      ->add_option("--direction", o.direction, "d2u or u2d")
      ->check(CLI::IsMember({"d2u", "u2d"}));

  auto* kg = app.add_subcommand("kg", "Tree coding")->require_subcommand(1);
  leaf(kg, "encode", {"kg_encode"}, "Encode payloads");
  leaf(kg, "decode", {"kg_decode"}, "Decode codewords");
  leaf(kg, "roundtrip", {"kg_roundtrip"}, "Round-trip every short payload");

  auto* w2r = app.add_subcommand("w2r", "Layered coding")->require_subcommand(1);
  leaf(w2r, "encode", {"w2r_encode"}, "Encode payload lists");
  leaf(w2r, "decode", {"w2r_decode"}, "Run the decoder")->add_option("--tmax", o.tmax, "Decoder stage limit");
  leaf(w2r, "claim1", {"w2r_claim1"}, "Decoder error bound");
  leaf(w2r, "claim2", {"w2r_claim2"}, "Extension into dense opens")
      ->add_option("--dense-opens", o.dense_opens, "Dense open names, or a file with a dense_opens section")
      ->delimiter(',');

  auto* mp = app.add_subcommand("minpair", "Minimal pair analysis")->require_subcommand(1);
  leaf(mp, "analyze", {"minpair_analyze"}, "Case analysis and induced test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return execute(o, kinds);
}
