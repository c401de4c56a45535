#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "randlab/coding/w2r.hpp"
#include "randlab/core/error.hpp"
#include "randlab/demuth/tests.hpp"
#include "randlab/staged/functional.hpp"
#include "randlab/staged/pi01_tree.hpp"

namespace randlab::scenario {

/// Malformed or inconsistent scenario file; the message carries a line number.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Command-line overrides. `horizon` and `depth` replace every parameter of
/// that name in the file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> depth;
};

struct ExperimentSpec {
  std::string kind;
  std::string name;
  YAML::Node params;
  int line = 0;
};

struct DenseOpenSpec {
  CylinderSet set;
  std::string description;
};

struct Scenario {
  std::string name;
  std::string source;
  std::uint64_t seed = 0;
  Overrides overrides;

  std::map<std::string, Enumerator> enumerators;
  std::map<std::string, TuringFunctional> functionals;
  std::map<std::string, Pi01Tree> trees;
  std::map<std::string, coding::OpenFamily> families;
  std::map<std::string, coding::W2RScheme> schemes;
  std::map<std::string, DenseOpenSpec> dense_opens;
  std::map<std::string, demuth::DemuthTest> demuth_tests;
  std::map<std::string, demuth::DiffUnionTest> diffunion_tests;
  std::vector<ExperimentSpec> experiments;

  /// Per-label seed, stable under adding or reordering other objects.
  std::uint64_t seed_for(const std::string& label) const;
};

Scenario load_scenario(const std::filesystem::path& path, const Overrides& overrides = {});
Scenario parse_scenario(const std::string& text, const std::string& source, const Overrides& overrides = {});

struct Artifact {
  std::string file;
  std::string content;
};

/// Cell evidence contributed by an experiment to the interaction report.
struct Evidence {
  std::string tag;
  std::string detail;
};

struct ExperimentResult {
  std::string name;
  std::string kind;
  bool pass = true;
  std::string headline;
  std::vector<Artifact> artifacts;
  std::vector<Evidence> evidence;
};

struct ScenarioRun {
  std::string scenario;
  std::vector<ExperimentResult> experiments;
  bool pass() const;
};

const std::vector<std::string>& experiment_kinds();

/// Runs the experiments whose kind is in `kinds` (all when empty) and, if
/// `only` is set, whose name matches. Invariant violations inside an
/// experiment mark it failed and are reported in its artifacts.
ScenarioRun run_scenario(const Scenario& scenario, const std::vector<std::string>& kinds = {},
                         const std::string& only = "");

struct InteractionCell {
  std::string label = "unresolved";
  std::vector<std::string> artifacts;
};

struct InteractionReport {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<InteractionCell>> cells;

  std::string csv() const;
  std::string text() const;
};

/// Genericity labels, in report column order.
const std::vector<std::string>& interaction_columns();

/// Aggregates experiment evidence into the randomness × genericity matrix.
/// Cells stay unresolved unless some run supplies a witness.
InteractionReport emit_interaction_report(const std::vector<ExperimentResult>& runs);

/// Every report file of a run: experiment artifacts, summary and interaction.
std::vector<Artifact> render(const ScenarioRun& run);
void write_artifacts(const std::vector<Artifact>& artifacts, const std::filesystem::path& dir);

}  // namespace randlab::scenario
