#include <fstream>
#include <map>
#include <sstream>

#include "randlab/scenario/scenario.hpp"

namespace randlab::scenario {
namespace {

const std::vector<std::string> kRows{"n-random (n>=2)", "weakly 2-random", "Demuth random", "1-random"};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

}  // namespace

const std::vector<std::string>& interaction_columns() {
  static const std::vector<std::string> columns{"n-gen (n>=2)", "weakly 2-gen", "pb-gen", "1-gen"};
  return columns;
}

InteractionReport emit_interaction_report(const std::vector<ExperimentResult>& runs) {
  InteractionReport r{kRows, interaction_columns(), std::vector<std::vector<InteractionCell>>(
                                           kRows.size(), std::vector<InteractionCell>(interaction_columns().size()))};
  std::map<std::string, std::vector<std::string>> cited;
  for (const auto& run : runs)
    for (const auto& e : run.evidence)
      cited[e.tag].push_back(run.artifacts.empty() ? run.name : run.artifacts.front().file);

  auto set = [&](std::size_t row, std::size_t col, const std::string& label, std::vector<std::string> files) {
    r.cells[row][col] = {label, std::move(files)};
  };
  if (cited.count("fireworks_bound") && cited.count("conversion_valid")) {
    auto files = cited["fireworks_bound"];
    files.insert(files.end(), cited["conversion_valid"].begin(), cited["conversion_valid"].end());
    set(2, 3, "computes: consistent-with", files);
  }
  for (std::size_t col = 0; col < interaction_columns().size(); ++col) {
    const auto tag = "claim2_hit:" + interaction_columns()[col];
    if (cited.count(tag)) set(1, col, "may compute: witnessed", cited[tag]);
  }
  if (cited.count("minpair_consistent")) set(2, 2, "min pair: consistent-with", cited["minpair_consistent"]);
  return r;
}

std::string InteractionReport::csv() const {
  std::ostringstream out;
  out << "randomness,genericity,label,artifacts\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < columns.size(); ++j)
      out << csv_field(rows[i]) << ',' << csv_field(columns[j]) << ',' << csv_field(cells[i][j].label) << ','
          << csv_field(join(cells[i][j].artifacts, " ")) << '\n';
  return out.str();
}

std::string InteractionReport::text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << rows[i] << "\n";
    for (std::size_t j = 0; j < columns.size(); ++j) {
      out << "  " << columns[j] << ": " << cells[i][j].label;
      if (!cells[i][j].artifacts.empty()) out << " [" << join(cells[i][j].artifacts, ", ") << "]";
      out << "\n";
    }
  }
  return out.str();
}

std::vector<Artifact> render(const ScenarioRun& run) {
  std::vector<Artifact> out;
  std::ostringstream summary;
  summary << "scenario: " << run.scenario << "\n";
  for (const auto& e : run.experiments) {
    out.insert(out.end(), e.artifacts.begin(), e.artifacts.end());
    std::vector<std::string> files;
    for (const auto& a : e.artifacts) files.push_back(a.file);
    summary << (e.pass ? "PASS " : "FAIL ") << e.kind << ' ' << e.name << ": " << e.headline << " ["
            << join(files, ", ") << "]\n";
  }
  summary << "overall: " << (run.pass() ? "PASS" : "FAIL") << "\n";
  const auto report = emit_interaction_report(run.experiments);
  out.push_back({"summary.txt", summary.str()});
  out.push_back({"interaction.csv", report.csv()});
  out.push_back({"interaction.txt", report.text()});
  return out;
}

void write_artifacts(const std::vector<Artifact>& artifacts, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& a : artifacts) {
    std::ofstream f(dir / a.file, std::ios::binary);
    if (!f) throw Error("cannot write " + (dir / a.file).string());
    f << a.content;
  }
}

}  // namespace randlab::scenario
