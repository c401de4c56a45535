#include "randlab/staged/staged_open_set.hpp"

#include <algorithm>
#include <unordered_set>

#include "randlab/core/error.hpp"

namespace randlab {

StagedOpenSet::StagedOpenSet(Enumerator enumerator) : enumerator_(std::move(enumerator)) {
  CylinderSet current;
  snapshots_.emplace_back(0, current);
  const auto& entries = enumerator_.entries();
  std::size_t i = 0;
  while (i < entries.size()) {
    const Stage stage = entries[i].stage;
    std::vector<BitString> batch;
    for (; i < entries.size() && entries[i].stage == stage; ++i) batch.push_back(entries[i].string);
    CylinderSet next = unite(current, CylinderSet::normalize(std::move(batch)));
    if (next == current) continue;
    current = std::move(next);
    if (stage == 0) {
      snapshots_.front().second = current;
    } else {
      snapshots_.emplace_back(stage, current);
    }
  }
}

StagedOpenSet StagedOpenSet::constant(const CylinderSet& c, Stage horizon) {
  std::vector<StagedString> entries;
  for (const auto& s : c.antichain()) entries.push_back({0, s});
  return StagedOpenSet(Enumerator(std::move(entries), horizon));
}

StagedOpenSet StagedOpenSet::from_snapshots(const std::vector<std::pair<Stage, CylinderSet>>& snapshots,
                                            Stage horizon) {
  std::vector<StagedString> entries;
  std::unordered_set<BitString> emitted;
  const CylinderSet* previous = nullptr;
  Stage previous_stage = 0;
  for (const auto& [stage, set] : snapshots) {
    if (previous != nullptr) {
      if (stage <= previous_stage) throw InvariantViolation("snapshot stages must be strictly increasing");
      if (!is_subset(*previous, set)) {
        throw InvariantViolation("snapshot at stage " + std::to_string(stage) + " shrinks the open set");
      }
    }
    for (const auto& s : set.antichain()) {
      if (emitted.insert(s).second) entries.push_back({stage, s});
    }
    previous = &set;
    previous_stage = stage;
  }
  return StagedOpenSet(Enumerator(std::move(entries), horizon));
}

const CylinderSet& StagedOpenSet::at(Stage s) const {
  auto it = std::upper_bound(snapshots_.begin(), snapshots_.end(), s,
                             [](Stage v, const auto& snap) { return v < snap.first; });
  return std::prev(it)->second;
}

std::vector<Stage> StagedOpenSet::growth_stages() const {
  std::vector<Stage> out;
  for (std::size_t i = 1; i < snapshots_.size(); ++i) out.push_back(snapshots_[i].first);
  return out;
}

}  // namespace randlab
