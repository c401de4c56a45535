#include "randlab/staged/enumerator.hpp"

#include <algorithm>
#include <unordered_set>

#include "randlab/core/error.hpp"

namespace randlab {
namespace {

void canonicalize_entries(std::vector<StagedString>& entries) {
  std::sort(entries.begin(), entries.end(), [](const StagedString& a, const StagedString& b) {
    return a.stage != b.stage ? a.stage < b.stage : a.string < b.string;
  });
  std::unordered_set<BitString> seen;
  std::vector<StagedString> kept;
  kept.reserve(entries.size());
  for (auto& e : entries) {
    if (seen.insert(e.string).second) kept.push_back(std::move(e));
  }
  entries = std::move(kept);
}

}  // namespace

Enumerator::Enumerator(std::vector<StagedString> entries, Stage horizon)
    : entries_(std::move(entries)), horizon_(horizon) {
  for (const auto& e : entries_) {
    if (e.stage > horizon_) {
      throw InvariantViolation("string " + e.string.str() + " enumerated at stage " +
                               std::to_string(e.stage) + " beyond horizon " + std::to_string(horizon_));
    }
  }
  canonicalize_entries(entries_);
}

Enumerator Enumerator::from_schedule(
    const std::vector<std::pair<Stage, std::vector<BitString>>>& schedule, Stage horizon) {
  std::vector<StagedString> entries;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (i > 0 && schedule[i].first <= schedule[i - 1].first) {
      throw InvariantViolation("schedule stages must be strictly increasing (stage " +
                               std::to_string(schedule[i].first) + " follows " +
                               std::to_string(schedule[i - 1].first) + ")");
    }
    for (const auto& s : schedule[i].second) entries.push_back({schedule[i].first, s});
  }
  return Enumerator(std::move(entries), horizon);
}

std::vector<BitString> Enumerator::enumerated(Stage s) const {
  std::vector<BitString> out;
  for (const auto& e : entries_) {
    if (e.stage > s) break;
    out.push_back(e.string);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Stage> Enumerator::first_stage(const BitString& s) const {
  for (const auto& e : entries_) {
    if (e.string == s) return e.stage;
  }
  return std::nullopt;
}

std::vector<Stage> Enumerator::change_stages() const {
  std::vector<Stage> out;
  for (const auto& e : entries_) {
    if (out.empty() || out.back() != e.stage) out.push_back(e.stage);
  }
  return out;
}

Enumerator Enumerator::delayed_until(Stage start) const {
  std::vector<StagedString> out = entries_;
  for (auto& e : out) e.stage = std::max(e.stage, start);
  return Enumerator(std::move(out), std::max(horizon_, start));
}

Enumerator merge(const Enumerator& a, const Enumerator& b) {
  std::vector<StagedString> all = a.entries_;
  all.insert(all.end(), b.entries_.begin(), b.entries_.end());
  return Enumerator(std::move(all), std::max(a.horizon_, b.horizon_));
}

BitString random_string(std::mt19937_64& rng, std::size_t length) {
  BitString out;
  for (std::size_t i = 0; i < length; ++i) out.push_back(static_cast<int>(rng() & 1u));
  return out;
}

Enumerator random_enumerator(std::mt19937_64& rng, const EnumeratorParams& params) {
  if (params.min_length > params.max_length) throw Error("random_enumerator: min_length > max_length");
  std::vector<StagedString> entries;
  for (std::size_t i = 0; i < params.count; ++i) {
    const std::size_t len = params.min_length + draw_below(rng, params.max_length - params.min_length + 1);
    const auto stage = static_cast<Stage>(draw_below(rng, std::uint64_t{params.horizon} + 1));
    entries.push_back({stage, random_string(rng, len)});
  }
  return Enumerator(std::move(entries), params.horizon);
}

}  // namespace randlab
