#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "randlab/core/bitstring.hpp"

namespace randlab {

using Stage = std::uint32_t;

struct StagedString {
  Stage stage = 0;
  BitString string;

  friend bool operator==(const StagedString&, const StagedString&) = default;
};

/// A finite, stage-indexed enumeration of strings with a hard horizon.
///
/// Entries are kept sorted by (stage, string). A string enumerated twice keeps
/// its earliest stage.
class Enumerator {
 public:
  Enumerator() = default;
  Enumerator(std::vector<StagedString> entries, Stage horizon);

  /// Builds from a schedule of (stage, strings) groups. Stages must be
  /// strictly increasing and at most `horizon`.
  static Enumerator from_schedule(const std::vector<std::pair<Stage, std::vector<BitString>>>& schedule,
                                  Stage horizon);

  Stage horizon() const noexcept { return horizon_; }
  const std::vector<StagedString>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Strings enumerated by stage s (sorted, distinct).
  std::vector<BitString> enumerated(Stage s) const;
  std::vector<BitString> final_set() const { return enumerated(horizon_); }

  std::optional<Stage> first_stage(const BitString& s) const;

  /// Distinct stages at which at least one string appears.
  std::vector<Stage> change_stages() const;

  /// Same entries, every stage raised to at least `start`.
  Enumerator delayed_until(Stage start) const;

  Enumerator with_horizon(Stage horizon) const { return Enumerator(entries_, horizon); }

  /// Entries of both, keeping the earlier stage for shared strings.
  friend Enumerator merge(const Enumerator& a, const Enumerator& b);

 private:
  std::vector<StagedString> entries_;
  Stage horizon_ = 0;
};

Enumerator merge(const Enumerator& a, const Enumerator& b);

struct EnumeratorParams {
  std::size_t count = 4;
  std::size_t min_length = 1;
  std::size_t max_length = 4;
  Stage horizon = 8;
};

/// Uniformly random strings at uniformly random stages in [0, horizon].
Enumerator random_enumerator(std::mt19937_64& rng, const EnumeratorParams& params);

/// Uniform draw from [0, n) using raw engine output. Portable across standard
/// libraries, unlike std::uniform_int_distribution.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

BitString random_string(std::mt19937_64& rng, std::size_t length);

}  // namespace randlab
