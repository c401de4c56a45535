#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "randlab/core/cylinder_set.hpp"
#include "randlab/demuth/tests.hpp"
#include "randlab/staged/enumerator.hpp"
#include "randlab/staged/staged_open_set.hpp"

namespace randlab::fireworks {

/// The cap bound N(e,k). Always a power of two >= 2.
struct CapBound {
  enum class Kind { Default, Paired, Explicit };

  Kind kind = Kind::Default;
  /// Exponents per requirement for Kind::Explicit: N(e,k) = 2^{explicit_log2[e]}.
  std::vector<unsigned> explicit_log2;

  /// log2 N(e,k): e+k+1, ⟨e,k⟩+1, or the configured exponent.
  unsigned log2(std::size_t e, std::uint64_t k) const;
  std::uint64_t operator()(std::size_t e, std::uint64_t k) const { return std::uint64_t{1} << log2(e, k); }
  std::string describe() const;
};

struct Config {
  std::vector<Enumerator> adversaries;
  std::uint64_t k = 2;
  CapBound cap_bound;
  /// Simulation steps 0..stage_budget. Budgets below an adversary's horizon
  /// can turn a late answer into a timeout.
  Stage stage_budget = 16;
  std::size_t target_length = 8;
  /// "No extension" in check_requirement is judged among strings up to this length.
  std::size_t universe_depth = 12;

  void validate() const;
  /// The outcome trichotomy is only guaranteed when this holds.
  bool budget_covers_adversaries() const;
  std::uint64_t cap_limit(std::size_t e) const { return cap_bound(e, k); }
};

using CapSource = std::variant<std::uint64_t, BitString>;

enum class Outcome { PassiveSuccess, ActiveSuccess, ActiveFailure, Unresolved };
enum class FailureKind { None, Proven, Timeout };
enum class EventKind { PassiveGuess, Refuted, ActiveBegun, ActiveResolved, TimedOut };

std::string to_string(Outcome o);
std::string to_string(EventKind k);
std::string to_string(FailureKind k);

struct Event {
  Stage stage = 0;
  std::size_t requirement = 0;
  EventKind kind = EventKind::PassiveGuess;
  /// Prefix of X the event concerns (the guess, or the new prefix on resolution).
  BitString prefix;
};

struct RequirementRecord {
  Outcome outcome = Outcome::Unresolved;
  std::uint64_t cap = 0;
  std::uint64_t passive_guesses = 0;
  std::optional<Stage> active_stage;
  std::optional<Stage> resolved_stage;
  FailureKind failure = FailureKind::None;
};

struct Run {
  BitString x_prefix;
  std::vector<RequirementRecord> requirements;
  std::vector<Event> trace;
  bool halted = false;

  bool failed() const;
  std::vector<std::uint64_t> caps() const;
};

/// Runs the construction with the given caps (one per adversary).
Run run_fireworks(const Config& cfg, const std::vector<std::uint64_t>& caps);
Run run_fireworks(const Config& cfg, const CapSource& source);

/// Caps drawn uniformly from [1, N(e,k)] with a seeded mt19937_64.
std::vector<std::uint64_t> draw_caps(const Config& cfg, std::uint64_t seed);

/// Blocks of log2 N(e,k) bits, in requirement order: cap = 1 + block value.
std::vector<std::uint64_t> oracle_block_caps(const BitString& x, const CapBound& bound, std::uint64_t k,
                                             std::size_t requirements);
std::size_t oracle_length(const CapBound& bound, std::uint64_t k, std::size_t requirements);

enum class Requirement { MetInside, MetAvoided, Unmet };
std::string to_string(Requirement r);

Requirement check_requirement(const std::vector<BitString>& w_final, const BitString& x,
                              std::size_t universe_depth);

struct SweepRow {
  std::vector<std::uint64_t> caps;
  std::vector<Outcome> outcomes;
  bool failed = false;
};

struct Sweep {
  std::vector<SweepRow> rows;
  Dyadic failure_probability;
  /// Σ_e 1/N(e,k).
  Dyadic bound;
};

/// Every cap vector in Π_e [1, N(e,k)], in lexicographic order.
/// Refuses (GuardExceeded) beyond 2^24 vectors.
Sweep sweep(const Config& cfg);
Dyadic exact_failure_probability(const Config& cfg);

struct TrichotomyReport {
  bool pass = true;
  std::size_t fixings_checked = 0;
  std::vector<std::string> violations;
};

/// For each e and each fixing of the other caps: at most one cap gives
/// ActiveFailure, smaller caps give ActiveSuccess, larger give PassiveSuccess.
TrichotomyReport check_trichotomy(const Config& cfg, const Sweep& s);

struct FailureSet {
  StagedOpenSet u;  // oracles whose strategy makes an active guess
  StagedOpenSet v;  // ... and whose active guess is answered
  Dyadic measure;   // μ(U \ V)
  Dyadic bound;     // 1/N(e,k)
};

/// Runs every oracle of length oracle_length(); guard 2^24 oracles.
std::vector<FailureSet> extract_failure_sets(const Config& cfg);

/// μ of ∪_e (U_e \ V_e).
Dyadic combined_failure_measure(const std::vector<FailureSet>& sets);

/// Difference test whose level k collects the failure sets of the
/// construction run with parameter k, for k in [0, levels), using the
/// paired cap bound N(e,k) = 2^{⟨e,k⟩+1}.
demuth::DiffUnionTest combined_failure_test(const Config& base, std::size_t levels);

/// Adversary that enumerates 0^j 1 at stage offset + period*j for j < count.
Enumerator staircase(std::size_t count, Stage period, Stage offset, Stage horizon);

}  // namespace randlab::fireworks
