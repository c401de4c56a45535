#include "randlab/fireworks/fireworks.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "randlab/core/error.hpp"
#include "randlab/staged/pairing.hpp"

namespace randlab::fireworks {
namespace {

constexpr std::uint64_t kEnumerationGuard = std::uint64_t{1} << 24;

enum class State { Idle, Passive, Waiting, Done };

// Extension of x in w at stage s: earliest stage, then shortest, then leftmost.
std::optional<BitString> find_extension(const Enumerator& w, const BitString& x, Stage s) {
  const StagedString* best = nullptr;
  for (const auto& e : w.entries()) {
    if (e.stage > s) break;
    if (!x.is_prefix_of(e.string)) continue;
    if (best == nullptr) {
      best = &e;
    } else if (e.stage == best->stage &&
               (e.string.size() < best->string.size() ||
                (e.string.size() == best->string.size() && e.string < best->string))) {
      best = &e;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->string;
}

bool has_extension(const Enumerator& w, const BitString& x, Stage s) {
  for (const auto& e : w.entries()) {
    if (e.stage > s) break;
    if (x.is_prefix_of(e.string)) return true;
  }
  return false;
}

}  // namespace

unsigned CapBound::log2(std::size_t e, std::uint64_t k) const {
  switch (kind) {
    case Kind::Default:
      return static_cast<unsigned>(e + k + 1);
    case Kind::Paired:
      return static_cast<unsigned>(cantor_pair(e, k) + 1);
    case Kind::Explicit:
      if (e >= explicit_log2.size()) throw Error("no explicit cap bound for requirement " + std::to_string(e));
      return explicit_log2[e];
  }
  return 0;
}

std::string CapBound::describe() const {
  switch (kind) {
    case Kind::Default:
      return "2^(e+k+1)";
    case Kind::Paired:
      return "2^(<e,k>+1)";
    case Kind::Explicit: {
      std::ostringstream os;
      os << "explicit[";
      for (std::size_t i = 0; i < explicit_log2.size(); ++i) os << (i ? "," : "") << (std::uint64_t{1} << explicit_log2[i]);
      os << "]";
      return os.str();
    }
  }
  return {};
}

void Config::validate() const {
  for (std::size_t e = 0; e < adversaries.size(); ++e) {
    const unsigned l = cap_bound.log2(e, k);
    if (l < 1 || l > 62) throw Error("cap bound for requirement " + std::to_string(e) + " must be in [2, 2^62]");
  }
  if (universe_depth < target_length) throw Error("universe_depth must be at least target_length");
}

bool Config::budget_covers_adversaries() const {
  return std::all_of(adversaries.begin(), adversaries.end(),
                     [this](const Enumerator& w) { return w.horizon() <= stage_budget; });
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::PassiveSuccess: return "passive_success";
    case Outcome::ActiveSuccess: return "active_success";
    case Outcome::ActiveFailure: return "active_failure";
    case Outcome::Unresolved: return "unresolved";
  }
  return {};
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::PassiveGuess: return "passive_guess";
    case EventKind::Refuted: return "refuted";
    case EventKind::ActiveBegun: return "active_begun";
    case EventKind::ActiveResolved: return "active_resolved";
    case EventKind::TimedOut: return "timed_out";
  }
  return {};
}

std::string to_string(FailureKind k) {
  switch (k) {
    case FailureKind::None: return "none";
    case FailureKind::Proven: return "proven";
    case FailureKind::Timeout: return "timeout";
  }
  return {};
}

std::string to_string(Requirement r) {
  switch (r) {
    case Requirement::MetInside: return "met_inside";
    case Requirement::MetAvoided: return "met_avoided";
    case Requirement::Unmet: return "unmet";
  }
  return {};
}

bool Run::failed() const {
  return std::any_of(requirements.begin(), requirements.end(),
                     [](const RequirementRecord& r) { return r.outcome == Outcome::ActiveFailure; });
}

std::vector<std::uint64_t> Run::caps() const {
  std::vector<std::uint64_t> out;
  for (const auto& r : requirements) out.push_back(r.cap);
  return out;
}

Run run_fireworks(const Config& cfg, const std::vector<std::uint64_t>& caps) {
  cfg.validate();
  const std::size_t count = cfg.adversaries.size();
  if (caps.size() != count) throw Error("run_fireworks: one cap per adversary required");
  for (std::size_t e = 0; e < count; ++e) {
    if (caps[e] < 1 || caps[e] > cfg.cap_limit(e)) {
      throw Error("cap " + std::to_string(caps[e]) + " for requirement " + std::to_string(e) + " outside [1, " +
                  std::to_string(cfg.cap_limit(e)) + "]");
    }
  }

  Run run;
  run.requirements.resize(count);
  for (std::size_t e = 0; e < count; ++e) run.requirements[e].cap = caps[e];
  std::vector<State> state(count, State::Idle);
  std::vector<BitString> guess(count);
  std::optional<std::size_t> waiting;
  std::uint64_t turn = 0;
  BitString& x = run.x_prefix;

  auto begin_active = [&](std::size_t e, Stage s) {
    state[e] = State::Waiting;
    waiting = e;
    run.requirements[e].active_stage = s;
    run.trace.push_back({s, e, EventKind::ActiveBegun, x});
  };
  auto try_resolve = [&](std::size_t e, Stage s) {
    if (auto tau = find_extension(cfg.adversaries[e], x, s)) {
      x = *tau;
      state[e] = State::Done;
      waiting.reset();
      run.requirements[e].outcome = Outcome::ActiveSuccess;
      run.requirements[e].resolved_stage = s;
      run.trace.push_back({s, e, EventKind::ActiveResolved, x});
    }
  };

  for (Stage s = 0; s <= cfg.stage_budget; ++s) {
    if (waiting) {
      try_resolve(*waiting, s);
      continue;
    }
    if (count > 0) {
      const auto e = static_cast<std::size_t>(turn % count);
      ++turn;
      auto& rec = run.requirements[e];
      if (state[e] == State::Idle) {
        state[e] = State::Passive;
        guess[e] = x;
        rec.passive_guesses = 1;
        run.trace.push_back({s, e, EventKind::PassiveGuess, x});
      } else if (state[e] == State::Passive && has_extension(cfg.adversaries[e], guess[e], s)) {
        run.trace.push_back({s, e, EventKind::Refuted, guess[e]});
        if (rec.passive_guesses < rec.cap) {
          guess[e] = x;
          ++rec.passive_guesses;
          run.trace.push_back({s, e, EventKind::PassiveGuess, x});
        } else {
          begin_active(e, s);
          try_resolve(e, s);
        }
      }
      if (turn % count != 0) continue;
    }
    if (!waiting && x.size() < cfg.target_length) x.push_back(0);
  }

  for (std::size_t e = 0; e < count; ++e) {
    auto& rec = run.requirements[e];
    const Enumerator& w = cfg.adversaries[e];
    switch (state[e]) {
      case State::Waiting:
        rec.outcome = Outcome::ActiveFailure;
        rec.failure = has_extension(w, x, w.horizon()) ? FailureKind::Timeout : FailureKind::Proven;
        run.halted = true;
        run.trace.push_back({cfg.stage_budget, e, EventKind::TimedOut, x});
        break;
      case State::Passive:
        rec.outcome = has_extension(w, guess[e], w.horizon()) ? Outcome::Unresolved : Outcome::PassiveSuccess;
        break;
      case State::Idle:
        rec.outcome = Outcome::Unresolved;
        break;
      case State::Done:
        break;
    }
  }
  return run;
}

std::vector<std::uint64_t> draw_caps(const Config& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> caps;
  for (std::size_t e = 0; e < cfg.adversaries.size(); ++e) caps.push_back(1 + (rng() & (cfg.cap_limit(e) - 1)));
  return caps;
}

Run run_fireworks(const Config& cfg, const CapSource& source) {
  if (const auto* seed = std::get_if<std::uint64_t>(&source)) return run_fireworks(cfg, draw_caps(cfg, *seed));
  return run_fireworks(cfg, oracle_block_caps(std::get<BitString>(source), cfg.cap_bound, cfg.k, cfg.adversaries.size()));
}

std::size_t oracle_length(const CapBound& bound, std::uint64_t k, std::size_t requirements) {
  std::size_t total = 0;
  for (std::size_t e = 0; e < requirements; ++e) total += bound.log2(e, k);
  return total;
}

std::vector<std::uint64_t> oracle_block_caps(const BitString& x, const CapBound& bound, std::uint64_t k,
                                             std::size_t requirements) {
  const std::size_t need = oracle_length(bound, k, requirements);
  if (x.size() < need) {
    throw Error("oracle of length " + std::to_string(x.size()) + " is shorter than the " + std::to_string(need) +
                " bits needed for the caps");
  }
  std::vector<std::uint64_t> caps;
  std::size_t pos = 0;
  for (std::size_t e = 0; e < requirements; ++e) {
    const unsigned l = bound.log2(e, k);
    caps.push_back(1 + x.suffix_from(pos).prefix(l).to_uint());
    pos += l;
  }
  return caps;
}

Requirement check_requirement(const std::vector<BitString>& w_final, const BitString& x, std::size_t universe_depth) {
  if (universe_depth < x.size()) throw Error("check_requirement: universe_depth below |x|");
  for (std::size_t n = 0; n <= x.size(); ++n) {
    const BitString sigma = x.prefix(n);
    if (std::find(w_final.begin(), w_final.end(), sigma) != w_final.end()) return Requirement::MetInside;
  }
  for (std::size_t n = 0; n <= x.size(); ++n) {
    const BitString sigma = x.prefix(n);
    const bool extended = std::any_of(w_final.begin(), w_final.end(), [&](const BitString& w) {
      return w.size() <= universe_depth && sigma.is_prefix_of(w);
    });
    if (!extended) return Requirement::MetAvoided;
  }
  return Requirement::Unmet;
}

Sweep sweep(const Config& cfg) {
  cfg.validate();
  const std::size_t count = cfg.adversaries.size();
  std::uint64_t total = 1;
  for (std::size_t e = 0; e < count; ++e) {
    if (cfg.cap_bound.log2(e, cfg.k) > 24 || (total *= cfg.cap_limit(e)) > kEnumerationGuard) {
      throw GuardExceeded("cap-vector enumeration exceeds the 2^24 guard");
    }
  }
  Sweep out;
  std::vector<std::uint64_t> caps(count, 1);
  std::uint64_t failures = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    const Run run = run_fireworks(cfg, caps);
    SweepRow row{caps, {}, run.failed()};
    for (const auto& r : run.requirements) row.outcomes.push_back(r.outcome);
    failures += row.failed ? 1 : 0;
    out.rows.push_back(std::move(row));
    // odometer, last requirement fastest
    for (std::size_t e = count; e-- > 0;) {
      if (++caps[e] <= cfg.cap_limit(e)) break;
      caps[e] = 1;
    }
  }
  unsigned exponent = 0;
  for (std::size_t e = 0; e < count; ++e) exponent += cfg.cap_bound.log2(e, cfg.k);
  out.failure_probability = Dyadic(BigInt(failures), exponent);
  for (std::size_t e = 0; e < count; ++e) out.bound += Dyadic::inverse_pow2(cfg.cap_bound.log2(e, cfg.k));
  return out;
}

Dyadic exact_failure_probability(const Config& cfg) { return sweep(cfg).failure_probability; }

TrichotomyReport check_trichotomy(const Config& cfg, const Sweep& s) {
  TrichotomyReport report;
  const std::size_t count = cfg.adversaries.size();
  for (std::size_t e = 0; e < count; ++e) {
    const std::uint64_t n = cfg.cap_limit(e);
    // Rows are in odometer order, so a fixing of the other caps is a set of
    // rows with stride equal to the product of later cap ranges.
    std::uint64_t stride = 1;
    for (std::size_t j = e + 1; j < count; ++j) stride *= cfg.cap_limit(j);
    const std::uint64_t block = stride * n;
    for (std::uint64_t base = 0; base < s.rows.size(); base += block) {
      for (std::uint64_t offset = 0; offset < stride; ++offset) {
        ++report.fixings_checked;
        std::vector<Outcome> column;
        for (std::uint64_t c = 0; c < n; ++c) column.push_back(s.rows[base + offset + c * stride].outcomes[e]);
        std::vector<std::uint64_t> failing;
        for (std::uint64_t c = 0; c < n; ++c) {
          if (column[c] == Outcome::ActiveFailure) failing.push_back(c);
        }
        std::string problem;
        if (failing.size() > 1) {
          problem = std::to_string(failing.size()) + " caps give active_failure";
        } else if (failing.size() == 1) {
          for (std::uint64_t c = 0; c < n && problem.empty(); ++c) {
            if (c < failing[0] && column[c] != Outcome::ActiveSuccess) {
              problem = "cap " + std::to_string(c + 1) + " below the failing cap gives " + to_string(column[c]);
            } else if (c > failing[0] && column[c] != Outcome::PassiveSuccess) {
              problem = "cap " + std::to_string(c + 1) + " above the failing cap gives " + to_string(column[c]);
            }
          }
        }
        if (!problem.empty()) {
          std::ostringstream os;
          os << "requirement " << e << ", other caps (";
          const auto& caps = s.rows[base + offset].caps;
          const char* sep = "";
          for (std::size_t j = 0; j < count; ++j) {
            if (j == e) continue;
            os << sep << caps[j];
            sep = ",";
          }
          os << "): " << problem;
          report.violations.push_back(os.str());
          report.pass = false;
        }
      }
    }
  }
  return report;
}

std::vector<FailureSet> extract_failure_sets(const Config& cfg) {
  cfg.validate();
  const std::size_t count = cfg.adversaries.size();
  const std::size_t length = oracle_length(cfg.cap_bound, cfg.k, count);
  if (length > 24) throw GuardExceeded("failure-set extraction needs more than 2^24 oracles");
  std::vector<std::vector<StagedString>> u(count), v(count);
  for (std::uint64_t value = 0; value < (std::uint64_t{1} << length); ++value) {
    const BitString x = BitString::from_uint(value, length);
    const Run run = run_fireworks(cfg, oracle_block_caps(x, cfg.cap_bound, cfg.k, count));
    for (std::size_t e = 0; e < count; ++e) {
      const auto& rec = run.requirements[e];
      if (rec.active_stage) u[e].push_back({*rec.active_stage, x});
      if (rec.outcome == Outcome::ActiveSuccess) v[e].push_back({*rec.resolved_stage, x});
    }
  }
  std::vector<FailureSet> out;
  for (std::size_t e = 0; e < count; ++e) {
    FailureSet f{StagedOpenSet(Enumerator(std::move(u[e]), cfg.stage_budget)),
                 StagedOpenSet(Enumerator(std::move(v[e]), cfg.stage_budget)), {},
                 Dyadic::inverse_pow2(cfg.cap_bound.log2(e, cfg.k))};
    f.measure = subtract(f.u.final(), f.v.final()).measure();
    out.push_back(std::move(f));
  }
  return out;
}

Dyadic combined_failure_measure(const std::vector<FailureSet>& sets) {
  CylinderSet all;
  for (const auto& f : sets) all = unite(all, subtract(f.u.final(), f.v.final()));
  return all.measure();
}

demuth::DiffUnionTest combined_failure_test(const Config& base, std::size_t levels) {
  demuth::DiffUnionTest t;
  for (std::size_t k = 0; k < levels; ++k) {
    Config cfg = base;
    cfg.k = k;
    cfg.cap_bound = CapBound{CapBound::Kind::Paired, {}};
    std::vector<demuth::DiffPair> pairs;
    for (auto& f : extract_failure_sets(cfg)) pairs.push_back({std::move(f.u), std::move(f.v)});
    t.levels.push_back(std::move(pairs));
    t.pair_bound.push_back(base.adversaries.size());
  }
  return t;
}

Enumerator staircase(std::size_t count, Stage period, Stage offset, Stage horizon) {
  std::vector<StagedString> entries;
  for (std::size_t j = 0; j < count; ++j) {
    entries.push_back({static_cast<Stage>(offset + period * j), BitString::zeros(j).with_bit(1)});
  }
  return Enumerator(std::move(entries), horizon);
}

}  // namespace randlab::fireworks
