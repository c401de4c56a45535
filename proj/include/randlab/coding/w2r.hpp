#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "randlab/core/bitstring.hpp"
#include "randlab/core/cylinder_set.hpp"
#include "randlab/staged/pi01_tree.hpp"
#include "randlab/staged/staged_open_set.hpp"

namespace randlab::coding {

/// A uniform nested sequence of open sets U_0 ⊇ U_1 ⊇ ..., checked stage by
/// stage on construction.
class OpenFamily {
 public:
  OpenFamily() = default;
  explicit OpenFamily(std::vector<StagedOpenSet> levels);

  std::size_t size() const noexcept { return levels_.size(); }
  const StagedOpenSet& level(std::size_t k) const { return levels_.at(k); }
  const std::vector<StagedOpenSet>& levels() const noexcept { return levels_; }
  Stage horizon() const noexcept;

 private:
  std::vector<StagedOpenSet> levels_;
};

/// Stage-t approximation of the least k such that [σ] ∩ P \ U_k is nonempty;
/// nullopt when no configured level qualifies. Nondecreasing in t.
std::optional<std::size_t> g_lsc(const OpenFamily& family, const BitString& sigma, const Pi01Tree& p, Stage t);

struct W2RScheme {
  Pi01Tree base;
  std::vector<OpenFamily> families;
  /// Family index coded by the n-th codeword.
  std::vector<std::uint64_t> star;

  Stage horizon() const;
  /// Throws InvariantViolation for out-of-range star indices or removals
  /// longer than the base depth.
  void validate() const;
};

struct W2REncoding {
  BitString codeword;                 // the last nested codeword
  std::vector<BitString> codewords;   // τ_1, τ_2, ...
  std::vector<Pi01Tree> classes;      // P_0, P_1, ..., one more than codewords
  std::vector<std::size_t> levels;    // final g value chosen after each codeword
};

/// Nested coding of ξ_1..ξ_k. Throws Error if a class becomes empty above the
/// current codeword or some g is not attained by a configured level.
W2REncoding w2r_encode(const std::vector<BitString>& payloads, const W2RScheme& scheme);

/// Per codeword n: P_n misses U^{e*_n} at the chosen level and the final
/// codeword still meets P_n (exact, final stage).
std::vector<bool> avoidance(const W2REncoding& enc, const W2RScheme& scheme);

struct GammaRun {
  Stage t = 0;
  std::vector<BitString> codewords;
  std::vector<std::uint64_t> indices;
  std::vector<std::optional<std::size_t>> levels;
  BitString decoded;
};

struct GammaResult {
  std::vector<std::optional<int>> output;
  std::vector<std::optional<Stage>> defined_at;
  std::vector<GammaRun> runs;

  /// Longest prefix of the output with every position defined.
  BitString defined_prefix() const;
  std::size_t defined_count() const;
};

/// Runs the t-sub-procedures for t = 0..t_max on the finite input x. Position
/// i takes its value from the least t ≥ i whose decoded string is longer than i.
/// Inner decoding uses the final classes; only g is read at stage t.
GammaResult gamma_decode(const BitString& x, Stage t_max, const W2RScheme& scheme);

struct Stabilization {
  std::vector<Stage> per_codeword;  // least t from which g[t] is final
  Stage stage = 0;                  // max over per_codeword
};

/// Stabilization of g along the encoding of the first `count` payloads (all
/// when count is nullopt).
Stabilization stabilization_stage(const std::vector<BitString>& payloads, const W2RScheme& scheme,
                                  std::optional<std::size_t> count = std::nullopt);

struct DecodeCheck {
  BitString xi;  // concatenated payloads
  Stage stabilization = 0;
  std::size_t defined = 0;
  std::size_t undefined = 0;
  std::size_t disagreements = 0;
  std::size_t disagreements_at_or_above = 0;  // at positions ≥ stabilization
};

/// Encodes, decodes with t_max = max(|ξ|, stabilization) + 1 and compares.
DecodeCheck check_decoding(const std::vector<BitString>& payloads, const W2RScheme& scheme);

/// Open set of sequences containing `pattern` starting at a position in [lo, hi].
struct DenseOpen {
  BitString pattern;
  std::size_t lo = 0;
  std::size_t hi = 0;

  CylinderSet build() const;
  std::string describe() const;
};

/// First η (length-lex) of length ≤ depth with no extension inside u.
std::optional<BitString> density_witness(const CylinderSet& u, std::size_t depth);

/// ∩ of the shifts u_η over all η of length n.
CylinderSet common_extensions(const CylinderSet& u, std::size_t n);

struct Extension {
  std::size_t n = 0;  // max(stabilization over the given payloads, their total length)
  BitString zeta;
  BitString next_payload;  // 0^{n - |ξ_1..ξ_k|} ζ
};

/// Chooses ξ_{k+1} so that every Γ-output of an extension of E(ξ_1..ξ_{k+1})
/// lands in u. Throws InvariantViolation (with a witness) if u is not dense
/// to the required depth.
Extension extend_into_open(const std::vector<BitString>& payloads, const CylinderSet& u, const W2RScheme& scheme);

struct SchemeParams {
  std::size_t tree_depth = 128;
  std::size_t removal_attempts = 12;
  std::size_t min_removal_length = 2;
  std::size_t max_removal_length = 8;
  std::size_t families = 4;
  std::size_t levels = 3;  // the last level is always empty
  std::size_t strings_per_level = 4;
  std::size_t max_base_length = 6;
  Stage horizon = 10;
};

W2RScheme random_scheme(std::mt19937_64& rng, const SchemeParams& params);

}  // namespace randlab::coding
