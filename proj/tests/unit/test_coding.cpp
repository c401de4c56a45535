#include <doctest.h>

#include <random>

#include "randlab/coding/kucera_gacs.hpp"
#include "randlab/coding/w2r.hpp"
#include "randlab/core/error.hpp"
#include "randlab/staged/pairing.hpp"

using namespace randlab;
using namespace randlab::coding;

namespace {

BitString bs(const char* s) { return BitString(s); }

Pi01Tree tree(std::size_t depth, std::vector<StagedString> removals, Stage horizon = 10) {
  return Pi01Tree(depth, Enumerator(std::move(removals), horizon));
}

StagedOpenSet staged(std::vector<StagedString> entries, Stage horizon = 10) {
  return StagedOpenSet(Enumerator(std::move(entries), horizon));
}

OpenFamily empty_family(std::size_t levels = 2) {
  return OpenFamily(std::vector<StagedOpenSet>(levels, staged({})));
}

std::vector<BitString> all_strings_up_to(std::size_t n) {
  std::vector<BitString> out;
  for (std::uint64_t i = 0; BitString::from_nat(i).size() <= n; ++i) out.push_back(BitString::from_nat(i));
  return out;
}

// A scheme whose first family settles at stage 7 and whose others never move.
W2RScheme settling_scheme() {
  W2RScheme s;
  s.base = Pi01Tree::full(64, 10);
  s.families.push_back(OpenFamily({staged({{7, BitString{}}}), staged({})}));
  s.families.push_back(empty_family());
  s.families.push_back(empty_family());
  s.star = {0, 1, 2};
  return s;
}

W2RScheme stable_scheme() {
  W2RScheme s;
  s.base = tree(64, {{0, bs("00")}, {0, bs("110")}});
  s.families = {empty_family(), empty_family(), empty_family()};
  s.star = {0, 1, 2};
  return s;
}

std::vector<BitString> random_payloads(std::mt19937_64& rng, std::size_t count, std::size_t max_len) {
  std::vector<BitString> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_string(rng, draw_below(rng, max_len + 1)));
  return out;
}

}  // namespace

TEST_CASE("kucera depth") {
  CHECK(kucera_depth(BitString{}, Pi01Tree::full(8), 0) == 1);
  CHECK(kucera_depth(BitString{}, tree(8, {{0, bs("0")}}), 10) == 2);
  // 0 and 1 both still have surviving extensions (01 and 11)
  CHECK(kucera_depth(BitString{}, tree(8, {{0, bs("00")}, {0, bs("10")}}), 10) == 1);
  CHECK(kucera_depth(bs("0"), tree(8, {{0, bs("00")}, {0, bs("10")}}), 10) == 3);
  CHECK(kucera_depth(bs("1"), tree(8, {{0, bs("10")}, {0, bs("110")}}), 10) == 4);
  CHECK_THROWS_AS(kucera_depth(bs("11"), Pi01Tree::full(2), 0), Error);
  CHECK_FALSE(find_kucera_depth(bs("0"), tree(8, {{0, bs("0")}}), 10));
}

TEST_CASE("kg encoding examples") {
  CHECK(kg_encode_bits(BitString{}, bs("01"), Pi01Tree::full(8)) == bs("01"));
  CHECK(kg_encode_bits(bs("0"), BitString{}, Pi01Tree::full(8)) == bs("0"));
  CHECK(kg_encode_bits(bs("1"), BitString{}, tree(8, {{0, bs("0")}})) == bs("11"));
  // payload code of "1" is 101
  CHECK(kg_encode(bs("1"), BitString{}, Pi01Tree::full(8)) == bs("101"));
  CHECK(kg_decode(bs("101"), BitString{}, Pi01Tree::full(8), 0) == bs("1"));
}

TEST_CASE("kg decoding against a late removal") {
  const Pi01Tree p = tree(8, {{5, bs("0")}});
  const auto early = kg_decode_bits(bs("10"), BitString{}, p, 0);
  CHECK((!early || *early != bs("0")));
  CHECK(early == bs("10"));
  for (Stage s = 5; s <= 12; ++s) CHECK(kg_decode_bits(bs("10"), BitString{}, p, s) == bs("0"));
  // 01 is not a survivor, so it is never an extreme
  CHECK_FALSE(kg_decode_bits(bs("01"), BitString{}, p, 10));
  // a codeword cut inside a step
  CHECK_FALSE(kg_decode(bs("1"), BitString{}, Pi01Tree::full(8), 0));
}

TEST_CASE("kg round trip, survival and prefix-freeness over random trees") {
  std::mt19937_64 rng(11);
  const auto payloads = all_strings_up_to(4);
  for (int trial = 0; trial < 50; ++trial) {
    TreeParams params;
    params.depth = 24;
    const Pi01Tree p = random_tree(rng, params);
    REQUIRE(p.class_measure(p.horizon()) >= Dyadic::inverse_pow2(1));
    std::vector<BitString> codes;
    for (const auto& xi : payloads) {
      const BitString tau = kg_encode(xi, BitString{}, p);
      CHECK(p.survives(tau, p.horizon()));
      CHECK(kg_decode(tau, BitString{}, p, p.horizon()) == xi);
      codes.push_back(tau);
    }
    for (std::size_t i = 0; i < codes.size(); ++i)
      for (std::size_t j = i + 1; j < codes.size(); ++j) CHECK_FALSE(codes[i].comparable(codes[j]));
    // relative to a non-root start as well
    const BitString sigma = kg_encode(bs("01"), BitString{}, p);
    for (const auto& xi : payloads) {
      const BitString tau = kg_encode(xi, sigma, p);
      CHECK(sigma.is_prefix_of(tau));
      CHECK(kg_decode(tau, sigma, p, p.horizon()) == xi);
    }
  }
}

TEST_CASE("g approximation examples") {
  const Pi01Tree p = Pi01Tree::full(8, 10);
  CHECK(g_lsc(empty_family(), bs("0"), p, 0) == std::size_t{0});
  const OpenFamily covered({StagedOpenSet::constant(CylinderSet::full(), 10), staged({})});
  CHECK(g_lsc(covered, bs("0"), p, 0) == std::size_t{1});
  const OpenFamily late({staged({{7, BitString{}}}), staged({})});
  for (Stage t = 0; t < 7; ++t) CHECK(g_lsc(late, bs("1"), p, t) == std::size_t{0});
  for (Stage t = 7; t <= 12; ++t) CHECK(g_lsc(late, bs("1"), p, t) == std::size_t{1});
  const OpenFamily everything({StagedOpenSet::constant(CylinderSet::full(), 10)});
  CHECK_FALSE(g_lsc(everything, bs("1"), p, 3));
  CHECK_THROWS_AS(OpenFamily({staged({{2, bs("0")}}), staged({{1, bs("00")}})}), InvariantViolation);
}

TEST_CASE("g approximation is monotone and matches a brute-force scan") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    SchemeParams params;
    params.tree_depth = 12;
    params.families = 1;
    params.levels = 4;
    const W2RScheme scheme = random_scheme(rng, params);
    const OpenFamily& family = scheme.families[0];
    const Stage last = scheme.horizon();
    for (const auto& sigma : all_strings_up_to(3)) {
      if (!scheme.base.survives(sigma, last)) continue;
      std::optional<std::size_t> prev = 0;
      for (Stage t = 0; t <= last; ++t) {
        const auto g = g_lsc(family, sigma, scheme.base, t);
        CHECK((!g || (prev && *g >= *prev)));
        prev = g;
      }
      // brute force over depth-12 strings extending sigma
      std::optional<std::size_t> brute;
      for (std::size_t k = 0; k < family.size() && !brute; ++k) {
        const std::size_t free_bits = 12 - sigma.size();
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << free_bits); ++v) {
          const BitString x = sigma + BitString::from_uint(v, free_bits);
          if (scheme.base.final_class().contains_prefix_of(x) && !family.level(k).final().contains_prefix_of(x)) {
            brute = k;
            break;
          }
        }
      }
      CHECK(g_lsc(family, sigma, scheme.base, last) == brute);
    }
  }
}

TEST_CASE("w2r encoding basics") {
  const W2RScheme scheme = stable_scheme();
  const auto empty = w2r_encode({}, scheme);
  CHECK(empty.codeword.empty());
  REQUIRE(empty.classes.size() == 1);
  CHECK(empty.classes[0].final_class() == scheme.base.final_class());
  CHECK_THROWS_AS(w2r_encode({bs("1"), bs("1"), bs("1"), bs("1")}, scheme), Error);
  W2RScheme bad = scheme;
  bad.star = {1, 0};
  CHECK_THROWS_AS(w2r_encode({}, bad), InvariantViolation);
}

TEST_CASE("w2r encoding is prefix-monotone and stays in every class") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const W2RScheme scheme = random_scheme(rng, SchemeParams{});
    const auto payloads = random_payloads(rng, 3, 4);
    BitString previous;
    for (std::size_t k = 0; k <= payloads.size(); ++k) {
      const std::vector<BitString> head(payloads.begin(), payloads.begin() + static_cast<std::ptrdiff_t>(k));
      const auto enc = w2r_encode(head, scheme);
      CHECK(previous.is_prefix_of(enc.codeword));
      previous = enc.codeword;
      for (const auto& cls : enc.classes) CHECK(cls.survives(enc.codeword, scheme.horizon()));
      for (bool ok : avoidance(enc, scheme)) CHECK(ok);
    }
  }
}

TEST_CASE("gamma decoding examples") {
  const W2RScheme stable = stable_scheme();
  CHECK(gamma_decode(BitString{}, 10, stable).defined_count() == 0);
  CHECK(gamma_decode(bs("1111111111"), 10, stable).defined_count() == 0);

  const std::vector<BitString> payloads{bs("101"), bs(""), bs("0011")};
  const auto enc = w2r_encode(payloads, stable);
  const auto out = gamma_decode(enc.codeword, 12, stable);
  CHECK(out.defined_prefix() == bs("1010011"));
  CHECK(out.output.size() == 7);
  CHECK(stabilization_stage(payloads, stable).stage == 0);
  // the first position is fixed by the 0-sub-procedure
  CHECK(out.defined_at[0] == Stage{0});
  CHECK(out.runs[3].codewords == enc.codewords);
}

TEST_CASE("gamma decoding with a late-settling family") {
  const W2RScheme scheme = settling_scheme();
  const std::vector<BitString> payloads{bs("11"), bs("0101"), bs("1")};
  const auto stab = stabilization_stage(payloads, scheme);
  CHECK(stab.per_codeword == std::vector<Stage>{7, 0, 0});
  CHECK(stab.stage == 7);
  const auto enc = w2r_encode(payloads, scheme);
  CHECK(enc.levels == std::vector<std::size_t>{1, 0, 0});
  const auto out = gamma_decode(enc.codeword, 12, scheme);
  // before stage 7 the sub-procedures stop after the first codeword
  CHECK(out.runs[3].codewords.size() == 1);
  CHECK(out.runs[3].decoded == bs("11"));
  CHECK(out.runs[7].codewords.size() == 3);
  const BitString xi = bs("1101011");
  for (std::size_t i = 7; i < xi.size(); ++i) CHECK(out.output[i] == xi[i]);
  const auto check = check_decoding(payloads, scheme);
  CHECK(check.disagreements_at_or_above == 0);
  CHECK(check.disagreements <= check.stabilization);
}

TEST_CASE("gamma error confinement over random schemes") {
  std::mt19937_64 rng(23);
  std::size_t nontrivial = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const W2RScheme scheme = random_scheme(rng, SchemeParams{});
    for (int sample = 0; sample < 4; ++sample) {
      const auto payloads = random_payloads(rng, 1 + draw_below(rng, 3), 4);
      const auto check = check_decoding(payloads, scheme);
      CHECK(check.disagreements_at_or_above == 0);
      CHECK(check.disagreements <= check.stabilization);
      CHECK(check.undefined == 0);
      if (check.stabilization > 0) ++nontrivial;
    }
  }
  CHECK(nontrivial > 0);
}

TEST_CASE("dense opens and common extensions") {
  const CylinderSet u = CylinderSet::parse("{011,111}");
  CHECK(common_extensions(u, 1).str() == "{11}");
  CHECK(common_extensions(u, 0) == u);
  CHECK(density_witness(u, 1) == std::nullopt);
  CHECK(density_witness(CylinderSet::parse("{00}"), 3) == bs("1"));
  CHECK(density_witness(CylinderSet::full(), 5) == std::nullopt);

  const DenseOpen ones{bs("1"), 0, 3};
  CHECK(ones.build().str() == "{0001,001,01,1}");
  CHECK(ones.describe() == "1@[0,3]");
  CHECK(density_witness(ones.build(), 3) == std::nullopt);
  CHECK(density_witness(ones.build(), 4) == bs("0000"));
}

TEST_CASE("extending into an open set") {
  const W2RScheme scheme = stable_scheme();
  const auto full = extend_into_open({bs("10"), bs("1")}, CylinderSet::full(), scheme);
  CHECK(full.n == 3);
  CHECK(full.zeta.empty());
  CHECK(full.next_payload.empty());

  const auto ext = extend_into_open({bs("0")}, CylinderSet::parse("{011,111}"), scheme);
  CHECK(ext.n == 1);
  CHECK(ext.next_payload == bs("11"));

  CHECK_THROWS_AS(extend_into_open({bs("0")}, CylinderSet::parse("{00}"), scheme), InvariantViolation);

  // with a late-settling family the padding reaches past the settling stage
  const auto late = extend_into_open({bs("1")}, DenseOpen{bs("11"), 0, 16}.build(), settling_scheme());
  CHECK(late.n == 7);
  CHECK(late.next_payload == bs("00000011"));
}

TEST_CASE("iterating through dense opens lands in each of them") {
  std::mt19937_64 rng(31);
  const std::vector<DenseOpen> opens{{bs("11"), 0, 16}, {bs("00"), 0, 16}, {bs("1"), 0, 24}, {bs("0"), 0, 24}};
  for (int trial = 0; trial < 10; ++trial) {
    const W2RScheme scheme = random_scheme(rng, SchemeParams{});
    std::vector<BitString> payloads;
    for (const auto& d : opens) payloads.push_back(extend_into_open(payloads, d.build(), scheme).next_payload);
    const auto enc = w2r_encode(payloads, scheme);
    const Stage t_max = static_cast<Stage>(enc.codeword.size());
    const BitString out = gamma_decode(enc.codeword, t_max, scheme).defined_prefix();
    for (const auto& d : opens) CHECK(d.build().contains_prefix_of(out));
  }
}
