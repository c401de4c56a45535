#include <doctest.h>

#include "randlab/core/error.hpp"
#include "randlab/staged/functional.hpp"
#include "randlab/staged/pairing.hpp"
#include "randlab/staged/pi01_tree.hpp"

using namespace randlab;

namespace {

BitString bs(const char* s) { return BitString(s); }
Dyadic frac(long long p, std::uint64_t k) { return Dyadic(BigInt(p), k); }

Pi01Tree tree(std::size_t depth, std::vector<StagedString> removals, Stage horizon = 10) {
  return Pi01Tree(depth, Enumerator(std::move(removals), horizon));
}

}  // namespace

TEST_CASE("enumerator schedule") {
  const auto e = Enumerator::from_schedule({{1, {bs("0")}}, {4, {bs("11"), bs("0")}}}, 6);
  CHECK(e.enumerated(0).empty());
  CHECK(e.enumerated(3) == std::vector<BitString>{bs("0")});
  CHECK(e.final_set() == std::vector<BitString>{bs("0"), bs("11")});
  CHECK(e.first_stage(bs("0")) == Stage{1});
  CHECK(e.change_stages() == std::vector<Stage>{1, 4});
  CHECK_THROWS_AS(Enumerator::from_schedule({{3, {}}, {3, {}}}, 6), InvariantViolation);
  CHECK_THROWS_AS(Enumerator::from_schedule({{7, {bs("1")}}}, 6), InvariantViolation);
}

TEST_CASE("staged open set snapshots") {
  const StagedOpenSet u(Enumerator::from_schedule({{0, {bs("00")}}, {3, {bs("01")}}, {5, {bs("000")}}}, 8));
  CHECK(u.at(0).str() == "{00}");
  CHECK(u.at(2).str() == "{00}");
  CHECK(u.at(3).str() == "{0}");
  CHECK(u.final().str() == "{0}");
  CHECK(u.growth_stages() == std::vector<Stage>{3});
  CHECK(u.starting_at(4).at(3).empty());
  CHECK(u.starting_at(4).at(4).str() == "{0}");
  const auto rebuilt = StagedOpenSet::from_snapshots(u.snapshots(), 8);
  for (Stage s = 0; s <= 8; ++s) CHECK(rebuilt.at(s) == u.at(s));
}

TEST_CASE("property: generated open sets grow with the stage") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const StagedOpenSet u(random_enumerator(rng, {8, 1, 6, 12}));
    for (Stage s = 1; s <= 12; ++s) {
      CHECK(is_subset(u.at(s - 1), u.at(s)));
      CHECK(u.measure(s - 1) <= u.measure(s));
    }
  }
}

TEST_CASE("apply functional") {
  const TuringFunctional phi({{3, bs("0"), bs("1")}}, 10);
  CHECK(phi.apply(bs("01"), 5) == bs("1"));
  CHECK(phi.apply(bs("01"), 2).empty());
  CHECK(TuringFunctional().apply(bs("0"), 0).empty());
  const TuringFunctional two({{2, bs("0"), bs("1")}, {4, bs("01"), bs("10")}}, 10);
  CHECK(two.apply(bs("011"), 4) == bs("10"));
  CHECK(two.apply(bs("011"), 3) == bs("1"));
  CHECK_THROWS_AS(TuringFunctional({{0, bs("0"), bs("1")}, {1, bs("01"), bs("0")}}, 5), InvariantViolation);
}

TEST_CASE("functional preimage") {
  const TuringFunctional psi({{0, bs("00"), bs("1")}}, 4);
  CHECK(psi.preimage(bs("1"), 4).str() == "{00}");
  CHECK(psi.preimage(bs("1"), 4).measure() == frac(1, 2));
  CHECK(psi.preimage(BitString(), 0).is_full());
  const TuringFunctional three({{0, bs("00"), bs("1")}, {0, bs("01"), bs("11")}, {0, bs("1"), bs("10")}}, 4);
  CHECK(three.preimage(bs("1"), 4).is_full());
}

TEST_CASE("property: preimage measure grows with the stage") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const TuringFunctional psi = random_functional(rng, {});
    const BitString tau = random_string(rng, 1 + rng() % 2);
    for (Stage s = 1; s <= psi.horizon(); ++s) {
      CHECK(psi.preimage(tau, s - 1).measure() <= psi.preimage(tau, s).measure());
    }
  }
}

TEST_CASE("tree survivors") {
  CHECK(Pi01Tree::full(4).survivors(BitString(), 2, 0) ==
        std::vector<BitString>{bs("00"), bs("01"), bs("10"), bs("11")});
  CHECK(tree(4, {{0, bs("1")}}).survivors(BitString(), 2, 0) == std::vector<BitString>{bs("00"), bs("01")});
  const auto staged = tree(4, {{1, bs("00")}, {3, bs("01")}});
  CHECK(staged.survivors(bs("0"), 2, 2) == std::vector<BitString>{bs("01")});
  CHECK(staged.survivors(bs("0"), 2, 3).empty());
  CHECK(staged.leftmost(BitString(), 3, 2) == bs("010"));
  CHECK(staged.rightmost(BitString(), 3, 2) == bs("111"));
}

TEST_CASE("class measure") {
  CHECK(Pi01Tree::full(4).class_measure(0) == Dyadic::one());
  CHECK(tree(4, {{0, bs("0")}}).class_measure(0) == frac(1, 1));
  CHECK(tree(4, {{0, bs("00")}, {0, bs("011")}, {0, bs("11")}}).class_measure(0) == frac(3, 3));
}

TEST_CASE("property: survivors shrink and stay prefix-closed") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Pi01Tree p = random_tree(rng, {8, 10, 1, 6, 6, Dyadic::zero()});
    for (Stage s = 1; s <= p.horizon(); ++s) {
      CHECK(p.class_measure(s) <= p.class_measure(s - 1));
      for (const auto& tau : p.survivors(BitString(), 5, s)) {
        CHECK(p.survives(tau.parent(), s));
        CHECK(p.survives(tau, s - 1));
      }
    }
    // leftmost and rightmost agree with the enumerated survivor list
    const auto all = p.survivors(BitString(), 6, p.horizon());
    if (!all.empty()) {
      CHECK(p.leftmost(BitString(), 6, p.horizon()) == all.front());
      CHECK(p.rightmost(BitString(), 6, p.horizon()) == all.back());
    }
  }
}

TEST_CASE("random trees respect the measure floor") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(random_tree(rng, {}).class_measure(8) >= frac(1, 1));
  }
}

TEST_CASE("pairing codecs") {
  CHECK(binary(0).empty());
  CHECK(binary(5) == bs("101"));
  CHECK(payload_encode(bs("01")) == bs("11001"));
  CHECK(payload_encode(BitString()) == bs("0"));
  const auto parsed = payload_decode_prefix(bs("110011"));
  REQUIRE(parsed.has_value());
  CHECK(parsed->payload == bs("01"));
  CHECK(parsed->consumed == 5);
  CHECK_FALSE(payload_decode_prefix(bs("1100")).has_value());
  CHECK(tuple_encode(2, bs("11")) == bs("1101011"));
  for (std::uint64_t a = 0; a < 40; ++a) {
    const auto back = tuple_decode(tuple_encode(a, bs("0110")));
    REQUIRE(back.has_value());
    CHECK(back->first == a);
    CHECK(back->second == bs("0110"));
  }
  CHECK(cantor_pair(0, 0) == 0);
  CHECK(cantor_pair(1, 0) == 1);
  CHECK(cantor_pair(0, 1) == 2);
  CHECK(cantor_pair(2, 1) == 7);
}
