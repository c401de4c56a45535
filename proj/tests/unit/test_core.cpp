#include <doctest.h>

#include <random>
#include <set>

#include "randlab/core/cylinder_set.hpp"
#include "randlab/core/error.hpp"

using namespace randlab;

namespace {

BitString bs(const char* s) { return BitString(s); }
CylinderSet cs(const char* s) { return CylinderSet::parse(s); }
Dyadic frac(long long p, std::uint64_t k) { return Dyadic(BigInt(p), k); }

// Measure by counting the length-`depth` strings with a prefix in `c`.
Dyadic brute_measure(const CylinderSet& c, std::size_t depth) {
  long long hits = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << depth); ++v) {
    if (c.contains_prefix_of(BitString::from_uint(v, depth))) ++hits;
  }
  return Dyadic(BigInt(hits), depth);
}

std::vector<BitString> random_strings(std::mt19937_64& rng, std::size_t max_len) {
  std::vector<BitString> out(rng() % 6);
  for (auto& s : out) {
    const std::size_t len = rng() % (max_len + 1);
    for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<int>(rng() & 1u));
  }
  return out;
}

}  // namespace

TEST_CASE("bitstring basics") {
  CHECK(bs("^").empty());
  CHECK(BitString().str() == "^");
  CHECK(bs("01").is_prefix_of(bs("0110")));
  CHECK_FALSE(bs("01").is_prefix_of(bs("00")));
  CHECK(BitString().is_prefix_of(bs("1")));
  CHECK_FALSE(bs("01").comparable(bs("00")));
  CHECK(bs("0110").prefix(2) == bs("01"));
  CHECK(bs("01").sibling() == bs("00"));
  CHECK_THROWS_AS(bs("012"), Error);
}

TEST_CASE("length-lex index round-trips") {
  CHECK(BitString().nat() == 0);
  CHECK(bs("0").nat() == 1);
  CHECK(bs("1").nat() == 2);
  CHECK(bs("00").nat() == 3);
  CHECK(bs("11").nat() == 6);
  for (std::uint64_t i = 0; i < 2000; ++i) CHECK(BitString::from_nat(i).nat() == i);
}

TEST_CASE("dyadic canonical form and arithmetic") {
  CHECK(frac(2, 2) == frac(1, 1));
  CHECK(frac(2, 2).str() == "1/2^1");
  CHECK(Dyadic().str() == "0/2^0");
  CHECK(frac(-4, 3).str() == "-1/2^1");
  CHECK(frac(1, 2) + frac(1, 2) == frac(1, 1));
  CHECK(frac(1, 1) - frac(3, 2) == frac(-1, 2));
  CHECK(frac(3, 3) * frac(1, 1) == frac(3, 4));
  CHECK(frac(1, 3) < frac(1, 2));
  CHECK(frac(-1, 3) > frac(-1, 2));
  CHECK(frac(3, 2).scaled(2) == Dyadic(3));
  CHECK(frac(1, 2).compare_rational(1, 5) == std::strong_ordering::greater);
  CHECK(frac(1, 2).compare_rational(2, 8) == std::strong_ordering::equal);
}

TEST_CASE("normalize") {
  CHECK(CylinderSet{bs("0"), bs("00")} == cs("{0}"));
  CHECK(CylinderSet{bs("0"), bs("1")}.is_full());
  const CylinderSet c{bs("01"), bs("10"), bs("11")};
  CHECK(c.str() == "{01,1}");
  CHECK(c.measure() == frac(3, 2));
  CHECK(CylinderSet{bs("000"), bs("001"), bs("01"), bs("1")}.is_full());
  CHECK(cs("{}").empty());
  CHECK(CylinderSet::full().str() == "{^}");
}

TEST_CASE("measure") {
  CHECK(CylinderSet::full().measure() == Dyadic::one());
  CHECK(CylinderSet().measure() == Dyadic::zero());
  CHECK(cs("{00,01,1}").measure() == Dyadic::one());
}

TEST_CASE("conditional measure") {
  CHECK(CylinderSet::full().conditional_measure(bs("0101")) == Dyadic::one());
  CHECK(CylinderSet().conditional_measure(bs("0")) == Dyadic::zero());
  CHECK(cs("{00}").conditional_measure(bs("0")) == frac(1, 1));
  CHECK(cs("{0}").conditional_measure(bs("01")) == Dyadic::one());
}

TEST_CASE("boolean operations") {
  CHECK(unite(cs("{0}"), cs("{1}")).is_full());
  CHECK(intersect(cs("{0}"), cs("{00,11}")) == cs("{00}"));
  const CylinderSet d = subtract(CylinderSet::full(), cs("{01}"));
  CHECK(d.str() == "{00,1}");
  CHECK(d.measure() == frac(3, 2));
  CHECK(subtract(cs("{0}"), cs("{0}")).empty());
  CHECK(subtract(cs("{00}"), cs("{0}")).empty());
  CHECK(complement(CylinderSet()).is_full());
  CHECK(is_subset(cs("{010}"), cs("{01}")));
  CHECK(disjoint(cs("{0}"), cs("{1}")));
}

TEST_CASE("prefix queries") {
  CHECK(cs("{01}").contains_prefix_of(bs("0110")));
  CHECK_FALSE(cs("{01}").contains_prefix_of(bs("00")));
  CHECK(CylinderSet::full().contains_prefix_of(BitString()));
  CHECK(cs("{0110}").meets(bs("01")));
  CHECK_FALSE(cs("{0110}").meets(bs("00")));
  CHECK(cs("{0110,1}").restrict_to(bs("01")) == cs("{0110}"));
  CHECK(cs("{0110,1}").shifted_by(bs("01")) == cs("{10}"));
  CHECK(cs("{0110,1}").shifted_by(bs("10")).is_full());
}

TEST_CASE("parse and print round-trip") {
  for (const char* text : {"{}", "{^}", "{00,1}", "{0010,011,11}"}) {
    CHECK(cs(text).str() == text);
  }
}

TEST_CASE("property: algebra laws on random sets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto raw_a = random_strings(rng, 8);
    const auto raw_b = random_strings(rng, 8);
    const CylinderSet a = CylinderSet::normalize(raw_a);
    const CylinderSet b = CylinderSet::normalize(raw_b);
    CHECK(unite(a, b).measure() + intersect(a, b).measure() == a.measure() + b.measure());
    CHECK(subtract(a, b).measure() == a.measure() - intersect(a, b).measure());
    CHECK(CylinderSet::normalize(a.antichain()) == a);
    auto reversed = raw_a;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(CylinderSet::normalize(reversed) == a);
    CHECK(a.measure() == brute_measure(a, 8));
    CHECK(subtract(a, b).measure() == brute_measure(subtract(a, b), 8));
    CHECK(unite(subtract(a, b), intersect(a, b)) == a);
    CHECK(complement(complement(a)) == a);
  }
}
