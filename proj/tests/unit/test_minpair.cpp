#include <doctest.h>

#include <random>

#include "randlab/core/error.hpp"
#include "randlab/minpair/minpair.hpp"

using namespace randlab;
using namespace randlab::minpair;

namespace {

BitString bs(const char* s) { return BitString(s); }

// Family for σ=0 appears at stage 5; Ψ overloads the first candidate at stage 9.
TuringFunctional scripted_phi() { return TuringFunctional({{0, bs("01"), bs("0")}, {5, bs("00"), bs("1")}}, 12); }
TuringFunctional scripted_psi() { return TuringFunctional({{9, bs("0"), bs("0")}, {9, bs("1"), bs("00")}}, 12); }

}  // namespace

TEST_CASE("find_family examples") {
  CHECK_FALSE(find_family(TuringFunctional({}, 10), BitString{}, 10));
  const auto single = find_family(TuringFunctional({{2, bs("0"), bs("1")}}, 10), BitString{}, 10);
  REQUIRE(single);
  CHECK(single->pairs.size() == 1);
  CHECK(single->pairs[0] == std::make_pair(bs("0"), bs("1")));
  CHECK(single->found_at == 2);

  const TuringFunctional phi = scripted_phi();
  CHECK_FALSE(find_family(phi, bs("0"), 4));
  const auto fam = find_family(phi, bs("0"), 5);
  REQUIRE(fam);
  CHECK(fam->found_at == 5);
  CHECK(fam->n == 1);
  CHECK(fam->pairs == std::vector<std::pair<BitString, BitString>>{{bs("01"), bs("0")}, {bs("00"), bs("1")}});
  // an oracle at or below σ is witnessed by σ0
  const auto low = find_family(TuringFunctional({{0, BitString{}, bs("1")}}, 4), BitString{}, 4);
  REQUIRE(low);
  CHECK(low->pairs[0].first == bs("0"));
  CHECK_THROWS_AS(find_family(phi, BitString::from_nat(17), 5), GuardExceeded);
}

TEST_CASE("f approximation examples") {
  const TuringFunctional phi = scripted_phi();
  const auto none = f_approx(TuringFunctional({}, 8), TuringFunctional({}, 8), bs("1"));
  CHECK(none.mind_changes() == 0);
  for (Stage s = 0; s <= 8; ++s) CHECK(none.value_at(s) == bs("1"));

  const auto quiet = f_approx(phi, TuringFunctional({}, 12), bs("0"));
  CHECK(quiet.final_index() == std::size_t{0});
  CHECK(quiet.final_value() == bs("01"));

  const auto fa = f_approx(phi, scripted_psi(), bs("0"));
  CHECK(fa.value_at(4) == bs("0"));
  CHECK(fa.value_at(5) == bs("01"));
  CHECK(fa.value_at(8) == bs("01"));
  CHECK(fa.value_at(9) == bs("00"));
  CHECK(fa.mind_changes() == 2);
  CHECK(fa.mind_changes() <= 2);
  CHECK(fa.index_history == std::vector<std::pair<Stage, std::size_t>>{{5, 0}, {9, 1}});
  CHECK(f_value(phi, scripted_psi(), bs("0"), 12) == bs("00"));
}

TEST_CASE("induced demuth levels") {
  const auto none = induced_demuth_level(TuringFunctional({}, 8), TuringFunctional({}, 8), bs("0"));
  CHECK(none.version_count() == 1);
  CHECK(none.final_set().empty());

  const auto level = induced_demuth_level(scripted_phi(), scripted_psi(), bs("0"));
  REQUIRE(level.version_count() == 3);
  CHECK(level.versions()[1].first == 5);
  CHECK(level.versions()[2].first == 9);
  CHECK(level.at(8).empty());
  CHECK(level.versions()[1].second.final() == CylinderSet::full());
  CHECK(level.final_set().empty());

  const auto test = induced_demuth_test(scripted_phi(), scripted_psi(), 5);
  CHECK(test.version_bound == std::vector<std::uint64_t>{2, 3, 5, 9, 17});
  CHECK(demuth::verify_demuth(test).pass);
}

TEST_CASE("isolated path analysis") {
  const auto line = isolated_path_analysis(
      Enumerator({{0, BitString{}}, {0, bs("0")}, {1, bs("00")}, {2, bs("000")}}, 4), 1);
  CHECK(line.hypothesis);
  CHECK(line.max_antichain == 1);
  REQUIRE(line.branches.size() == 1);
  CHECK(line.branches[0].onset == 0);

  std::vector<StagedString> full;
  for (std::uint64_t i = 0; BitString::from_nat(i).size() <= 3; ++i) full.push_back({0, BitString::from_nat(i)});
  const auto bushy = isolated_path_analysis(Enumerator(full, 0), 3);
  CHECK(bushy.max_antichain == 8);
  CHECK_FALSE(bushy.hypothesis);
  CHECK(bushy.branches.empty());

  const auto fork = isolated_path_analysis(
      Enumerator({{0, BitString{}}, {0, bs("0")}, {0, bs("1")}, {0, bs("00")}, {0, bs("10")}, {0, bs("100")}}, 0), 2);
  CHECK(fork.hypothesis);
  CHECK(fork.max_antichain == 2);
  CHECK(fork.pass);
  for (const auto& b : fork.branches) CHECK(b.onset == 1);

  CHECK_THROWS_AS(isolated_path_analysis(Enumerator({{0, bs("01")}}, 0), 1), Error);
}

TEST_CASE("case classification") {
  const auto c1 = classify_case(TuringFunctional({}, 6), TuringFunctional({}, 6), bs("0110"), bs("1"), 2);
  CHECK(c1.kind == Case::One);
  CHECK(c1.sigma == bs("01"));
  REQUIRE(c1.isolation);
  CHECK(c1.isolation->max_antichain == 0);

  const auto c2 = classify_case(scripted_phi(), scripted_psi(), bs("001"), bs("1"), 1);
  CHECK(c2.kind == Case::Two);
  CHECK(c2.tau == bs("1"));
  CHECK(c2.f_on_path);
  CHECK_FALSE(c2.x_in_level);
  CHECK(c2.phi_output == bs("1"));
  CHECK(c2.psi_output == bs("00"));
  CHECK(c2.disagreement == std::size_t{0});
  CHECK(to_string(c2.kind) == "case2");
}

TEST_CASE("random pairs: mind changes, pigeonhole, induced tests, case soundness") {
  std::mt19937_64 rng(41);
  std::size_t families = 0, switches = 0, case_two = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto [phi, psi] = random_pair(rng, PairParams{});
    for (std::uint64_t n = 0; n <= 4; ++n) {
      const BitString sigma = BitString::from_nat(n);
      const FApprox fa = f_approx(phi, psi, sigma);
      CHECK(fa.mind_changes() <= (std::uint64_t{1} << n));
      if (fa.family) {
        ++families;
        CHECK(fa.final_index().has_value());
        CHECK(psi.preimage(fa.family->pairs[*fa.final_index()].second, fa.horizon).measure() <=
              Dyadic::inverse_pow2(n));
        for (const auto& [s_i, t_i] : fa.family->pairs) CHECK(sigma.is_proper_prefix_of(s_i));
        if (fa.index_history.size() > 1) ++switches;
      }
    }
    CHECK(demuth::verify_demuth(induced_demuth_test(phi, psi, 5)).pass);

    const BitString g = random_string(rng, 8);
    const BitString x = random_string(rng, 8);
    for (std::size_t n = 0; n <= 2; ++n) {
      const CaseReport r = classify_case(phi, psi, g, x, n);
      if (r.kind == Case::One) {
        REQUIRE(r.isolation);
        if (r.isolation->hypothesis) CHECK(r.isolation->pass);
        continue;
      }
      ++case_two;
      const bool phi_covers = r.tau.is_prefix_of(phi.apply(r.f_value, phi.horizon()));
      if (!r.x_in_level && phi_covers && r.f_on_path && r.psi_output.size() >= r.tau.size()) {
        REQUIRE(r.disagreement.has_value());
        CHECK(*r.disagreement < r.tau.size());
      }
    }
  }
  CHECK(families > 50);
  CHECK(switches > 0);
  CHECK(case_two > 0);
}
