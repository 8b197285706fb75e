#include <doctest.h>

#include <random>

#include "delone/nonrect.hpp"
#include "delone/ue.hpp"

using namespace delone;

namespace {

nonrect::Schedule toy(std::size_t depth) {
  nonrect::Schedule s;
  s.depth = depth;
  return s;
}

}  // namespace

TEST_CASE("thirds and n_min") {
  const auto [a, b] = nonrect::thirds(Rational(5, 8), Rational(1));
  CHECK(a == Rational(3, 4));
  CHECK(b == Rational(7, 8));
  // 2 max(1, 8, 8) = 16
  CHECK(nonrect::n_min(2, Rational(5, 8), 1, Rational(3, 4), Rational(7, 8)) == 16);
  // 2 max(50, 8, 8) = 100
  CHECK(nonrect::n_min(100, Rational(5, 8), 1, Rational(3, 4), Rational(7, 8)) == 100);
}

TEST_CASE("growth condition") {
  // 1.1^14 = 3.797..., 1.1^15 = 4.177...
  CHECK_FALSE(nonrect::growth_condition_holds(2, Rational(1, 10), 14));
  CHECK(nonrect::growth_condition_holds(2, Rational(1, 10), 15));
  CHECK(nonrect::ell_min(2, Rational(1, 10)) == 40);
  CHECK(nonrect::growth_condition_holds(3, Rational(1, 1000000), BigInt(9000000)));
}

TEST_CASE("P0 reference values") {
  // Lh = 6: max(4 * 1296, 3 * 36 / eps)
  CHECK(nonrect::constant_p0(1, Rational(1, 100)) == 10800);
  CHECK(nonrect::constant_p0(1, Rational(1, 1000)) == 108000);
  CHECK(nonrect::constant_p0(1, 1) == 5184);
}

TEST_CASE("alternating arrangement") {
  const Arrangement a = nonrect::alternating_arrangement(3, 2, 0, 1);
  REQUIRE(a.rows() == 15);
  for (std::int64_t c = 0; c < 15; ++c) {
    const std::uint32_t want = (c / 3) % 2 == 1 ? 1U : 0U;
    CHECK(a.at(0, c) == want);
    CHECK(a.at(2, c) == want);
    CHECK(a.at(3, c) == 0);
  }
  CHECK(a.histogram(2) == std::vector<std::uint64_t>{225 - 18, 18});
}

TEST_CASE("toy construction") {
  const auto b = nonrect::build_toy_spec(toy(2));
  CHECK(validate_scheme(b.spec).all_passed());
  CHECK(b.steps.size() == 2);
  const auto d1 = nonrect::level_densities(b.spec, 1);
  CHECK(d1 == std::vector<Rational>{Rational(5, 8), Rational(1)});
  const auto top = nonrect::level_densities(b.spec, b.spec.depth());
  CHECK(top[0] < top[1]);
  CHECK(b.steps[0].d1p == Rational(3, 4));
}

TEST_CASE("even block factor is rejected") {
  HierarchySpec spec(nonrect::initial_corners());
  CHECK_THROWS_AS(nonrect::append_step(spec, 2, 1, ""), DomainError);
}

TEST_CASE("rigorous plan stays symbolic") {
  nonrect::Schedule s = toy(1);
  s.rigorous = true;
  const auto plan = nonrect::build_rigorous_plan(s);
  REQUIRE(plan.steps.size() == 1);
  const auto& st = plan.steps[0];
  CHECK(st.m % 2 == 1);
  CHECK(st.N % 2 == 0);
  CHECK(nonrect::growth_condition_holds(st.L, st.expansion.lambda, st.ell));
  CHECK(plan.ledger().find("lambda") != std::string::npos);
}

TEST_CASE("delta product against matrix multiplication") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(0, 50), den(100, 200);
  for (int t = 0; t < 200; ++t) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    const auto off = ue::offset_of(ue::mix_matrix(a) * ue::mix_matrix(b));
    REQUIRE(off);
    CHECK(*off == ue::delta_product(a, b));
  }
  CHECK(ue::delta_product(Rational(1, 18), Rational(1, 18)) == Rational(1, 162));
  CHECK_THROWS_AS(ue::delta_product(Rational(3, 4), 0), DomainError);
}

TEST_CASE("offset and uniform distance") {
  RatMatrix m(2, 2, Rational(1, 2));
  CHECK(ue::offset_of(m) == Rational(0));
  m(0, 1) = Rational(1, 3);
  CHECK_FALSE(ue::offset_of(m));
  CHECK(ue::distance_to_uniform(ue::mix_matrix(Rational(1, 10))) == Rational(1, 10));
}

TEST_CASE("uniquely ergodic toy") {
  const auto b = ue::build_ue_spec(toy(2));
  CHECK(validate_scheme(b.spec).all_passed());
  CHECK(ue::limit_density(b.spec) == Rational(13, 16));
  // 3x3 grid with five of one kind: 5/9 = 1/2 + 1/18
  for (std::size_t lev : b.mix_levels) CHECK(b.deltas[lev - 2] == Rational(1, 18));
  const auto rep = ue::frequency_convergence_report(b.spec, Patch::full(1, 1), 2, b.spec.depth());
  CHECK(rep.brackets_hold);
  CHECK(rep.spread_shrinks);
  CHECK(rep.spread.back() < rep.spread.front());
}
