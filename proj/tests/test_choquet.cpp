#include <doctest.h>

#include <sstream>

#include "delone/choquet.hpp"
#include "delone/patch_io.hpp"

using namespace delone;
using namespace delone::choquet;

namespace {

IntMatrix mat(std::vector<std::vector<int>> rows) {
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("p-sequence") {
  const auto s = p_sequence(4, 2);
  // p2 = 2 * 1! * 16, p3 = 2 * 2! * 32^2
  CHECK(s.p == std::vector<BigInt>{4, 32, 4096});
  CHECK(s.r == std::vector<BigInt>{1, 2});
  CHECK(s.l(1) == 3);
  CHECK(s.q(2) == 1024);
  CHECK(p_sequence(7, 1).p.front() == 7);
  CHECK(p_sequence(std::nullopt, 1).p.front() == 4);
}

TEST_CASE("toy matrices") {
  const auto seq = toy_sequence(2, 2);
  REQUIRE(seq.A.size() == 2);
  CHECK(seq.A[0] == mat({{1, 1, 1}, {94, 94, 48}, {49, 49, 95}}));
  CHECK(seq.A[1] == mat({{1, 1, 1}, {5198, 5198, 4800}, {4801, 4801, 5199}}));
  // column sums q_{n+1}/q_n
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(seq.A[0].column_sum(j) == 144);
    CHECK(seq.A[1].column_sum(j) == 10000);
  }
  CHECK(validate_matrices(seq).all_passed());
  CHECK(ojo_holds(seq, 1));
}

TEST_CASE("validate_matrices rejects a broken column sum") {
  auto seq = toy_sequence(2, 2);
  seq.A[0](1, 2) += 1;
  CHECK_FALSE(validate_matrices(seq).all_passed());
}

TEST_CASE("separation witness against a direct product scan") {
  const auto seq = toy_sequence(2, 2);
  const auto w = find_separating_coordinates(seq, 2);
  const IntMatrix P1 = seq.A[0], P2 = seq.A[0] * seq.A[1];
  const Rational q2(seq.q(2)), q3(seq.q(3));
  auto hi = [&](const IntMatrix& P, std::size_t i, const Rational& q) -> Rational {
    return std::max(Rational(P(i, 1)), Rational(P(i, 2))) / q;
  };
  auto lo = [&](const IntMatrix& P, std::size_t i, const Rational& q) -> Rational {
    return std::min(Rational(P(i, 1)), Rational(P(i, 2))) / q;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (hi(P2, i, q3) - lo(P2, i, q3) > hi(P2, best, q3) - lo(P2, best, q3)) best = i;
  CHECK(w.i0 == best);
  CHECK(w.i0 == 1);
  CHECK(w.dbar == std::min(hi(P1, best, q2), hi(P2, best, q3)));
  CHECK(w.dbar_prime == std::max(lo(P1, best, q2), lo(P2, best, q3)));
  CHECK(w.dbar == Rational(39953, 1280000));
  CHECK(w.dbar_prime == Rational(350423, 11520000));
  CHECK(w.dbar > w.dbar_prime);
}

TEST_CASE("initial patches") {
  const auto p = build_initial_patches_v(4, 3, 2);
  REQUIRE(p.size() == 3);
  // even columns (8), odd bottom cells (2), marker (1)
  CHECK(p[0].count() == 11);
  CHECK(p[1].count() == 15);
  CHECK(p[2].count() == 11);
  CHECK_FALSE(p[0] == p[2]);
  CHECK(build_initial_patches_v(4, 3, 1)[0].count() == 15);
  CHECK_THROWS_AS(build_initial_patches_v(4, 9, 1), DomainError);
}

TEST_CASE("built levels") {
  const auto seq = toy_sequence(2, 2);
  const auto b = build_choquet_spec(seq, 2);
  CHECK(validate_levels(b, seq).all_passed());
  CHECK(validate_scheme(b.spec).all_passed());
  CHECK(block_count_matrix(b.spec, 1, 2) == seq.A[0]);
  CHECK(block_count_matrix(b.spec, 2, 3) == seq.A[1]);
  for (std::size_t k = 0; k < 3; ++k) CHECK(patch_cardinality_formula(seq, b.witness, 1, k) == b.spec.level(1).patches[k].count());
  const std::vector<std::uint64_t> lvl2{1960, 1960, 1776};
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(materialize(b.spec, 2, k).count() == lvl2[k]);
    CHECK(patch_cardinality_formula(seq, b.witness, 2, k) == lvl2[k]);
  }
  const auto [d, dp] = density_bounds(seq, b.witness);
  CHECK(d == Rational(259953, 320000));
  CHECK(dp == Rational(2330423, 2880000));
}

TEST_CASE("stripe rules") {
  for (auto r : {StripeRule::literal, StripeRule::scaled, StripeRule::square_blocks})
    CHECK(parse_stripe_rule(to_string(r)) == r);
  CHECK_THROWS_AS(parse_stripe_rule("diagonal"), DomainError);
  const auto seq = toy_sequence(2, 2);
  for (auto r : {StripeRule::scaled, StripeRule::square_blocks}) {
    const auto b = build_choquet_spec(seq, 2, r);
    CHECK(block_count_matrix(b.spec, 1, 2) == seq.A[0]);
  }
}

TEST_CASE("measure vectors") {
  const auto seq = toy_sequence(2, 2);
  for (std::size_t v = 0; v < 3; ++v) {
    const auto mu = measure_vectors(seq, 2, Terminal{Terminal::vertex, v});
    CHECK(recursion_residual(seq, mu) == 0);
    for (std::size_t n = 0; n < mu.size(); ++n) {
      Rational s = 0;
      for (const auto& x : mu[n]) s += x;
      CHECK(s * Rational(seq.q(n + 1)) == 1);
    }
  }
  CHECK_THROWS_AS(measure_vectors(seq, 2, std::vector<Rational>{1, 0, 0}), DomainError);
  auto mu = measure_vectors(seq, 2, Terminal{});
  mu[0][0] += Rational(1, 7);
  CHECK(recursion_residual(seq, mu) == Rational(1, 7));
}

TEST_CASE("finite-dimensional constructor") {
  std::vector<LevelSize> sizes{{144, 10}, {10000, 20}};
  const auto A = make_finite_dim_matrices(3, sizes);
  REQUIRE(A.size() == 2);
  for (const auto& m : A) {
    CHECK(m.rows() == 4);
    for (std::size_t j = 0; j < m.cols(); ++j) CHECK(m(0, j) == 1);
    for (std::size_t i = 0; i < m.rows(); ++i) CHECK(m(i, 0) == m(i, 1));
  }
  CHECK(A[0].column_sum(3) == 144);
  CHECK_THROWS_AS(make_finite_dim_matrices(3, {{10, 100}}), DomainError);
}

TEST_CASE("simplex description files") {
  std::stringstream s("# two vertices\nextreme_points 2\np 4 48 4800\nr 1 1\ndimension 1\n");
  const auto sp = read_simplex_spec(s);
  CHECK(sp.extreme_points == 2u);
  CHECK(sp.p == std::vector<BigInt>{4, 48, 4800});
  CHECK(sp.dimension == 1u);
  std::stringstream bad("extreme_points 2\nfoo 3\n");
  CHECK_THROWS_AS(read_simplex_spec(bad), io::ParseError);
  std::stringstream m("matrix 2 2\n1 1\n3 3\n");
  const auto ms = read_matrices(m);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0] == mat({{1, 1}, {3, 3}}));
}
