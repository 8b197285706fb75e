// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "delone/choquet.hpp"
#include "delone/curve.hpp"
#include "delone/matching.hpp"
#include "delone/nonrect.hpp"
#include "delone/rectifiability.hpp"
#include "delone/ue.hpp"
#include "delone/verify.hpp"
#include "oracles.hpp"

using namespace delone;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body,
               double limit_s = 0) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s > limit_s) out.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit_s) + " s");
  if (!out.ok) ++failures;
  std::printf("criterion %2d %s  %s  [%.3f s]%s%s\n", id, out.ok ? "PASS" : "FAIL", title.c_str(), s,
              out.detail.empty() ? "" : "  ", out.detail.c_str());
  std::fflush(stdout);
}

nonrect::Schedule toy(std::size_t depth) {
  nonrect::Schedule s;
  s.depth = depth;
  return s;
}

Rational rnd_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> num(0, 1000), den(1, 1000);
  Rational q(num(rng), den(rng));
  while (q > Rational(1, 2)) q /= 2;
  return q;
}

struct ConstRow {
  const char *L, *eps;
  int P;
  const char *d, *dp, *lambda1, *M0, *N0, *lambda2, *M_star, *N_star, *P0, *ell;
};

// frozen from an exact fraction oracle
const ConstRow kConstTable[] = {
    {"1/1", "1/100", 1, "1/1", "5/8", "1/1080000", "5400000", "10800002", "27/5120000000000", "50567901234567902", "505679012346", "10800", "189629629630"},
    {"2/1", "1/10", 3, "3/4", "1/2", "1/129600", "2332800", "4147202", "1/81920000000000", "524288000000000000000", "2621440000000000", "82944", "327680000000000"},
    {"3/2", "1/3", 2, "7/8", "3/8", "1/4374", "48114", "85295", "1/1366875000000", "1383960937500000000", "9226406250000", "26244", "3075468750000"},
    {"5/1", "1/1000", 7, "1/2", "1/4", "1/18900000000", "1190700000000", "3137400000002", "1/50000000000000000", "12500000000000000000000000", "25000000000000000000", "3240000", "1250000000000000000"},
    {"1/1", "1/1", 1, "1/1", "1/16", "1/108", "540", "1082", "27/327680000000", "1294538271604939", "12945382717", "5184", "12136296297"},
    {"4/3", "2/5", 5, "9/10", "1/10", "1/6000", "160000", "136002", "2187/320000000000000", "57805099719442046", "433538247896", "16384", "260122948738"},
    {"10/1", "1/7", 11, "13/16", "5/8", "1/5821200", "896464800", "3632428802", "27/409600000000000000000", "80908641975308641975308641976", "80908641975308641975309", "51840000", "1517037037037037037038"},
    {"6/5", "3/100", 4, "2/3", "1/3", "1/691200", "14376960", "12883970", "1/967458816000", "601836780257280000", "5015306502144", "10750", "1393140695040"},
    {"2/1", "1/2", 1, "1/1", "1/2", "1/1728", "10368", "48386", "1/10240000000000", "32768000000000000000", "163840000000000", "82944", "40960000000000"},
    {"7/4", "1/20", 9, "5/6", "1/6", "1/1190700", "61618725", "45693115", "128/217145126953125", "2386621626958251000", "13637837868333", "48621", "5195366806984"},
    {"3/1", "1/4", 6, "3/5", "2/5", "1/93312", "3919104", "6345218", "1/2733750000000000", "110716875000000000000000", "369056250000000000", "419904", "24603750000000000"},
};

struct BruteRow {
  std::vector<Point> points;
  Rect box;
  const char* L_sq;
  std::vector<Point> images;
};

// frozen from an exhaustive permutation oracle
const std::vector<BruteRow> kBruteTable{
    {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 0, 2, 2}, "1", {{0, 0}, {0, 1}, {1, 0}, {1, 1}}},
    {{{0, 0}, {2, 0}, {4, 0}}, {0, 0, 3, 1}, "4", {{0, 0}, {1, 0}, {2, 0}}},
    {{{0, 0}, {3, 0}, {0, 3}, {3, 3}}, {0, 0, 2, 2}, "9", {{0, 0}, {0, 1}, {1, 0}, {1, 1}}},
    {{{0, 0}, {1, 0}, {2, 0}, {0, 2}, {2, 2}}, {0, 0, 3, 2}, "4", {{0, 0}, {0, 1}, {1, 0}, {2, 1}, {2, 0}}},
    {{{0, 0}, {5, 0}, {0, 1}}, {0, 0, 2, 2}, "25", {{0, 0}, {0, 1}, {1, 0}}},
    {{{0, 0}, {1, 1}, {2, 2}, {3, 3}}, {0, 0, 2, 2}, "9", {{0, 0}, {0, 1}, {1, 0}, {1, 1}}},
    {{{0, 0}, {2, 1}, {1, 3}, {4, 2}, {3, 0}}, {0, 0, 3, 2}, "10", {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 1}}},
    {{{0, 0}, {1, 0}, {3, 0}, {4, 0}, {0, 2}, {4, 2}},
     {0, 0, 3, 3},
     "4",
     {{0, 1}, {0, 0}, {2, 0}, {2, 1}, {0, 2}, {2, 2}}},
};

}  // namespace

int main() {
  criterion(1, "corner densities 16/16 and 10/16", [](Outcome& o) {
    const auto c = nonrect::initial_corners();
    const Rational sparse = corner_density(c[0], 4), full = corner_density(c[1], 4);
    if (full != Rational(16, 16)) o.fail("full corner " + to_string(full));
    if (sparse != Rational(10, 16)) o.fail("sparse corner " + to_string(sparse));
  }, 0.001);

  criterion(2, "limit density 13/16 and window density inside the bracket", [](Outcome& o) {
    const auto b = ue::build_ue_spec(toy(3));
    const Rational lim = ue::limit_density(b.spec);
    if (lim != Rational(13, 16)) o.fail("limit " + to_string(lim));
    std::size_t top = 1;
    for (std::size_t n = 1; n <= b.spec.depth(); ++n)
      if (b.spec.cell_count(n) <= (std::uint64_t{1} << 24)) top = n;
    const auto rep = ue::frequency_convergence_report(b.spec, Patch::full(1, 1), 1, top);
    if (!rep.brackets_hold) o.fail("recursive densities leave the bracket");
    for (std::size_t j = 0; j < 2; ++j) {
      const Patch w = materialize(b.spec, top, j);
      const Rational dens(static_cast<std::int64_t>(w.count()), static_cast<std::int64_t>(w.cell_count()));
      for (const auto& r : rep.rows) {
        if (r.level != top || r.patch != j) continue;
        if (dens != r.density) o.fail("materialized density differs at patch " + std::to_string(j + 1));
        if (!r.bracket_lo || !r.bracket_hi || dens < *r.bracket_lo || dens > *r.bracket_hi)
          o.fail("density " + to_string(dens) + " outside the bracket");
      }
    }
    o.detail = "level " + std::to_string(top) + " side " + std::to_string(b.spec.width(top));
  }, 10);

  criterion(3, "offset contracts by 1/9 per mixing step, n <= 6", [](Outcome& o) {
    const auto b = ue::build_ue_spec(toy(3));
    std::vector<Rational> direct(7);
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto d = ue::offset_of(block_frequency_matrix(b.spec, 1, n));
      if (!d) {
        o.fail("A(1->" + std::to_string(n) + ") lost the symmetric form");
        return;
      }
      direct[n] = *d;
      if (*d != ue::offset_between(b, 1, n)) o.fail("telescoped offset differs at n=" + std::to_string(n));
    }
    int steps = 0;
    for (std::size_t lev : b.mix_levels) {
      if (lev < 3 || lev > 6) continue;
      ++steps;
      if (direct[lev] * 9 > direct[lev - 1]) o.fail("no 1/9 contraction into level " + std::to_string(lev));
    }
    if (steps == 0) o.fail("no mixing step in range");
    o.detail = std::to_string(steps) + " mixing steps checked";
  });

  criterion(4, "delta_product on 10^4 random rational pairs", [](Outcome& o) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10000 && o.ok; ++t) {
      const Rational a = rnd_rational(rng), b = rnd_rational(rng);
      const RatMatrix prod = ue::mix_matrix(a) * ue::mix_matrix(b);
      const auto off = ue::offset_of(prod);
      const Rational got = ue::delta_product(a, b);
      if (!off || *off != got || got != 2 * a * b) o.fail("pair " + to_string(a) + ", " + to_string(b));
    }
  });

  criterion(5, "constant calculators match the fixture table", [](Outcome& o) {
    std::size_t rows = 0;
    for (const auto& r : kConstTable) {
      ++rows;
      const Rational L = parse_rational(r.L), eps = parse_rational(r.eps);
      const Rational d = parse_rational(r.d), dp = parse_rational(r.dp);
      const auto c1 = nonrect::rectification_constants(L, eps, r.P);
      const auto c2 = nonrect::expansion_constants(L, d, dp);
      const std::string tag = "row " + std::to_string(rows);
      if (c1.lambda != parse_rational(r.lambda1)) o.fail(tag + " lambda first estimate");
      if (c1.M0 != BigInt(r.M0) || c1.N0 != BigInt(r.N0)) o.fail(tag + " M0/N0");
      if (c2.lambda != parse_rational(r.lambda2)) o.fail(tag + " lambda second estimate");
      if (c2.M_star != BigInt(r.M_star) || c2.N_star != BigInt(r.N_star)) o.fail(tag + " M*/N*");
      if (nonrect::constant_p0(L, eps) != BigInt(r.P0)) o.fail(tag + " P0");
      const BigInt ell = nonrect::ell_min(L, c2.lambda);
      if (ell != BigInt(r.ell)) o.fail(tag + " ell");
      if (L > 1 && !nonrect::growth_condition_holds(L, c2.lambda, ell)) o.fail(tag + " growth condition");
    }
    o.detail = std::to_string(rows) + " parameter sets";
  });

  criterion(6, "hat extension is 6L-bi-Lipschitz on 200 random maps", [](Outcome& o) {
    std::mt19937_64 rng(6);
    std::uint64_t bad = 0;
    for (int t = 0; t < 200; ++t) {
      const CandidateMap f = verify::random_map(rng, 19);
      if (f.window().width > 20 || f.window().height > 20) o.fail("window too large");
      const Rational L_sq = oracle::bilip_sq(f);
      if (L_sq != verify::exact_bilip_sq(f)) o.fail("bi-Lipschitz constant mismatch");
      bad += oracle::hat_violations(f, L_sq);
    }
    if (bad) o.fail(std::to_string(bad) + " violating pairs");
  });

  criterion(7, "isoperimetric count <= 25 T length on 1000 closed polylines", [](Outcome& o) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coord(-12, 12), nv(3, 8);
    std::size_t done = 0, bad = 0;
    while (done < 1000) {
      std::vector<lab::RPoint> v;
      if (done % 2 == 0) {
        for (Point p : verify::random_rectilinear_loop(rng, 8, 6)) v.push_back(lab::to_rpoint(p));
      } else {
        const int n = nv(rng);
        for (int i = 0; i < n; ++i) v.push_back(lab::to_rpoint(Point{coord(rng), coord(rng)}));
      }
      const auto c = lab::make_curve(v);
      if (c.vertices.size() < 2 || c.length < 4) continue;
      std::uniform_int_distribution<std::int64_t> q(4, static_cast<std::int64_t>(c.length));
      const Rational T(q(rng), 4);
      const std::uint64_t n = lab::lattice_near_curve_count(c, T);
      if (done < 100 && n != lab::lattice_near_curve_count_naive(c, T)) o.fail("count differs from the naive scan");
      if (static_cast<double>(n) > 25 * to_double(T) * c.length) ++bad;
      ++done;
    }
    if (bad) o.fail(std::to_string(bad) + " violations");
  }, 30);

  criterion(8, "recursive counts equal materialized scans up to 2^24 cells", [](Outcome& o) {
    std::vector<std::pair<std::string, HierarchySpec>> specs;
    specs.emplace_back("nonrect", nonrect::build_toy_spec(toy(2)).spec);
    specs.emplace_back("ue", ue::build_ue_spec(toy(3)).spec);
    specs.emplace_back("choquet", choquet::build_choquet_spec(choquet::toy_sequence(2, 2), 2).spec);
    std::size_t checked = 0;
    for (const auto& [name, spec] : specs) {
      const Patch& base = spec.level(1).patches.at(0);
      std::vector<Patch> sliding{Patch::full(1, 1), base.crop(1, 1, 2, 2), base.crop(0, 0, 3, 3)};
      std::vector<Patch> block(spec.level(1).patches.begin(), spec.level(1).patches.end());
      std::vector<OccurrenceCounter> sc, bc;
      for (const auto& n : sliding) sc.emplace_back(spec, n);
      for (const auto& n : block) bc.emplace_back(spec, n);
      for (std::size_t lev = 1; lev <= spec.depth(); ++lev) {
        if (spec.cell_count(lev) > (std::uint64_t{1} << 24)) break;
        for (std::size_t j = 0; j < spec.patch_count(lev); ++j) {
          const Patch hay = materialize(spec, lev, j);
          for (std::size_t s = 0; s < sliding.size(); ++s)
            if (sc[s].count(lev, j, OccurrenceMode::sliding) != oracle::scan_sliding(hay, sliding[s]))
              o.fail(name + " sliding level " + std::to_string(lev));
          for (std::size_t s = 0; s < block.size(); ++s)
            if (bc[s].count(lev, j, OccurrenceMode::block_aligned) != oracle::scan_aligned(hay, block[s]))
              o.fail(name + " block level " + std::to_string(lev));
          ++checked;
        }
      }
    }
    o.detail = std::to_string(checked) + " level patches";
  });

  criterion(9, "probe predicates: identity, single stretch, naive oracles", [](Outcome& o) {
    const auto g = lab::GridSpec::make(8, 2, 2);
    const Rect w = g.rectangle();
    const auto pts = window_points(w);
    const CandidateMap id = lab::identity_map(pts, w);
    const HatMap hid = hat_extend(id);
    if (!lab::check_no_stretch(id, g, Rational(1, 10)).empty()) o.fail("identity has stretched steps");
    const auto reg = lab::find_regular_square(hid, g, Rational(1, 2));
    for (const auto& m : reg.min_projection)
      if (m < reg.threshold) o.fail("identity has an irregular square");
    if (reg.k_star != 1) o.fail("identity regular square is not k=1");
    if (lab::coarse_derivative_deviation(hid, g, 1).max_sq != 0) o.fail("identity deviation nonzero");

    std::map<Point, Point> img;
    for (Point p : pts) img.emplace(p, p.x > 4 ? Point{p.x + 4, p.y} : p);
    const auto st = lab::check_no_stretch(CandidateMap::make_unchecked_2z(w, img), g, Rational(1, 2));
    const bool exact = st.size() == 3 && st[0].x == Point{4, 0} && st[0].y == Point{8, 0} &&
                       st[1].x == Point{4, 4} && st[2].x == Point{4, 8} && st[0].ratio_sq == 4 &&
                       st[0].bound_sq == Rational(729, 256);
    if (!exact) o.fail("single stretch witness differs");

    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
      const auto [gs, f] = oracle::random_grid_map(rng);
      const Rational lambda(1, 1 + t % 5), tau(1, 2 + t % 3);
      const auto fast = lab::check_no_stretch(f, gs, lambda);
      const auto slow = oracle::stretched_steps(f, gs, lambda);
      if (fast.size() != slow.size()) {
        o.fail("stretch scan size differs on map " + std::to_string(t));
        continue;
      }
      for (std::size_t i = 0; i < fast.size(); ++i)
        if (fast[i].x != slow[i].first || fast[i].y != slow[i].second) o.fail("stretch witness differs");
      const HatMap hat = hat_extend(f);
      const auto r = lab::find_regular_square(hat, gs, tau);
      if (r.k_star != oracle::regular_square(f, gs, tau)) o.fail("regular square differs on map " + std::to_string(t));
      for (std::int64_t k = 1; k <= 2 * gs.N - 1; ++k)
        if (lab::coarse_derivative_deviation(hat, gs, k).max_sq != oracle::deviation_sq(f, gs, k))
          o.fail("deviation differs on map " + std::to_string(t));
    }
  });

  criterion(10, "choquet structure: level and matrix checks, cardinalities, measures, bracketing", [](Outcome& o) {
    const auto seq = choquet::toy_sequence(2, 2);
    const auto K = choquet::validate_matrices(seq);
    for (const auto& p : K.properties)
      if (!p.passed) o.fail(p.name + ": " + p.witness);
    const auto b = choquet::build_choquet_spec(seq, 2);
    const auto P = choquet::validate_levels(b, seq);
    for (const auto& p : P.properties)
      if (!p.passed) o.fail(p.name + ": " + p.witness);
    for (std::size_t n = 1; n < b.spec.depth(); ++n)
      if (block_count_matrix(b.spec, n, n + 1) != seq.A[n - 1]) o.fail("block counts differ from A_" + std::to_string(n));
    for (std::size_t n = 1; n <= 2; ++n)
      for (std::size_t k = 0; k < b.spec.patch_count(n); ++k)
        if (BigInt(materialize(b.spec, n, k).count()) != choquet::patch_cardinality_formula(seq, b.witness, n, k))
          o.fail("cardinality at level " + std::to_string(n));
    const std::size_t e = seq.k.front() - 1;
    for (std::size_t v = 0; v <= e; ++v) {
      const choquet::Terminal t{v < e ? choquet::Terminal::vertex : choquet::Terminal::barycenter, v};
      if (choquet::recursion_residual(seq, choquet::measure_vectors(seq, 2, t)) != 0) o.fail("measure residual");
    }
    const auto [d, dp] = choquet::density_bounds(seq, b.witness);
    if (!(d > dp)) o.fail("d <= d'");
    for (std::size_t n = 2; n <= 3; ++n) {
      const Rational q(seq.q(n));
      const auto [j, jp] = b.witness.j[n - 1];
      const Rational hi(choquet::patch_cardinality_formula(seq, b.witness, n, j));
      const Rational lo(choquet::patch_cardinality_formula(seq, b.witness, n, jp));
      if (hi < q * d || lo > q * dp) o.fail("bracketing at level " + std::to_string(n));
    }
    o.detail = "d = " + to_string(d) + ", d' = " + to_string(dp);
  });

  criterion(11, "finite repetitivity for r in {1,2,4}, checked by exhaustive scan", [](Outcome& o) {
    std::vector<std::pair<std::string, Patch>> windows;
    windows.emplace_back("nonrect", materialize(nonrect::build_toy_spec(toy(3)).spec, 4, 0));
    windows.emplace_back("ue", materialize(ue::build_ue_spec(toy(2)).spec, 4, 0));
    const auto ch = choquet::build_choquet_spec(choquet::toy_sequence(2, 2), 2);
    windows.emplace_back("choquet", render_region(ch.spec, 3, 0, Rect{0, 96, 192, 192}));
    std::string detail;
    for (const auto& [name, w] : windows)
      for (std::int64_t r : {1, 2, 4}) {
        const auto R = estimate_repetitivity(w, r);
        if (!R) {
          o.fail(name + " r=" + std::to_string(r) + " has no finite R");
          continue;
        }
        if (!oracle::all_windows_complete(w, r, *R) || (*R > r && oracle::all_windows_complete(w, r, *R - 1)))
          o.fail(name + " r=" + std::to_string(r) + " R=" + std::to_string(*R) + " rejected by the scan");
        detail += name + ":" + std::to_string(r) + "->" + std::to_string(*R) + " ";
      }
    if (o.ok) o.detail = detail;
  });

  criterion(12, "expansion chains flag stretches only; brute-force fixtures", [](Outcome& o) {
    const auto b = nonrect::build_toy_spec(toy(2));
    const std::size_t top = b.spec.depth();
    const auto fx = verify::chain_fixture(b.spec, top, 0);
    const Point c = b.spec.frame_origin(top);
    const Rational L = 2, lambda(1, 10);
    auto report = [&](const CandidateMap& f) { return nonrect::expansion_chain_report(b.spec, top, f, lambda, L); };
    if (report(lab::identity_map(fx.domain, fx.window)).contradiction) o.fail("identity flagged");
    if (report(lab::scaling_map(fx.domain, fx.window, 2)).contradiction) o.fail("periodic scaling flagged");
    for (std::int64_t s : {8, 16, 32}) {
      const auto r = report(lab::horizontal_stretch_map(fx.domain, fx.window, c.x, b.spec.width(1), s));
      if (!r.contradiction || !(r.product_sq > L * L * L * L)) o.fail("stretch factor " + std::to_string(s) + " not flagged");
    }
    for (const auto& row : kBruteTable) {
      const auto got = lab::brute_force_min_bilip(row.points, row.box);
      if (got.L_sq != parse_rational(row.L_sq) || got.images != row.images) o.fail("brute-force fixture differs");
    }
    o.detail = std::to_string(kBruteTable.size()) + " fixtures";
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
