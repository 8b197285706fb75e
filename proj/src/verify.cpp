#include "delone/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "delone/choquet.hpp"
#include "delone/curve.hpp"
#include "delone/matching.hpp"
#include "delone/nonrect.hpp"
#include "delone/rectifiability.hpp"
#include "delone/ue.hpp"

namespace delone::verify {

namespace {

struct Sink {
  std::string suite;
  std::vector<CheckRow>& rows;
  void add(const std::string& name, bool ok, const std::string& detail, const std::string& topic) {
    rows.push_back({suite, name, ok, detail, topic});
  }
  template <class F>
  void guard(const std::string& name, const std::string& topic, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      add(name, false, std::string("exception: ") + e.what(), topic);
    }
  }
};

nonrect::Schedule toy_schedule(std::size_t depth) {
  nonrect::Schedule s;
  s.L = {Rational(1)};
  s.depth = depth;
  return s;
}

void suite_core(Sink& out, const Options& opt) {
  out.guard("corner densities", "initial corners", [&] {
    const auto c = nonrect::initial_corners();
    const Rational a = corner_density(c[0], 4), b = corner_density(c[1], 4);
    out.add("corner densities", a == Rational(10, 16) && b == 1, to_string(a) + " " + to_string(b),
            "initial corners");
  });
  out.guard("hat extension 6L", "hat extension", [&] {
    std::mt19937_64 rng(opt.seed);
    const std::size_t n = std::min<std::size_t>(opt.trials, 50);
    std::uint64_t bad = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const CandidateMap f = random_map(rng, 9);
      bad += hat_violations(f, exact_bilip_sq(f));
    }
    out.add("hat extension 6L", bad == 0, std::to_string(n) + " maps, " + std::to_string(bad) + " violations",
            "hat extension");
  });
  out.guard("identity distortion", "distortion", [&] {
    const Rect w{0, 0, 5, 5};
    const auto pts = window_points(w);
    const CandidateMap f = lab::identity_map(pts, w);
    const auto pairs = all_pairs(pts);
    const auto rep = distortion(f, pairs);
    out.add("identity distortion", rep.bilip_constant_sq == 1, to_string(rep.bilip_constant_sq), "distortion");
  });
}

void suite_isoper(Sink& out, const Options& opt) {
  out.guard("unit square count", "isoperimetric count", [&] {
    const auto c = lab::make_curve({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto n = lab::lattice_near_curve_count(c, 1);
    out.add("unit square count", n == 12, std::to_string(n), "isoperimetric count");
  });
  out.guard("25 T length bound", "isoperimetric count", [&] {
    std::mt19937_64 rng(opt.seed);
    std::size_t bad = 0, done = 0;
    while (done < opt.trials) {
      const auto loop = random_rectilinear_loop(rng, 6, 6);
      std::vector<lab::RPoint> v;
      for (Point p : loop) v.push_back(lab::to_rpoint(p));
      const auto c = lab::make_curve(v);
      if (c.length < 4) continue;
      const std::int64_t top = static_cast<std::int64_t>(c.length);  // floor(length) >= 4
      std::uniform_int_distribution<std::int64_t> q(4, top);
      const Rational T(q(rng), 4);
      const auto n = lab::lattice_near_curve_count(c, T);
      if (static_cast<double>(n) > 25 * to_double(T) * c.length) ++bad;
      ++done;
    }
    out.add("25 T length bound", bad == 0, std::to_string(done) + " curves, " + std::to_string(bad) + " violations",
            "isoperimetric count");
  });
}

void suite_ue(Sink& out, const Options& opt) {
  out.guard("ue build", "unique ergodicity", [&] {
    const auto b = ue::build_ue_spec(toy_schedule(opt.depth));
    const Rational lim = ue::limit_density(b.spec);
    out.add("limit density 13/16", lim == Rational(13, 16), to_string(lim), "limit density");
    bool contraction = true;
    std::string detail;
    for (std::size_t lev : b.mix_levels) {
      if (lev < 3) continue;
      const Rational before = ue::offset_between(b, 1, lev - 1);
      const Rational after = ue::offset_between(b, 1, lev);
      if (after * 9 > before) contraction = false;
      detail += to_string(after / before) + " ";
    }
    out.add("mixing contraction 1/9", contraction, detail, "mixing step");
    bool direct = true;
    for (std::size_t n = 2; n <= b.spec.depth(); ++n) {
      const auto d = ue::offset_of(block_frequency_matrix(b.spec, 1, n));
      if (!d || *d != ue::offset_between(b, 1, n)) direct = false;
    }
    out.add("offset telescoping", direct, "levels 2.." + std::to_string(b.spec.depth()), "transition matrices");
    const Patch needle = Patch::full(1, 1);
    std::size_t top = 1;
    for (std::size_t n = 1; n <= b.spec.depth(); ++n)
      if (b.spec.cell_count(n) <= (std::uint64_t{1} << 22)) top = n;
    const auto rep = ue::frequency_convergence_report(b.spec, needle, 2, top);
    out.add("frequency brackets", rep.brackets_hold, "levels 2.." + std::to_string(top), "frequencies");
  });
}

void suite_hierarchy(Sink& out, const Options& opt) {
  out.guard("hierarchy", "hierarchy", [&] {
    const HierarchySpec spec = opt.spec ? *opt.spec : nonrect::build_toy_spec(toy_schedule(2)).spec;
    const auto rep = validate_scheme(spec);
    std::string failed;
    for (const auto& p : rep.properties)
      if (!p.passed) failed += p.name + ": " + p.witness + "; ";
    out.add("frame properties", rep.all_passed(), failed, "frames");
    const Patch& base = spec.level(1).patches.at(0);
    const Patch needle = base.crop(0, 0, std::min<std::int64_t>(2, base.width()), std::min<std::int64_t>(2, base.height()));
    bool same = true;
    std::string detail;
    OccurrenceCounter counter(spec, needle);
    for (std::size_t n = 1; n <= spec.depth(); ++n) {
      if (spec.cell_count(n) > (std::uint64_t{1} << 20)) break;
      for (std::size_t j = 0; j < spec.patch_count(n); ++j) {
        const Patch m = materialize(spec, n, j);
        const BigInt fast = counter.count(n, j, OccurrenceMode::sliding);
        if (fast != count_matches(m, needle)) {
          same = false;
          detail = "level " + std::to_string(n) + " patch " + std::to_string(j + 1);
        }
      }
    }
    out.add("sliding count vs scan", same, detail, "occurrence counting");
  });
}

void suite_nonrect(Sink& out, const Options&) {
  out.guard("constants", "constants", [&] {
    const BigInt p0 = nonrect::constant_p0(1, Rational(1, 100));
    out.add("P0 at L=1 eps=1/100", p0 == 10800, to_string(p0), "constants");
    const auto r2 = nonrect::expansion_constants(1, 1, Rational(10, 16));
    const Rational dd = Rational(6, 16);
    const bool ok = r2.lambda == dd * dd * dd / pow(Rational(10), 10) &&
                    r2.M_star == ceil(pow(Rational(10), 15) / (dd * dd * dd * dd));
    out.add("second estimate", ok, to_string(r2.lambda), "constants");
  });
  out.guard("toy build", "construction", [&] {
    const auto b = nonrect::build_toy_spec(toy_schedule(2));
    out.add("toy frames", validate_scheme(b.spec).all_passed(), "depth " + std::to_string(b.spec.depth()),
            "construction");
    const auto d = nonrect::level_densities(b.spec, b.spec.depth());
    out.add("density gap kept", d[1] > d[0], to_string(d[0]) + " " + to_string(d[1]), "construction");
  });
  out.guard("expansion chain", "expansion chain", [&] {
    const auto b = nonrect::build_toy_spec(toy_schedule(2));
    const std::size_t top = b.spec.depth();
    const auto fx = chain_fixture(b.spec, top, 0);
    const Point c = b.spec.frame_origin(top);
    const Rational L = 2, lambda(1, 10);
    const auto id = nonrect::expansion_chain_report(b.spec, top, lab::identity_map(fx.domain, fx.window), lambda, L);
    const auto per = nonrect::expansion_chain_report(b.spec, top, lab::scaling_map(fx.domain, fx.window, 2), lambda, L);
    const auto st = nonrect::expansion_chain_report(
        b.spec, top, lab::horizontal_stretch_map(fx.domain, fx.window, c.x, b.spec.width(1), 16), lambda, L);
    out.add("identity not flagged", !id.contradiction, to_string(id.product_sq), "expansion chain");
    out.add("periodic not flagged", !per.contradiction, to_string(per.product_sq), "expansion chain");
    out.add("stretch flagged", st.contradiction, to_string(st.product_sq), "expansion chain");
  });
}

void suite_choquet(Sink& out, const Options&) {
  out.guard("choquet", "simplex realization", [&] {
    const auto seq = choquet::toy_sequence(2, 2);
    const auto K = choquet::validate_matrices(seq);
    out.add("matrix checks", K.all_passed(), "", "matrix conditions");
    const auto b = choquet::build_choquet_spec(seq, 2);
    const auto P = choquet::validate_levels(b, seq);
    std::string failed;
    for (const auto& p : P.properties)
      if (!p.passed) failed += p.name + ": " + p.witness + "; ";
    out.add("level checks", P.all_passed(), failed, "level builder");
    bool card = true;
    for (std::size_t n = 1; n <= 2; ++n)
      for (std::size_t k = 0; k < b.spec.patch_count(n); ++k)
        if (BigInt(materialize(b.spec, n, k).count()) != choquet::patch_cardinality_formula(seq, b.witness, n, k))
          card = false;
    out.add("cardinality formula", card, "levels 1-2", "cardinalities");
    const auto [d, dp] = choquet::density_bounds(seq, b.witness);
    bool dens = d > dp;
    for (std::size_t n = 2; n <= 3; ++n) {
      const Rational q(seq.q(n));
      const auto [j, jp] = b.witness.j[n - 1];
      const Rational hi(choquet::patch_cardinality_formula(seq, b.witness, n, j));
      const Rational lo(choquet::patch_cardinality_formula(seq, b.witness, n, jp));
      if (!(hi >= q * d && q * dp >= lo)) dens = false;
    }
    out.add("density bracketing", dens, to_string(d) + " > " + to_string(dp), "cardinalities");
    const auto mu = choquet::measure_vectors(seq, 2, choquet::Terminal{});
    out.add("measure recursion", choquet::recursion_residual(seq, mu) == 0, "", "invariant measures");
  });
}

void suite_lab(Sink& out, const Options&) {
  out.guard("lab", "probe grid", [&] {
    const auto g = lab::GridSpec::make(8, 2, 2);
    const Rect w = g.rectangle();
    const auto pts = window_points(w);
    const CandidateMap id = lab::identity_map(pts, w);
    const auto viol = lab::check_no_stretch(id, g, Rational(1, 10));
    const HatMap hat = hat_extend(id);
    const auto reg = lab::find_regular_square(hat, g, Rational(1, 2));
    bool all_reg = true;
    for (const auto& m : reg.min_projection)
      if (m < reg.threshold) all_reg = false;
    const auto dev = lab::coarse_derivative_deviation(hat, g, 1);
    out.add("identity predicates", viol.empty() && all_reg && dev.max_sq == 0,
            std::to_string(viol.size()) + " violations", "probe grid");
    std::map<Point, Point> img;
    for (Point p : pts) img.emplace(p, p.x > 4 ? Point{p.x + 4, p.y} : p);
    const auto stretched = CandidateMap::make_unchecked_2z(w, img);
    const auto v2 = lab::check_no_stretch(stretched, g, Rational(1, 2));
    const bool ok = v2.size() == 3 && v2[0].x == Point{4, 0} && v2[1].x == Point{4, 4} &&
                    v2[2].x == Point{4, 8} && v2[0].y == Point{8, 0};
    out.add("single stretch witness", ok, std::to_string(v2.size()) + " violations", "probe grid");
    const auto bf = lab::brute_force_min_bilip({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, Rect{0, 0, 2, 2});
    out.add("brute force square", bf.L_sq == 1, to_string(bf.L_sq), "distortion oracle");
  });
}

using SuiteFn = std::function<void(Sink&, const Options&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"core", suite_core},       {"isoper", suite_isoper},   {"ue", suite_ue},   {"hierarchy", suite_hierarchy},
      {"nonrect", suite_nonrect}, {"choquet", suite_choquet}, {"lab", suite_lab}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    v.push_back("all");
    return v;
  }();
  return names;
}

std::vector<CheckRow> run_suite(const std::string& name, const Options& opt) {
  std::vector<CheckRow> rows;
  bool found = false;
  for (const auto& [n, f] : registry()) {
    if (name != "all" && name != n) continue;
    found = true;
    Sink s{n, rows};
    f(s, opt);
  }
  if (!found) throw DomainError("unknown suite: " + name);
  return rows;
}

void write_tsv(std::ostream& os, const std::vector<CheckRow>& rows) {
  os << "suite\tcheck\tstatus\tdetail\ttopic\n";
  for (const auto& r : rows)
    os << r.suite << '\t' << r.name << '\t' << (r.passed ? "PASS" : "FAIL") << '\t' << r.detail << '\t' << r.topic
       << '\n';
}

bool all_passed(const std::vector<CheckRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
}

CandidateMap random_map(std::mt19937_64& rng, std::int64_t max_side) {
  std::uniform_int_distribution<std::int64_t> side(1, std::max<std::int64_t>(1, max_side / 2));
  const std::int64_t w = 2 * side(rng) + 1, h = side(rng) + 1;
  const Rect win{0, 0, w, h};
  std::bernoulli_distribution coin(0.5);
  std::vector<Point> dom;
  for (Point p : window_points(win))
    if (p.x % 2 == 0 || coin(rng)) dom.push_back(p);
  static const std::int64_t mats[][4] = {{1, 0, 0, 1}, {0, -1, 1, 0}, {1, 0, 0, -1}, {1, 1, 0, 1},
                                         {1, 0, 1, 1}, {2, 0, 0, 1}, {1, 0, 0, 2}, {2, 1, 1, 1}};
  const auto& A = mats[std::uniform_int_distribution<int>(0, 7)(rng)];
  std::uniform_int_distribution<std::int64_t> shift(-5, 5);
  const Point t{shift(rng), shift(rng)};
  std::map<Point, Point> img;
  for (Point p : dom) img.emplace(p, Point{A[0] * p.x + A[1] * p.y + t.x, A[2] * p.x + A[3] * p.y + t.y});
  const int swaps = std::uniform_int_distribution<int>(0, 3)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, dom.size() - 1);
  for (int s = 0; s < swaps; ++s) {
    const Point a = dom[pick(rng)];
    const Point b = a + Point{1, 0};
    if (img.count(b)) std::swap(img[a], img[b]);
  }
  return CandidateMap::make_unchecked_2z(win, std::move(img));
}

Rational exact_bilip_sq(const CandidateMap& f) {
  const auto& m = f.images();
  std::vector<std::pair<Point, Point>> v(m.begin(), m.end());
  std::int64_t bn = 1, bd = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const std::int64_t a = norm_sq(v[i].second - v[j].second), b = norm_sq(v[i].first - v[j].first);
      const std::int64_t n = std::max(a, b), d = std::min(a, b);
      if (d == 0) throw DomainError("map is not injective");
      if (static_cast<__int128>(n) * bd > static_cast<__int128>(bn) * d) bn = n, bd = d;
    }
  return Rational(bn, bd);
}

std::uint64_t hat_violations(const CandidateMap& f, const Rational& L_sq) {
  const HatMap hat = hat_extend(f);
  std::vector<std::pair<Point, HalfPoint>> v(hat.begin(), hat.end());
  const BigInt ln = numerator(L_sq), ld = denominator(L_sq);
  if (ln > BigInt(1) << 40 || ld > BigInt(1) << 40) throw DomainError("L too large for the integer check");
  const __int128 n = static_cast<long long>(ln), d = static_cast<long long>(ld);
  std::uint64_t bad = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const HalfPoint df = v[i].second - v[j].second;
      const __int128 S = static_cast<__int128>(df.x2) * df.x2 + static_cast<__int128>(df.y2) * df.y2;
      const __int128 D = norm_sq(v[i].first - v[j].first);
      // |df|^2 = S/4 <= 36 L^2 D and D <= 36 L^2 S/4
      if (S * d > 144 * n * D || D * d > 9 * n * S) ++bad;
    }
  return bad;
}

std::vector<Point> random_rectilinear_loop(std::mt19937_64& rng, int max_step, int turns) {
  std::uniform_int_distribution<int> len(1, max_step);
  std::bernoulli_distribution neg(0.5);
  std::vector<Point> v{{0, 0}};
  Point cur{0, 0};
  for (int t = 0; t < turns; ++t) {
    const std::int64_t s = neg(rng) ? -len(rng) : len(rng);
    cur = t % 2 == 0 ? cur + Point{s, 0} : cur + Point{0, s};
    v.push_back(cur);
  }
  if (cur.x != 0) v.push_back({0, cur.y});
  if (v.back() == v.front()) v.pop_back();
  if (v.size() < 3) {
    v = {{0, 0}, {len(rng), 0}};
    v.push_back({v[1].x, len(rng)});
    v.push_back({0, v[2].y});
  }
  return v;
}

ChainFixture chain_fixture(const HierarchySpec& spec, std::size_t level, std::size_t id) {
  const Patch top = materialize(spec, level, id);
  ChainFixture fx;
  fx.domain = top.points();
  const Point o = top.origin();
  for (std::int64_t x = o.x + top.width(); x < o.x + top.width() + 2; ++x)
    for (std::int64_t y = o.y; y < o.y + top.height(); ++y) fx.domain.push_back({x, y});
  fx.window = Rect{o.x, o.y, top.width() + 2, top.height()};
  return fx;
}

}  // namespace delone::verify
