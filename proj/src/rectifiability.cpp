#include "delone/rectifiability.hpp"

#include <cmath>

namespace delone::lab {

namespace {

Rational dot(HalfPoint a, HalfPoint b) { return Rational(a.x2 * b.x2 + a.y2 * b.y2, 4); }

HalfPoint hat_at(const HatMap& fhat, Point p) {
  auto it = fhat.find(p);
  if (it == fhat.end()) throw DomainError("point " + to_string(p) + " outside the extended map");
  return it->second;
}

Point baseline(const CandidateMap& f, const GridSpec& g) {
  const Point v = f.baseline_vector(g.M, g.N);
  if (v.x == 0 && v.y == 0) throw DomainError("degenerate baseline vector");
  return v;
}

HalfPoint hat_baseline(const HatMap& fhat, const GridSpec& g) {
  const HalfPoint v = hat_at(fhat, {g.length(), 0}) - hat_at(fhat, {0, 0});
  if (v.x2 == 0 && v.y2 == 0) throw DomainError("degenerate baseline vector");
  return v;
}

void check_k(std::int64_t k, std::int64_t hi) {
  if (k < 1 || k > hi) throw DomainError("square index k=" + std::to_string(k) + " outside [1, " + std::to_string(hi) + "]");
}

}  // namespace

GridSpec GridSpec::make(std::int64_t M, std::int64_t N, std::int64_t P) {
  if (M <= 0 || N <= 0 || P <= 0) throw DomainError("M, N, P must be positive");
  if (M % P != 0) throw DomainError("P must divide M");
  return {M, N, P};
}

Point probe_point(const GridSpec& g, std::int64_t k, std::int64_t i, std::int64_t j) {
  return {(k - 1) * g.M + i * g.step(), j * g.step()};
}

std::vector<ProbePoint> probe_points(const GridSpec& g, std::int64_t k, bool with_extra) {
  check_k(k, 2 * g.N);
  std::vector<ProbePoint> out;
  const std::int64_t imax = with_extra ? g.P + 1 : g.P;
  for (std::int64_t j = 0; j <= g.P; ++j)
    for (std::int64_t i = 0; i <= imax; ++i) out.push_back({i, j, probe_point(g, k, i, j)});
  return out;
}

std::vector<StepCheck> probe_steps(const CandidateMap& f, const GridSpec& g, const Rational& lambda) {
  if (lambda <= 0) throw DomainError("lambda must be positive");
  const Point v = baseline(f, g);
  const Rational len = g.length();
  const Rational bound_sq = (1 + lambda) * (1 + lambda) * Rational(norm_sq(v)) / (len * len);
  std::vector<StepCheck> out;
  for (std::int64_t k = 1; k <= 2 * g.N; ++k)
    for (std::int64_t j = 0; j <= g.P; ++j)
      for (std::int64_t i = 0; i <= g.P; ++i) {
        const Point x = probe_point(g, k, i, j);
        if (!f.in_domain(x)) continue;
        StepCheck s{k, i, j, x, probe_point(g, k, i + 1, j), false, 0, bound_sq};
        if (!f.in_domain(s.y)) {
          s.y = s.y + Point{1, 0};
          s.shifted = true;
          if (!f.in_domain(s.y)) continue;
        }
        s.ratio_sq = Rational(norm_sq(f(s.y) - f(x))) / Rational(norm_sq(s.y - x));
        out.push_back(s);
      }
  return out;
}

std::vector<StepCheck> check_no_stretch(const CandidateMap& f, const GridSpec& g, const Rational& lambda) {
  std::vector<StepCheck> out;
  for (auto& s : probe_steps(f, g, lambda))
    if (s.ratio_sq > s.bound_sq) out.push_back(s);
  return out;
}

RegularSquareResult find_regular_square(const HatMap& fhat, const GridSpec& g, const Rational& tau) {
  if (tau <= 0 || tau >= 1) throw DomainError("tau must lie in (0, 1)");
  const HalfPoint v = hat_baseline(fhat, g);
  RegularSquareResult res;
  res.threshold = (1 - tau) * norm_sq(v) / Rational(g.length());
  for (std::int64_t k = 1; k <= 2 * g.N - 1; ++k) {
    Rational lo;
    bool first = true;
    for (const auto& pp : probe_points(g, k)) {
      const HalfPoint d = hat_at(fhat, pp.x + Point{g.M, 0}) - hat_at(fhat, pp.x);
      const Rational proj = dot(d, v) / Rational(g.M);
      if (first || proj < lo) lo = proj;
      first = false;
    }
    res.min_projection.push_back(lo);
    if (!res.k_star && lo >= res.threshold) res.k_star = k;
  }
  return res;
}

double Deviation::value() const { return std::sqrt(to_double(max_sq)); }

Deviation coarse_derivative_deviation(const HatMap& fhat, const GridSpec& g, std::int64_t k_star) {
  check_k(k_star, 2 * g.N - 1);
  const HalfPoint v = hat_baseline(fhat, g);
  Deviation dev;
  bool first = true;
  for (const auto& pp : probe_points(g, k_star)) {
    const HalfPoint d = hat_at(fhat, pp.x + Point{g.M, 0}) - hat_at(fhat, pp.x);
    // (2N d - v) / 2MN
    const HalfPoint w{2 * g.N * d.x2 - v.x2, 2 * g.N * d.y2 - v.y2};
    const Rational len = g.length();
    const Rational e = norm_sq(w) / (len * len);
    if (first || e > dev.max_sq) {
      dev.max_sq = e;
      dev.witness = pp.x;
    }
    first = false;
  }
  return dev;
}

std::int64_t corner_count(const CandidateMap& f, const GridSpec& g, std::int64_t k) {
  check_k(k, 2 * g.N);
  std::int64_t c = 0;
  for (std::int64_t y = 0; y < g.M; ++y)
    for (std::int64_t x = 0; x < g.M; ++x)
      if (f.in_domain({(k - 1) * g.M + x, y})) ++c;
  return c;
}

std::optional<StepCheck> expanding_pair_search(const CandidateMap& f, const GridSpec& g, const Rational& lambda,
                                               std::int64_t k, const Rational& d, const Rational& d_prime) {
  check_k(k, 2 * g.N - 1);
  if (!(d > d_prime)) throw DomainError("need d > d'");
  const Rational area = Rational(g.M) * g.M;
  const Rational a(corner_count(f, g, k)), b(corner_count(f, g, k + 1));
  const bool gap = (a >= d * area && b <= d_prime * area) || (b >= d * area && a <= d_prime * area);
  if (!gap)
    throw DomainError("density precondition not met for squares " + std::to_string(k) + " and " +
                      std::to_string(k + 1) + ": corner counts " + to_string(a) + ", " + to_string(b));
  for (auto& s : probe_steps(f, g, lambda))
    if (s.ratio_sq >= s.bound_sq) return s;
  return std::nullopt;
}

CandidateMap identity_map(const std::vector<Point>& domain, const Rect& window) {
  std::map<Point, Point> img;
  for (Point p : domain) img.emplace(p, p);
  return CandidateMap::make_unchecked_2z(window, std::move(img));
}

CandidateMap horizontal_stretch_map(const std::vector<Point>& domain, const Rect& window, std::int64_t a,
                                    std::int64_t w, std::int64_t s) {
  if (w <= 0 || s <= 0) throw DomainError("stretch needs positive width and factor");
  std::map<Point, Point> img;
  for (Point p : domain) {
    std::int64_t x = p.x;
    if (p.x > a + w)
      x = p.x + (s - 1) * w;
    else if (p.x >= a)
      x = a + s * (p.x - a);
    img.emplace(p, Point{x, p.y});
  }
  return CandidateMap::make_unchecked_2z(window, std::move(img));
}

CandidateMap scaling_map(const std::vector<Point>& domain, const Rect& window, std::int64_t s) {
  if (s <= 0) throw DomainError("scale must be positive");
  std::map<Point, Point> img;
  for (Point p : domain) img.emplace(p, Point{s * p.x, p.y});
  return CandidateMap::make_unchecked_2z(window, std::move(img));
}

std::vector<Point> domain_of(const Patch& patch) { return patch.points(); }

}  // namespace delone::lab
