#include "delone/matching.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace delone::lab {

namespace {

struct Frac {
  std::int64_t num = 0, den = 1;
  bool less(const Frac& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }
};

// max(e, 1/e) with e = a/b
Frac worse_side(std::int64_t a, std::int64_t b) {
  return static_cast<__int128>(a) * a >= static_cast<__int128>(b) * b ? Frac{a, b} : Frac{b, a};
}

struct Search {
  const std::vector<Point>& pts;
  std::vector<Point> targets;
  std::vector<bool> used;
  std::vector<Point> cur;
  std::optional<Frac> best;
  std::vector<Point> best_images;

  void dfs(std::size_t i, Frac worst) {
    if (best && !worst.less(*best)) return;
    if (i == pts.size()) {
      best = worst;
      best_images = cur;
      return;
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (used[t]) continue;
      Frac w = worst;
      for (std::size_t j = 0; j < i; ++j) {
        const Frac e = worse_side(norm_sq(targets[t] - cur[j]), norm_sq(pts[i] - pts[j]));
        if (w.less(e)) w = e;
      }
      if (best && !w.less(*best)) continue;
      used[t] = true;
      cur.push_back(targets[t]);
      dfs(i + 1, w);
      cur.pop_back();
      used[t] = false;
    }
  }
};

bool kuhn(std::size_t u, const std::vector<std::vector<std::size_t>>& adj, std::vector<int>& match_t,
          std::vector<char>& seen) {
  for (std::size_t t : adj[u]) {
    if (seen[t]) continue;
    seen[t] = 1;
    if (match_t[t] < 0 || kuhn(static_cast<std::size_t>(match_t[t]), adj, match_t, seen)) {
      match_t[t] = static_cast<int>(u);
      return true;
    }
  }
  return false;
}

}  // namespace

double MinBilip::L() const { return std::sqrt(to_double(L_sq)); }

Rational bilip_sq(const std::vector<Point>& points, const std::vector<Point>& images) {
  if (points.size() != images.size()) throw DomainError("image list length mismatch");
  Rational worst = 1;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const std::int64_t a = norm_sq(images[i] - images[j]), b = norm_sq(points[i] - points[j]);
      if (a == 0 || b == 0) throw DomainError("assignment is not injective");
      worst = std::max({worst, Rational(a, b), Rational(b, a)});
    }
  return worst;
}

MinBilip brute_force_min_bilip(const std::vector<Point>& points, const Rect& box) {
  if (points.size() > 8) throw DomainError("brute force is limited to 8 points");
  if (points.empty()) throw DomainError("no points");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw DomainError("repeated point");
  if (box.width <= 0 || box.height <= 0 || static_cast<std::uint64_t>(box.area()) < points.size())
    throw DomainError("box too small");
  Search s{points, {}, {}, {}, std::nullopt, {}};
  s.targets = window_points(box);
  std::sort(s.targets.begin(), s.targets.end());
  s.used.assign(s.targets.size(), false);
  s.dfs(0, Frac{1, 1});
  MinBilip out;
  out.L_sq = Rational(s.best->num) / Rational(s.best->den);
  out.images = s.best_images;
  return out;
}

HeuristicMap heuristic_grid_map(const std::vector<Point>& points, const Rect& window, const Rational& max_radius,
                                std::size_t pair_cap, unsigned seed) {
  const std::size_t n = points.size();
  if (n < 2) throw DomainError("need at least two points");
  if (window.width <= 0 || window.height <= 0) throw DomainError("empty window");
  for (Point p : points)
    if (!window.contains(p)) throw DomainError("point " + to_string(p) + " outside the window");
  const double w = static_cast<double>(window.width), h = static_cast<double>(window.height);
  std::int64_t tw = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n) * w / h) - 1e-9));
  tw = std::clamp<std::int64_t>(tw, 1, static_cast<std::int64_t>(n));
  const std::int64_t th = (static_cast<std::int64_t>(n) + tw - 1) / tw;
  std::vector<Point> targets;
  for (std::int64_t y = 0; y < th && targets.size() < n; ++y)
    for (std::int64_t x = 0; x < tw && targets.size() < n; ++x) targets.push_back({window.x0 + x, window.y0 + y});
  const double sx = static_cast<double>(tw) / w, sy = static_cast<double>(th) / h;

  std::vector<std::vector<std::pair<double, std::size_t>>> cand(n);
  std::vector<double> radii;
  const double rmax = to_double(max_radius);
  for (std::size_t i = 0; i < n; ++i) {
    const double px = (points[i].x - window.x0) * sx, py = (points[i].y - window.y0) * sy;
    for (std::size_t t = 0; t < n; ++t) {
      const double dx = px - (targets[t].x - window.x0), dy = py - (targets[t].y - window.y0);
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d <= rmax + 1e-12) {
        cand[i].emplace_back(d, t);
        radii.push_back(d);
      }
    }
    std::sort(cand[i].begin(), cand[i].end());
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  auto solve = [&](double r, std::vector<int>& match_t) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
      for (auto [d, t] : cand[i]) {
        if (d > r) break;
        adj[i].push_back(t);
      }
    match_t.assign(n, -1);
    std::vector<char> seen(n);
    for (std::size_t u = 0; u < n; ++u) {
      std::fill(seen.begin(), seen.end(), 0);
      if (!kuhn(u, adj, match_t, seen)) return false;
    }
    return true;
  };

  std::vector<int> match;
  if (radii.empty() || !solve(radii.back(), match)) throw DomainError("no matching within the radius budget");
  std::size_t lo = 0, hi = radii.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    std::vector<int> m;
    if (solve(radii[mid], m))
      hi = mid;
    else
      lo = mid + 1;
  }
  solve(radii[lo], match);

  std::map<Point, Point> img;
  for (std::size_t t = 0; t < n; ++t) img.emplace(points[static_cast<std::size_t>(match[t])], targets[t]);
  HeuristicMap out{CandidateMap::make_unchecked_2z(window, std::move(img)), radii[lo], {}, {}, false};

  std::vector<PointPair> pairs;
  if (n * (n - 1) / 2 <= pair_cap) {
    pairs = all_pairs(points);
  } else {
    out.sampled = true;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (pairs.size() < pair_cap) {
      const std::size_t a = pick(rng), b = pick(rng);
      if (a != b) pairs.emplace_back(points[a], points[b]);
    }
  }
  out.pairs = distortion(out.map, pairs);
  std::vector<PointPair> near;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (norm_sq(points[i] - points[j]) <= 4) near.emplace_back(points[i], points[j]);
  if (!near.empty()) out.adjacent = distortion(out.map, near);
  return out;
}

}  // namespace delone::lab
