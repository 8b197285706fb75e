#pragma once
// Naive reference implementations used only by the tests.
#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "delone/lattice.hpp"
#include "delone/rectifiability.hpp"

namespace oracle {

using namespace delone;

inline Rational bilip_sq(const CandidateMap& f) {
  Rational best = 1;
  const auto& m = f.images();
  for (auto a = m.begin(); a != m.end(); ++a)
    for (auto b = std::next(a); b != m.end(); ++b) {
      const Rational s(norm_sq(a->first - b->first)), t(norm_sq(a->second - b->second));
      best = std::max<Rational>({best, s / t, t / s});
    }
  return best;
}

// doubled coordinates of the extension
inline std::pair<std::int64_t, std::int64_t> hat2(const CandidateMap& f, Point p) {
  if (f.in_domain(p)) {
    const Point q = f(p);
    return {2 * q.x, 2 * q.y};
  }
  const Point q = f(p + Point{1, 0});
  return {2 * q.x - 1, 2 * q.y};
}

inline std::uint64_t hat_violations(const CandidateMap& f, const Rational& L_sq) {
  const auto pts = window_points(f.window());
  std::vector<std::pair<std::int64_t, std::int64_t>> img;
  for (Point p : pts) img.push_back(hat2(f, p));
  const auto n = static_cast<__int128>(static_cast<long long>(numerator(L_sq)));
  const auto d = static_cast<__int128>(static_cast<long long>(denominator(L_sq)));
  std::uint64_t bad = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const __int128 dx = img[i].first - img[j].first, dy = img[i].second - img[j].second;
      const __int128 four_img = dx * dx + dy * dy;
      const __int128 dom = norm_sq(pts[i] - pts[j]);
      if (four_img * d > 4 * 36 * n * dom) ++bad;
      if (4 * dom * d > 36 * n * four_img) ++bad;
    }
  return bad;
}

inline bool same_at(const Patch& hay, const Patch& needle, std::int64_t x, std::int64_t y) {
  for (std::int64_t r = 0; r < needle.height(); ++r)
    for (std::int64_t c = 0; c < needle.width(); ++c)
      if (hay.at(x + c, y + r) != needle.at(c, r)) return false;
  return true;
}

inline BigInt scan_sliding(const Patch& hay, const Patch& needle) {
  std::uint64_t n = 0;
  for (std::int64_t y = 0; y + needle.height() <= hay.height(); ++y)
    for (std::int64_t x = 0; x + needle.width() <= hay.width(); ++x) n += same_at(hay, needle, x, y);
  return BigInt(n);
}

inline BigInt scan_aligned(const Patch& hay, const Patch& needle) {
  std::uint64_t n = 0;
  for (std::int64_t y = 0; y + needle.height() <= hay.height(); y += needle.height())
    for (std::int64_t x = 0; x + needle.width() <= hay.width(); x += needle.width()) n += same_at(hay, needle, x, y);
  return BigInt(n);
}

// Random injective map on the rectangle of a random probe grid: horizontal stretch, then a
// linear map, then a few neighbour swaps.
inline std::pair<lab::GridSpec, CandidateMap> random_grid_map(std::mt19937_64& rng) {
  static const std::int64_t grids[][3] = {{4, 1, 2}, {4, 2, 2}, {6, 2, 3}, {8, 2, 4}, {6, 1, 2}, {9, 1, 3}};
  const auto& G = grids[std::uniform_int_distribution<int>(0, 5)(rng)];
  const auto g = lab::GridSpec::make(G[0], G[1], G[2]);
  const Rect w = g.rectangle();
  std::bernoulli_distribution coin(0.6);
  static const std::int64_t mats[][4] = {{1, 0, 0, 1}, {2, 0, 0, 1}, {1, 1, 0, 1}, {1, 0, 0, 2}, {0, -1, 1, 0}, {3, 1, 2, 1}};
  const auto& A = mats[std::uniform_int_distribution<int>(0, 5)(rng)];
  const std::int64_t a = std::uniform_int_distribution<std::int64_t>(0, w.width - 1)(rng);
  const std::int64_t sw = std::uniform_int_distribution<std::int64_t>(1, 4)(rng);
  const std::int64_t s = std::uniform_int_distribution<std::int64_t>(1, 3)(rng);
  std::map<Point, Point> img;
  std::vector<Point> dom;
  for (Point p : window_points(w)) {
    if (p.x % 2 != 0 && !coin(rng)) continue;
    dom.push_back(p);
    std::int64_t x = p.x;
    if (p.x > a + sw)
      x += (s - 1) * sw;
    else if (p.x >= a)
      x = a + s * (p.x - a);
    img.emplace(p, Point{A[0] * x + A[1] * p.y, A[2] * x + A[3] * p.y});
  }
  const int swaps = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int k = 0; k < swaps; ++k) {
    const Point p = dom[std::uniform_int_distribution<std::size_t>(0, dom.size() - 1)(rng)];
    const Point q = p + Point{0, 1};
    if (img.count(q)) std::swap(img[p], img[q]);
  }
  return {g, CandidateMap::make(w, std::move(img))};
}

inline Point probe(const lab::GridSpec& g, std::int64_t k, std::int64_t i, std::int64_t j) {
  const std::int64_t h = g.M / g.P;
  return {(k - 1) * g.M + i * h, j * h};
}

inline std::vector<std::pair<Point, Point>> stretched_steps(const CandidateMap& f, const lab::GridSpec& g,
                                                            const Rational& lambda) {
  const Point v = f({2 * g.M * g.N, 0}) - f({0, 0});
  const Rational len(2 * g.M * g.N);
  std::vector<std::pair<Point, Point>> out;
  for (std::int64_t k = 1; k <= 2 * g.N; ++k)
    for (std::int64_t j = 0; j <= g.P; ++j)
      for (std::int64_t i = 0; i <= g.P; ++i) {
        const Point x = probe(g, k, i, j);
        Point y = probe(g, k, i + 1, j);
        if (!f.in_domain(x)) continue;
        if (!f.in_domain(y)) y.x += 1;
        if (!f.in_domain(y)) continue;
        // |f(y)-f(x)| / |y-x| > (1+lambda) |v| / len
        const Rational lhs = Rational(norm_sq(f(y) - f(x))) * len * len;
        const Rational rhs = (1 + lambda) * (1 + lambda) * Rational(norm_sq(v)) * Rational(norm_sq(y - x));
        if (lhs > rhs) out.emplace_back(x, y);
      }
  return out;
}

inline std::optional<std::int64_t> regular_square(const CandidateMap& f, const lab::GridSpec& g, const Rational& tau) {
  const auto o = hat2(f, {0, 0}), e = hat2(f, {2 * g.M * g.N, 0});
  const std::int64_t vx = e.first - o.first, vy = e.second - o.second;
  for (std::int64_t k = 1; k <= 2 * g.N - 1; ++k) {
    bool good = true;
    for (std::int64_t j = 0; j <= g.P && good; ++j)
      for (std::int64_t i = 0; i <= g.P && good; ++i) {
        const Point x = probe(g, k, i, j);
        const auto a = hat2(f, x), b = hat2(f, x + Point{g.M, 0});
        const std::int64_t dx = b.first - a.first, dy = b.second - a.second;
        // <d, v>/M >= (1 - tau) |v|^2 / 2MN, both sides in doubled coordinates
        const Rational lhs = Rational(dx * vx + dy * vy) * (2 * g.N);
        const Rational rhs = (1 - tau) * Rational(vx * vx + vy * vy);
        if (lhs < rhs) good = false;
      }
    if (good) return k;
  }
  return std::nullopt;
}

inline Rational deviation_sq(const CandidateMap& f, const lab::GridSpec& g, std::int64_t k) {
  const auto o = hat2(f, {0, 0}), e = hat2(f, {2 * g.M * g.N, 0});
  const Rational vx(e.first - o.first, 2), vy(e.second - o.second, 2);
  const Rational len(2 * g.M * g.N);
  Rational best = 0;
  for (std::int64_t j = 0; j <= g.P; ++j)
    for (std::int64_t i = 0; i <= g.P; ++i) {
      const Point x = probe(g, k, i, j);
      const auto a = hat2(f, x), b = hat2(f, x + Point{g.M, 0});
      const Rational ex = Rational(b.first - a.first, 2 * g.M) - vx / len;
      const Rational ey = Rational(b.second - a.second, 2 * g.M) - vy / len;
      best = std::max<Rational>(best, ex * ex + ey * ey);
    }
  return best;
}

inline std::uint64_t pattern_key(const Patch& p, std::int64_t x, std::int64_t y, std::int64_t r) {
  std::uint64_t key = 0;
  for (std::int64_t dy = 0; dy < r; ++dy)
    for (std::int64_t dx = 0; dx < r; ++dx) key = key << 1 | static_cast<std::uint64_t>(p.at(x + dx, y + dy));
  return key;
}

// Every R x R sub-window contains every r x r pattern of the whole patch (r <= 4).
inline bool all_windows_complete(const Patch& p, std::int64_t r, std::int64_t R) {
  if (R > p.width() || R > p.height()) return false;
  std::vector<std::uint32_t> stamp(std::size_t{1} << (r * r), 0);
  std::uint32_t all = 0, round = 1;
  for (std::int64_t y = 0; y + r <= p.height(); ++y)
    for (std::int64_t x = 0; x + r <= p.width(); ++x) {
      auto& s = stamp[pattern_key(p, x, y, r)];
      if (s != round) s = round, ++all;
    }
  for (std::int64_t wy = 0; wy + R <= p.height(); ++wy)
    for (std::int64_t wx = 0; wx + R <= p.width(); ++wx) {
      ++round;
      std::uint32_t seen = 0;
      for (std::int64_t y = wy; y + r <= wy + R; ++y)
        for (std::int64_t x = wx; x + r <= wx + R; ++x) {
          auto& s = stamp[pattern_key(p, x, y, r)];
          if (s != round) s = round, ++seen;
        }
      if (seen != all) return false;
    }
  return true;
}

}  // namespace oracle
