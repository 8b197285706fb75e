#include "delone/curve.hpp"

#include <cmath>
#include <unordered_set>

namespace delone::lab {

namespace {

Rational cross(const RPoint& o, const RPoint& a, const RPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Rational dist_sq(const RPoint& a, const RPoint& b) {
  return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

bool on_segment(const RPoint& p, const RPoint& a, const RPoint& b) {
  if (cross(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::optional<RPoint> meet(const RPoint& a, const RPoint& b, const RPoint& c, const RPoint& d) {
  const int d1 = sign(cross(c, d, a)), d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c)), d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) {
    const Rational t = cross(c, d, a) / (cross(c, d, a) - cross(c, d, b));
    return RPoint{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  }
  if (on_segment(c, a, b)) return c;
  if (on_segment(d, a, b)) return d;
  if (on_segment(a, c, d)) return a;
  if (on_segment(b, c, d)) return b;
  return std::nullopt;
}

double seg_len(const RPoint& a, const RPoint& b) { return std::sqrt(to_double(dist_sq(a, b))); }

double closed_length(const std::vector<RPoint>& v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += seg_len(v[i], v[(i + 1) % v.size()]);
  return s;
}

std::vector<RPoint> dedupe(std::vector<RPoint> v, bool closed) {
  std::vector<RPoint> out;
  for (auto& p : v)
    if (out.empty() || !(out.back() == p)) out.push_back(std::move(p));
  while (closed && out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

// index of a vertex whose two segments fold back onto each other
std::optional<std::size_t> find_spike(const std::vector<RPoint>& v) {
  const std::size_t n = v.size();
  if (n < 3) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    const RPoint& a = v[(i + n - 1) % n];
    const RPoint& b = v[i];
    const RPoint& c = v[(i + 1) % n];
    if (cross(b, a, c) != 0) continue;
    const Rational dot = (a.x - b.x) * (c.x - b.x) + (a.y - b.y) * (c.y - b.y);
    if (dot > 0) return i;
  }
  return std::nullopt;
}

bool adjacent(std::size_t i, std::size_t j, std::size_t n) { return j == i + 1 || (i == 0 && j == n - 1); }

}  // namespace

RPoint to_rpoint(HalfPoint p) { return {p.x(), p.y()}; }
RPoint to_rpoint(Point p) { return {Rational(p.x), Rational(p.y)}; }

Curve make_curve(std::vector<RPoint> vertices, bool closed) {
  Curve c;
  c.closed = closed;
  c.vertices = dedupe(std::move(vertices), closed);
  if (c.vertices.size() < 2) throw DomainError("degenerate curve: fewer than two distinct vertices");
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    auto [a, b] = c.segment(i);
    c.segment_len_sq.push_back(dist_sq(a, b));
    c.length += seg_len(a, b);
  }
  return c;
}

bool is_simple(const Curve& c) {
  const std::size_t n = c.vertices.size();
  const std::size_t m = c.segment_count();
  if (c.closed && find_spike(c.vertices)) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto [a, b] = c.segment(i);
      auto [p, q] = c.segment(j);
      if (c.closed ? adjacent(i, j, n) : j == i + 1) {
        // shared end-point only: collinear overlap means a fold
        if (cross(a, b, p) == 0 && cross(a, b, q) == 0) {
          const RPoint& shared = j == i + 1 ? b : a;
          const RPoint& other = j == i + 1 ? q : p;
          const RPoint& mine = j == i + 1 ? a : b;
          const Rational dot = (mine.x - shared.x) * (other.x - shared.x) + (mine.y - shared.y) * (other.y - shared.y);
          if (dot > 0) return false;
        }
        continue;
      }
      if (meet(a, b, p, q)) return false;
    }
  return true;
}

Curve delete_loops(Curve c) {
  if (!c.closed) throw DomainError("loop deletion needs a closed curve");
  std::vector<RPoint> v = c.vertices;
  std::vector<double> deleted = c.deleted_loops;
  for (;;) {
    v = dedupe(std::move(v), true);
    const std::size_t n = v.size();
    if (n < 3) break;
    if (auto s = find_spike(v)) {
      const std::size_t i = *s;
      const double a = seg_len(v[(i + n - 1) % n], v[i]);
      const double b = seg_len(v[i], v[(i + 1) % n]);
      deleted.push_back(2 * std::min(a, b));
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    bool cut = false;
    for (std::size_t i = 0; i < n && !cut; ++i)
      for (std::size_t j = i + 1; j < n && !cut; ++j) {
        if (adjacent(i, j, n)) continue;
        auto x = meet(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]);
        if (!x) continue;
        std::vector<RPoint> inner{*x}, outer{*x};
        for (std::size_t t = i + 1; t <= j; ++t) inner.push_back(v[t]);
        for (std::size_t t = j + 1; t < n; ++t) outer.push_back(v[t]);
        for (std::size_t t = 0; t <= i; ++t) outer.push_back(v[t]);
        inner = dedupe(std::move(inner), true);
        outer = dedupe(std::move(outer), true);
        const double li = closed_length(inner), lo = closed_length(outer);
        if (li <= lo) {
          deleted.push_back(li);
          v = std::move(outer);
        } else {
          deleted.push_back(lo);
          v = std::move(inner);
        }
        cut = true;
      }
    if (!cut) break;
  }
  Curve out = make_curve(std::move(v), true);
  out.deleted_loops = std::move(deleted);
  return out;
}

BoundaryCurve boundary_curve(const HatMap& fhat, const GridSpec& g, std::int64_t k, std::optional<Rational> L) {
  if (k < 1 || k > 2 * g.N) throw DomainError("square index outside [1, 2N]");
  std::vector<Point> ring;
  for (std::int64_t i = 0; i <= g.P; ++i) ring.push_back(probe_point(g, k, i, 0));
  for (std::int64_t j = 1; j <= g.P; ++j) ring.push_back(probe_point(g, k, g.P, j));
  for (std::int64_t i = g.P - 1; i >= 0; --i) ring.push_back(probe_point(g, k, i, g.P));
  for (std::int64_t j = g.P - 1; j >= 1; --j) ring.push_back(probe_point(g, k, 0, j));
  std::vector<RPoint> img;
  for (Point p : ring) {
    auto it = fhat.find(p);
    if (it == fhat.end()) throw DomainError("boundary point " + to_string(p) + " outside the extended map");
    img.push_back(to_rpoint(it->second));
  }
  BoundaryCurve bc;
  bc.curve = delete_loops(make_curve(std::move(img), true));
  if (bc.curve.vertices.size() < 3 || bc.curve.length <= 0) throw DomainError("degenerate curve");
  if (L) {
    const double Lh = 6 * to_double(*L);
    const double MP = static_cast<double>(g.step());
    bc.loop_bound = 2 * Lh * Lh * Lh * MP;
    for (double d : bc.curve.deleted_loops)
      if (d > *bc.loop_bound * (1 + 1e-12)) bc.loops_within_bound = false;
    const double positivity = g.M * std::sqrt(2.0) / Lh - 4 * Lh * Lh * Lh * MP;
    if (positivity > 0 && bc.curve.length < positivity)
      throw DomainError("degenerate curve: length below M sqrt2/Lhat - 4 Lhat^3 M/P");
  }
  return bc;
}

namespace {

struct Scaled {
  std::vector<std::pair<__int128, __int128>> v;
  __int128 D = 1;
  __int128 R = 0;  // T * D
};

std::optional<Scaled> scale(const Curve& c, const Rational& T) {
  BigInt D = denominator(T);
  for (const auto& p : c.vertices) D = boost::multiprecision::lcm(boost::multiprecision::lcm(D, denominator(p.x)), denominator(p.y));
  const BigInt limit = BigInt(1) << 30;
  if (D > limit) return std::nullopt;
  Scaled s;
  s.D = static_cast<__int128>(static_cast<long long>(D));
  const BigInt R = numerator(T) * (D / denominator(T));
  if (R > limit) return std::nullopt;
  s.R = static_cast<long long>(R);
  for (const auto& p : c.vertices) {
    const BigInt x = numerator(p.x) * (D / denominator(p.x));
    const BigInt y = numerator(p.y) * (D / denominator(p.y));
    if (abs(x) > limit || abs(y) > limit) return std::nullopt;
    s.v.emplace_back(static_cast<long long>(x), static_cast<long long>(y));
  }
  return s;
}

bool near_segment(__int128 px, __int128 py, std::pair<__int128, __int128> a, std::pair<__int128, __int128> b,
                  __int128 R) {
  const __int128 dx = b.first - a.first, dy = b.second - a.second;
  const __int128 wx = px - a.first, wy = py - a.second;
  const __int128 t = wx * dx + wy * dy;
  const __int128 dd = dx * dx + dy * dy;
  if (t <= 0 || dd == 0) return wx * wx + wy * wy <= R * R;
  if (t >= dd) {
    const __int128 ux = px - b.first, uy = py - b.second;
    return ux * ux + uy * uy <= R * R;
  }
  const __int128 cr = wx * dy - wy * dx;
  return cr * cr <= R * R * dd;
}

bool near_segment_exact(const RPoint& p, const RPoint& a, const RPoint& b, const Rational& T) {
  const Rational dx = b.x - a.x, dy = b.y - a.y;
  const Rational wx = p.x - a.x, wy = p.y - a.y;
  const Rational t = wx * dx + wy * dy;
  const Rational dd = dx * dx + dy * dy;
  if (t <= 0 || dd == 0) return wx * wx + wy * wy <= T * T;
  if (t >= dd) return dist_sq(p, b) <= T * T;
  const Rational cr = wx * dy - wy * dx;
  return cr * cr <= T * T * dd;
}

std::uint64_t count_impl(const Curve& c, const Rational& T) {
  const std::size_t m = c.segment_count();
  std::unordered_set<std::uint64_t> hit;
  auto key = [](std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint32_t>(y);
  };
  const auto sc = scale(c, T);
  for (std::size_t s = 0; s < m; ++s) {
    auto [a, b] = c.segment(s);
    const std::int64_t x0 = to_int64(floor(std::min(a.x, b.x) - T)), x1 = to_int64(ceil(std::max(a.x, b.x) + T));
    const std::int64_t y0 = to_int64(floor(std::min(a.y, b.y) - T)), y1 = to_int64(ceil(std::max(a.y, b.y) + T));
    for (std::int64_t x = x0; x <= x1; ++x)
      for (std::int64_t y = y0; y <= y1; ++y) {
        bool in;
        if (sc) {
          const std::size_t t = (s + 1) % c.vertices.size();
          in = near_segment(sc->D * x, sc->D * y, sc->v[s], sc->v[t], sc->R);
        } else {
          in = near_segment_exact(RPoint{Rational(x), Rational(y)}, a, b, T);
        }
        if (in) hit.insert(key(x, y));
      }
  }
  return hit.size();
}

}  // namespace

std::uint64_t lattice_near_curve_count(const Curve& c, const Rational& T) {
  if (!(c.length >= 4) || T < 1 || 4 * to_double(T) > c.length * (1 + 1e-12))
    throw DomainError("count needs length >= 4 and 1 <= T <= length/4");
  return count_impl(c, T);
}

std::uint64_t lattice_near_curve_count_naive(const Curve& c, const Rational& T) {
  Rational x0 = c.vertices[0].x, x1 = x0, y0 = c.vertices[0].y, y1 = y0;
  for (const auto& p : c.vertices) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  std::uint64_t n = 0;
  for (std::int64_t x = to_int64(floor(x0 - T)); x <= to_int64(ceil(x1 + T)); ++x)
    for (std::int64_t y = to_int64(floor(y0 - T)); y <= to_int64(ceil(y1 + T)); ++y) {
      const RPoint p{Rational(x), Rational(y)};
      for (std::size_t s = 0; s < c.segment_count(); ++s) {
        auto [a, b] = c.segment(s);
        if (near_segment_exact(p, a, b, T)) {
          ++n;
          break;
        }
      }
    }
  return n;
}

}  // namespace delone::lab
