#pragma once

#include <optional>
#include <vector>

#include "delone/rectifiability.hpp"

namespace delone::lab {

struct RPoint {
  Rational x, y;
  friend bool operator==(const RPoint&, const RPoint&) = default;
};

RPoint to_rpoint(HalfPoint p);
RPoint to_rpoint(Point p);

/// Polyline with exact vertices; closed curves repeat no vertex at the end.
struct Curve {
  std::vector<RPoint> vertices;
  bool closed = true;
  std::vector<Rational> segment_len_sq;
  double length = 0;
  std::vector<double> deleted_loops;

  std::size_t segment_count() const { return closed ? vertices.size() : vertices.size() - 1; }
  std::pair<RPoint, RPoint> segment(std::size_t i) const {
    return {vertices[i], vertices[(i + 1) % vertices.size()]};
  }
};

/// Drops repeated consecutive vertices and computes lengths.
Curve make_curve(std::vector<RPoint> vertices, bool closed = true);

/// No two segments meet except consecutive ones at their shared end-point.
bool is_simple(const Curve& c);

/// Resolves crossings by cutting away the shorter loop until the curve is simple.
Curve delete_loops(Curve c);

struct BoundaryCurve {
  Curve curve;
  std::optional<double> loop_bound;  // 2 Lhat^3 M/P when L is given
  bool loops_within_bound = true;
};

/// Images of the boundary probe points of S_k (counter-clockwise from x_{0,0}), joined and
/// made simple. Throws on a degenerate result.
BoundaryCurve boundary_curve(const HatMap& fhat, const GridSpec& g, std::int64_t k,
                             std::optional<Rational> L = std::nullopt);

/// Lattice points within Euclidean distance T of the curve; needs length >= 4 and 1 <= T <= length/4.
std::uint64_t lattice_near_curve_count(const Curve& c, const Rational& T);

/// Same count without the range check, by scanning every lattice point of the bounding box.
std::uint64_t lattice_near_curve_count_naive(const Curve& c, const Rational& T);

}  // namespace delone::lab
