#pragma once

#include <vector>

#include "delone/lattice.hpp"

namespace delone::lab {

struct MinBilip {
  Rational L_sq;              // squared bi-Lipschitz constant of the best injection
  std::vector<Point> images;  // images[i] of points[i]
  double L() const;
};

/// Exact minimum over all injections of `points` (at most 8) into the lattice points of `box`;
/// the lexicographically first optimal image list wins.
MinBilip brute_force_min_bilip(const std::vector<Point>& points, const Rect& box);

/// Squared bi-Lipschitz constant of an explicit assignment over all pairs.
Rational bilip_sq(const std::vector<Point>& points, const std::vector<Point>& images);

struct HeuristicMap {
  CandidateMap map;
  double radius = 0;           // bottleneck displacement of the rescaled sources
  DistortionReport pairs;      // all pairs (or a sample above the pair cap)
  DistortionReport adjacent;   // pairs at distance <= 2
  bool sampled = false;
};

/// Matches the points onto a compact block of lattice targets with the window's aspect
/// ratio, minimizing the largest displacement of the rescaled sources (binary search plus
/// augmenting paths). Throws if no matching exists within `max_radius`.
HeuristicMap heuristic_grid_map(const std::vector<Point>& points, const Rect& window, const Rational& max_radius,
                                std::size_t pair_cap = 60000, unsigned seed = 1);

}  // namespace delone::lab
