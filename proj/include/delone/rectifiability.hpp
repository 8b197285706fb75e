#pragma once

#include <optional>
#include <vector>

#include "delone/lattice.hpp"

namespace delone::lab {

/// R_{M,N} = [0, 2MN] x [0, M], squares S_k^P for k = 1..2N.
struct GridSpec {
  std::int64_t M = 1;
  std::int64_t N = 1;
  std::int64_t P = 1;

  static GridSpec make(std::int64_t M, std::int64_t N, std::int64_t P);
  std::int64_t step() const { return M / P; }
  std::int64_t length() const { return 2 * M * N; }
  Rect rectangle() const { return {0, 0, 2 * M * N + 1, M + 1}; }
};

/// x_{i,j}^k = ((k-1)M + iM/P, jM/P); i may be P+1.
Point probe_point(const GridSpec& g, std::int64_t k, std::int64_t i, std::int64_t j);

struct ProbePoint {
  std::int64_t i = 0;
  std::int64_t j = 0;
  Point x;
};

/// The (P+1)^2 points of S_k^P ordered by j then i; with `with_extra` also i = P+1.
std::vector<ProbePoint> probe_points(const GridSpec& g, std::int64_t k, bool with_extra = false);

struct StepCheck {
  std::int64_t k = 0, i = 0, j = 0;
  Point x;
  Point y;               // end-point actually used
  bool shifted = false;  // y = x_{i+1,j} + (1,0)
  Rational ratio_sq;     // (|f(y)-f(x)| / |y-x|)^2
  Rational bound_sq;     // ((1+lambda) |v| / 2MN)^2
};

/// Probe steps whose expansion exceeds (1+lambda)|v|/2MN, in (k, j, i) order.
std::vector<StepCheck> check_no_stretch(const CandidateMap& f, const GridSpec& g, const Rational& lambda);

/// Every probe step with its ratio, for naive comparisons.
std::vector<StepCheck> probe_steps(const CandidateMap& f, const GridSpec& g, const Rational& lambda);

struct RegularSquareResult {
  std::optional<std::int64_t> k_star;
  std::vector<Rational> min_projection;  // per k = 1..2N-1: min <f(x+(M,0))-f(x), v>/M
  Rational threshold;                    // (1-tau)|v|^2/2MN
};

/// First k in [1, 2N-1] whose probe points all satisfy the projected-increment bound.
RegularSquareResult find_regular_square(const HatMap& fhat, const GridSpec& g, const Rational& tau);

struct Deviation {
  Rational max_sq;
  Point witness;
  double value() const;
  bool within(const Rational& eps) const { return max_sq <= eps * eps; }
};

/// max over S_{k*} of |(fhat(x+(M,0)) - fhat(x))/M - v/2MN|.
Deviation coarse_derivative_deviation(const HatMap& fhat, const GridSpec& g, std::int64_t k_star);

/// |D cap lower-left corner of S_k|.
std::int64_t corner_count(const CandidateMap& f, const GridSpec& g, std::int64_t k);

/// Probe step with expansion >= (1+lambda)|v|/2MN, first in (k, j, i) order; the squares
/// k, k+1 must have corner counts >= d M^2 and <= d' M^2 (either order).
std::optional<StepCheck> expanding_pair_search(const CandidateMap& f, const GridSpec& g, const Rational& lambda,
                                               std::int64_t k, const Rational& d, const Rational& d_prime);

/// Identity on the given domain.
CandidateMap identity_map(const std::vector<Point>& domain, const Rect& window);
/// (x, y) -> (g(x), y) with g(x) = x left of a, slope s on [a, a+w], shifted by (s-1)w after.
CandidateMap horizontal_stretch_map(const std::vector<Point>& domain, const Rect& window, std::int64_t a,
                                    std::int64_t w, std::int64_t s);
/// (x, y) -> (s x, y).
CandidateMap scaling_map(const std::vector<Point>& domain, const Rect& window, std::int64_t s);

/// Domain points of a patch in absolute coordinates.
std::vector<Point> domain_of(const Patch& patch);

}  // namespace delone::lab
