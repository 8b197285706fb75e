#pragma once

#include <vector>

#include "delone/hierarchy.hpp"
#include "delone/nonrect.hpp"

namespace delone::ue {

/// Offset of the product of two symmetric 2x2 stochastic matrices with offsets alpha, beta: 2 alpha beta.
Rational delta_product(const Rational& alpha, const Rational& beta);

/// [[1/2+d, 1/2-d], [1/2-d, 1/2+d]].
RatMatrix mix_matrix(const Rational& delta);

/// Offset d when m has the symmetric form above, nullopt otherwise.
std::optional<Rational> offset_of(const RatMatrix& m);

/// Sup-norm distance of m to the all-1/2 matrix.
Rational distance_to_uniform(const RatMatrix& m);

/// 3x3 mixing grids: patch 1 has patch 2 at the corners, patch 2 the swapped grid.
std::vector<Arrangement> mix_arrangements();
void mix_step(HierarchySpec& spec);

struct UeBuild {
  HierarchySpec spec;
  std::vector<nonrect::StepRecord> steps;
  std::vector<Rational> deltas;      // offset of A^{n -> n+1}, n = 1 .. depth-1
  std::vector<std::size_t> mix_levels;
};

/// Construction step (L_n = n unless the schedule says otherwise) followed by a mixing step,
/// `schedule.depth` times. Every transition matrix is checked to have the symmetric form.
UeBuild build_ue_spec(const nonrect::Schedule& schedule);

/// Offset of A^{m -> n} through the 2 alpha beta rule.
Rational offset_between(const UeBuild& build, std::size_t m, std::size_t n);

/// (d1 + d2)/2 of the level-1 densities, the common limit.
Rational limit_density(const HierarchySpec& spec);

struct FrequencyRow {
  std::size_t level = 0;
  std::size_t patch = 0;    // 0-based
  std::size_t needle = 0;   // 0-based
  BigInt occurrences;
  Rational density;         // occurrences / area
  std::optional<Rational> bracket_lo, bracket_hi;
};

struct FrequencyReport {
  std::vector<FrequencyRow> rows;
  std::size_t reference_level = 0;       // m in the bracket
  std::vector<Rational> spread;          // |d_{n,1} - d_{n,2}| per level in range
  bool spread_shrinks = true;
  bool brackets_hold = true;
};

/// Exact sliding densities of `needle` for levels [from, to]; brackets use the first level
/// in range whose patches contain the needle as reference.
FrequencyReport frequency_convergence_report(const HierarchySpec& spec, const Patch& needle, std::size_t from,
                                             std::size_t to, std::size_t needle_index = 0,
                                             std::uint64_t cap = default_memory_cap());

}  // namespace delone::ue
