#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delone/hierarchy.hpp"

namespace delone::nonrect {

struct RectificationConstants {
  Rational lambda;
  BigInt M0;
  BigInt N0;
};

/// lambda = eps^2/(108 P L^2), M0 = ceil(108 P^2 L^2 (L+4)/eps^2), N0 = 2 + ceil(216 L^2 P (3L^2+P+1)/eps^2).
RectificationConstants rectification_constants(const Rational& L, const Rational& eps, const BigInt& P);

struct ExpansionConstants {
  Rational lambda;
  BigInt M_star;
  BigInt N_star;
};

/// lambda = (d-d')^3/(10^10 L^7), M_star = ceil(10^15 L^11/(d-d')^4), N_star = ceil(10^10 L^10/(d-d')^4).
ExpansionConstants expansion_constants(const Rational& L, const Rational& d, const Rational& d_prime);

/// ceil(max(4 Lh^4, 3 Lh^2/eps)) with Lh = 6L.
BigInt constant_p0(const Rational& L, const Rational& eps);

/// (1+lambda)^ell > L^2, decided exactly (power for small ell, Bernoulli bound otherwise).
bool growth_condition_holds(const Rational& L, const Rational& lambda, const BigInt& ell);

/// ceil(L^2/lambda); throws if the growth condition fails for the result.
BigInt ell_min(const Rational& L, const Rational& lambda);

/// Smallest even N >= 2 max(N_star/2, 1/(d2-d2'), 1/(d1'-d1)).
BigInt n_min(const BigInt& N_star, const Rational& d1, const Rational& d2, const Rational& d1p,
             const Rational& d2p);

/// d1' = d1 + (d2-d1)/3, d2' = d2 - (d2-d1)/3.
std::pair<Rational, Rational> thirds(const Rational& d1, const Rational& d2);

struct BuildParams {
  std::int64_t m = 1;
  std::int64_t P_star = 1;
  std::int64_t N = 1;
  std::int64_t ell = 1;
};

/// The two initial 5x5 squares (full boundary): 1 = sparse, 2 = full.
Patch initial_square(int which);
/// Their 4x4 lower-left corners: the level-1 patches of the hierarchy.
std::vector<Patch> initial_corners();

/// Arrangement of one alternating step: (2N+1) m P_star blocks per side, bottom band of
/// alternating blocks starting and ending with `primary`, everything else `primary`.
Arrangement alternating_arrangement(std::int64_t blocks, std::int64_t N, std::uint32_t primary,
                                    std::uint32_t secondary);

/// Appends one alternating step on top of a two-patch level.
void append_step(HierarchySpec& spec, std::int64_t blocks, std::int64_t N, const std::string& note);

/// Q1, Q2: centred squares of side 2M (2M+1 cells), full boundary, 2Z-property when centred,
/// |corner(Q2)| > |corner(Q1)|. Returns a hierarchy whose level 1 holds the corners and whose
/// top level holds the corners of Q1_new, Q2_new after ell steps.
HierarchySpec build_new_patches(const Patch& Q1, const Patch& Q2, const BuildParams& params);

/// Exact point density of every patch of a level (count / area).
std::vector<Rational> level_densities(const HierarchySpec& spec, std::size_t level);

struct Schedule {
  std::vector<Rational> L;                   // L_n per construction step; the last value repeats
  std::size_t depth = 1;                     // construction steps on top of the initial level
  bool rigorous = false;
  BuildParams toy;                           // toy mode parameters
  bool auto_N = false;                       // toy: N = n_min(N_star_toy, ...)
  BigInt N_star_toy = 2;
  std::optional<Rational> d1p, d2p;          // overrides of the thirds rule (first step)
  std::set<std::size_t> n1_steps;            // 1-based construction steps forced to N = 1

  Rational L_at(std::size_t step) const;
};

struct StepRecord {
  std::size_t step = 0;
  Rational L;
  Rational d1, d2, d1p, d2p;
  bool n1 = false;
  BuildParams params;
  std::size_t first_level = 0;  // hierarchy level produced by the first inner iteration
};

struct ToyBuild {
  HierarchySpec spec;
  std::vector<StepRecord> steps;
};

/// Parameters of construction step s on top of the current top level.
StepRecord plan_step(const HierarchySpec& spec, const Schedule& schedule, std::size_t s);
/// Appends the ell alternating iterations of a planned step.
void apply_step(HierarchySpec& spec, StepRecord& rec);

ToyBuild build_toy_spec(const Schedule& schedule);

struct RigorousStep {
  std::size_t step = 0;
  Rational L;
  Rational d1, d2, d1p, d2p;  // d1, d2 are bounds from the previous step
  ExpansionConstants expansion;
  Rational eps;               // (d2'-d1')/(40(2+5L))
  BigInt P_star;
  BigInt m;
  BigInt N;
  BigInt ell;
  BigInt block_factor;        // (2N+1) m P_star, side growth per iteration
  double log10_half_side = 0;  // log10 of M before the step
  bool m_from_log = false;
  bool n1 = false;
};

struct RigorousPlan {
  std::vector<RigorousStep> steps;
  std::string ledger() const;
};

RigorousPlan build_rigorous_plan(const Schedule& schedule);

struct ChainLink {
  std::size_t level = 0;
  Point corner;
  std::int64_t side = 0;
  Rational expansion_sq;
  bool skipped = false;  // N = 1 level
};

struct ChainReport {
  std::vector<ChainLink> links;  // top level first
  Rational product_sq;           // (E_bottom / E_top)^2 over non-skipped steps
  Rational L;
  Rational lambda;
  std::size_t steps_at_least_1_plus_lambda = 0;
  bool contradiction = false;    // product > L^2
};

/// Follows, from `top_level` down, the bottom-row child block whose lower-side end-points
/// have maximal expansion under the hat extension of f. The top patch sits at its frame
/// origin; f's window must cover it plus one column to the right.
ChainReport expansion_chain_report(const HierarchySpec& spec, std::size_t top_level, const CandidateMap& f,
                                   const Rational& lambda, const Rational& L);

}  // namespace delone::nonrect
