#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "delone/hierarchy.hpp"

namespace delone::choquet {

// Indices: levels n are 1-based; row/column/patch ids are 0-based in this API. Reports print
// them 1-based. A[n-1] is the k_n x k_{n+1} matrix between levels n and n+1.
struct ChoquetSeq {
  std::vector<BigInt> p;   // p_1 .. p_{N+1}
  std::vector<BigInt> r;   // r_1 .. r_N
  std::vector<std::size_t> k;  // k_1 .. k_{N+1}
  std::vector<IntMatrix> A;
  std::optional<std::size_t> dimension;  // nullopt = infinite-dimensional

  std::size_t levels() const { return p.size(); }
  BigInt q(std::size_t n) const { return p.at(n - 1) * p.at(n - 1); }
  /// l_n with p_{n+1} = 2 (l_n + 1) p_n.
  BigInt l(std::size_t n) const;
};

/// p_1 = max(4, dim) (4 when infinite), p_{n+1} = 2 n! p_n^2, r_n = n!; k_n = k for all n.
ChoquetSeq p_sequence(std::optional<std::size_t> dimension, std::size_t n_max, std::size_t k = 3);

/// Explicit sizes, used by toy runs.
ChoquetSeq make_sequence(std::vector<BigInt> p, std::vector<BigInt> r, std::size_t k,
                         std::optional<std::size_t> dimension);

/// p_{n+1} > ((k_n-1) p_n^2/(k_n-2)) (r_n/p_n + 1).
bool ojo_holds(const ChoquetSeq& seq, std::size_t n);

/// Matrix conditions plus the size conditions; separation is diagnostics only.
SchemeReport validate_matrices(const ChoquetSeq& seq);

/// Fills seq.A for a simplex with e extreme points: k_n = e + 1, row 1 all ones, first two
/// columns equal, entries of rows >= 2 at least max(k, r_n p_{n+1}), column sums q_{n+1}/q_n.
void make_finite_dim_matrices(ChoquetSeq& seq, std::size_t e);

struct LevelSize {
  BigInt q_ratio;    // column sum
  BigInt threshold;  // lower bound for entries of rows >= 2
};
std::vector<IntMatrix> make_finite_dim_matrices(std::size_t e, const std::vector<LevelSize>& sizes);

/// Level-1 patches on [0, p1-1]^2: patch i0 = full minus the top-right cell, patch k = even
/// columns, bottom row and the marker cell (1, k) (k 1-based).
std::vector<Patch> build_initial_patches_v(std::int64_t p1, std::size_t k1, std::size_t i0);

enum class StripeRule { literal, scaled, square_blocks };
StripeRule parse_stripe_rule(const std::string& name);
std::string to_string(StripeRule rule);

/// True when stripe column s (s in [-l-1, l]) takes j_n.
bool stripe_takes_j(StripeRule rule, std::int64_t s, const BigInt& p_n, const BigInt& p_next, const BigInt& r_n);

/// Appends level n+1 built from the top level n: upper-right block = patch 0, bottom r_n rows
/// by the stripe rule, distinctness bits in the first k_n free cells, greedy row-major fill so
/// block counts equal the columns of A_n.
void build_level_v(HierarchySpec& spec, const IntMatrix& A_n, const BigInt& p_n, const BigInt& p_next,
                   const BigInt& r_n, std::uint32_t j_n, std::uint32_t j_n_prime,
                   StripeRule rule = StripeRule::literal);

struct SeparationWitness {
  std::size_t i0 = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> j;  // (j_n, j'_n) for n = 1 .. depth+1
  Rational dbar, dbar_prime;
  std::vector<Rational> spread;                            // alpha at row i0 per level
};

/// Searches the normalized products A_1...A_n / q_{n+1}, n = 1..depth.
SeparationWitness find_separating_coordinates(const ChoquetSeq& seq, std::size_t depth);

/// A_1...A_{n-1}(i0, k) (p1^2/2 - p1/2 - 2) + (p_n^2/p_1^2)(p1^2/2 + p1/2 + 1).
BigInt patch_cardinality_formula(const ChoquetSeq& seq, const SeparationWitness& w, std::size_t n, std::size_t k);

/// d = dbar c1 + c2/p1^2 and d' = dbar' c1 + c2/p1^2.
std::pair<Rational, Rational> density_bounds(const ChoquetSeq& seq, const SeparationWitness& w);

struct ChoquetBuild {
  HierarchySpec spec;
  SeparationWitness witness;
  StripeRule rule = StripeRule::literal;
};

/// Levels 1..depth+1 using A_1..A_depth.
ChoquetBuild build_choquet_spec(const ChoquetSeq& seq, std::size_t depth, StripeRule rule = StripeRule::literal);

/// Level conditions on a built spec.
SchemeReport validate_levels(const ChoquetBuild& build, const ChoquetSeq& seq);

struct Terminal {
  enum Kind { vertex, barycenter } kind = barycenter;
  std::size_t index = 0;
};

/// mu_{depth+1} from the terminal, then mu_n = A_n mu_{n+1}; returns mu_1 .. mu_{depth+1}.
std::vector<std::vector<Rational>> measure_vectors(const ChoquetSeq& seq, std::size_t depth, const Terminal& t);
std::vector<std::vector<Rational>> measure_vectors(const ChoquetSeq& seq, std::size_t depth,
                                                   const std::vector<Rational>& terminal);
/// Largest |mu_n - A_n mu_{n+1}| entry over all levels.
Rational recursion_residual(const ChoquetSeq& seq, const std::vector<std::vector<Rational>>& mu);

/// `extreme_points <e>` or `matrices <path>`, plus optional `p <list>`, `r <list>`, `dimension <d|inf>`.
struct SimplexSpec {
  std::optional<std::size_t> extreme_points;
  std::vector<IntMatrix> matrices;
  std::vector<BigInt> p, r;
  std::optional<std::size_t> dimension;
  bool infinite = false;
};
SimplexSpec read_simplex_spec(std::istream& in, const std::string& base_dir = ".");
std::vector<IntMatrix> read_matrices(std::istream& in);

/// Toy sizes that satisfy the matrix conditions and the size conditions for k = 3: p = 4, 48, 4800, r = 1.
ChoquetSeq toy_sequence(std::size_t e = 2, std::size_t depth = 2);

std::string ledger(const ChoquetSeq& seq, const SchemeReport& k_report);

}  // namespace delone::choquet
