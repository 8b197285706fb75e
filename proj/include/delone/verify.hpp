#pragma once

#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "delone/hierarchy.hpp"

namespace delone::verify {

struct CheckRow {
  std::string suite;
  std::string name;
  bool passed = true;
  std::string detail;
  std::string topic;
};

struct Options {
  std::size_t depth = 3;
  std::size_t trials = 200;
  std::uint64_t seed = 7;
  std::optional<HierarchySpec> spec;  // hierarchy suite input; a toy build otherwise
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite); throws DomainError for an unknown name.
std::vector<CheckRow> run_suite(const std::string& name, const Options& opt);

void write_tsv(std::ostream& os, const std::vector<CheckRow>& rows);
bool all_passed(const std::vector<CheckRow>& rows);

/// Random domain with the 2Z-property on [0, w) x [0, h) (w odd) and an injective map built
/// from a random unimodular or scaling matrix, a translation and a few neighbour swaps.
CandidateMap random_map(std::mt19937_64& rng, std::int64_t max_side);

/// Exact squared bi-Lipschitz constant over all domain pairs.
Rational exact_bilip_sq(const CandidateMap& f);

/// Number of window pairs violating the 6L bound for the hat extension (integer arithmetic).
std::uint64_t hat_violations(const CandidateMap& f, const Rational& L_sq);

/// Random closed rectilinear polyline with integer vertices, length >= 4.
std::vector<Point> random_rectilinear_loop(std::mt19937_64& rng, int max_step, int turns);

/// Map on the materialized top patch of `spec` (placed at its frame origin) plus two full
/// columns to the right, so the hat extension covers every chain end-point.
struct ChainFixture {
  std::vector<Point> domain;
  Rect window;
};
ChainFixture chain_fixture(const HierarchySpec& spec, std::size_t level, std::size_t id);

}  // namespace delone::verify
