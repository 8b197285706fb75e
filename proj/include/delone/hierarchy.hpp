#pragma once

// Implicit substitution hierarchies. Levels are numbered from 1; patch ids inside a
// level are 0-based in this API (files and the CLI print them 1-based).
//
// Level 1 holds concrete patches. Level n > 1 holds, per patch, an arrangement grid
// of level-(n-1) ids; every level-(n-1) patch has the same support so the grid tiles
// the level-n support disjointly. Nothing above level 1 is stored as bits.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "delone/lattice.hpp"
#include "delone/matrix.hpp"

namespace delone {

/// Grid of child ids, row-major from the bottom row.
class Arrangement {
 public:
  Arrangement() = default;
  Arrangement(std::int64_t rows, std::int64_t cols, std::uint32_t fill = 0);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  std::uint32_t at(std::int64_t row, std::int64_t col) const {
    return cells_[static_cast<std::size_t>(row * cols_ + col)];
  }
  void set(std::int64_t row, std::int64_t col, std::uint32_t id) {
    cells_[static_cast<std::size_t>(row * cols_ + col)] = id;
  }
  /// Fills the block [row, row+h) x [col, col+w).
  void fill(std::int64_t row, std::int64_t col, std::int64_t h, std::int64_t w, std::uint32_t id);
  /// Occurrences of each id in [0, k).
  std::vector<std::uint64_t> histogram(std::size_t k) const;
  const std::vector<std::uint32_t>& cells() const { return cells_; }

  friend bool operator==(const Arrangement&, const Arrangement&) = default;

 private:
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<std::uint32_t> cells_;
};

struct GridCell {
  std::int64_t row = 0;
  std::int64_t col = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct HierarchyLevel {
  std::vector<Patch> patches;              // level 1 only
  std::vector<Arrangement> arrangements;   // levels > 1
  GridCell frame_cell;                     // where F_{n-1} sits inside F_n
  bool anchored = false;                   // patch 0 must carry patch 0 of the level below at frame_cell
  std::string note;                        // free-form provenance, e.g. "mix" or "step m=1 N=1"
};

class HierarchySpec {
 public:
  HierarchySpec() = default;
  explicit HierarchySpec(std::vector<Patch> base);

  /// Appends a level. Grids must share dimensions; ids are not checked here
  /// (validate_scheme reports invalid references).
  void add_level(std::vector<Arrangement> arrangements, GridCell frame_cell, bool anchored,
                 std::string note = {});

  std::size_t depth() const { return levels_.size(); }
  const HierarchyLevel& level(std::size_t n) const;
  std::size_t patch_count(std::size_t n) const;
  std::int64_t width(std::size_t n) const;
  std::int64_t height(std::size_t n) const;
  std::uint64_t cell_count(std::size_t n) const {
    return static_cast<std::uint64_t>(width(n)) * static_cast<std::uint64_t>(height(n));
  }
  /// Absolute lattice position of the bottom-left cell of F_n (F_1 starts at the origin).
  Point frame_origin(std::size_t n) const;

  /// Level-(n-1) ids in each level-n patch: entry (i, j) counts id i inside patch j.
  IntMatrix step_counts(std::size_t n) const;

 private:
  std::vector<HierarchyLevel> levels_;
};

/// 2^28 unless DELONE_MEMORY_CAP is set.
std::uint64_t default_memory_cap();

/// Bit-exact expansion of one level patch.
Patch materialize(const HierarchySpec& spec, std::size_t level, std::size_t id,
                  std::uint64_t cap = default_memory_cap());

/// Sub-rectangle (local coordinates) of a level patch, rendered without expanding the rest.
Patch render_region(const HierarchySpec& spec, std::size_t level, std::size_t id, const Rect& local,
                    std::uint64_t cap = default_memory_cap());

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct SchemeReport {
  std::vector<PropertyResult> properties;
  bool all_passed() const;
  const PropertyResult& get(const std::string& name) const;
};

/// Frame and patch-family properties F1-F6 (F2 only as growth in every direction).
SchemeReport validate_scheme(const HierarchySpec& spec);

enum class OccurrenceMode { block_aligned, sliding };

/// Exact counts of a needle inside level patches. Memo tables persist across calls,
/// so one counter should be reused for many queries on the same spec and needle.
class OccurrenceCounter {
 public:
  OccurrenceCounter(const HierarchySpec& spec, Patch needle, std::uint64_t cap = default_memory_cap());

  BigInt count(std::size_t level, std::size_t id, OccurrenceMode mode);

 private:
  BigInt sliding(std::size_t level, std::size_t id);
  BigInt block_aligned(std::size_t level, std::size_t id);
  BigInt straddle_right(std::size_t child_level, std::uint32_t left, std::uint32_t right);
  BigInt straddle_up(std::size_t child_level, std::uint32_t below, std::uint32_t above);
  BigInt straddle_diag(std::size_t child_level, std::uint32_t ll, std::uint32_t lr, std::uint32_t ul,
                       std::uint32_t ur);

  const HierarchySpec& spec_;
  Patch needle_;
  std::uint64_t cap_;
  std::map<std::pair<std::size_t, std::size_t>, BigInt> full_;
  std::map<std::tuple<std::size_t, std::uint32_t, std::uint32_t>, BigInt> right_;
  std::map<std::tuple<std::size_t, std::uint32_t, std::uint32_t>, BigInt> up_;
  std::map<std::tuple<std::size_t, std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>, BigInt>
      diag_;
  std::optional<std::pair<std::size_t, std::vector<bool>>> block_match_;
};

BigInt count_occurrences(const HierarchySpec& spec, const Patch& needle, std::size_t level,
                         std::size_t id, OccurrenceMode mode, std::uint64_t cap = default_memory_cap());

/// Translates of `needle` whose lower-left corner lies in [x0,x1] x [y0,y1] (local
/// coordinates of `hay`) and that match it exactly (occupied and empty cells).
std::uint64_t count_matches(const Patch& hay, const Patch& needle, std::int64_t x0, std::int64_t x1,
                            std::int64_t y0, std::int64_t y1);
/// All translates fully inside the support.
std::uint64_t count_matches(const Patch& hay, const Patch& needle);

/// Level-m block counts inside each level-n patch (k_m x k_n), m <= n.
IntMatrix block_count_matrix(const HierarchySpec& spec, std::size_t m, std::size_t n);

/// Entry (i, j): fraction of level-m blocks of patch j at level n that are patch i.
RatMatrix block_frequency_matrix(const HierarchySpec& spec, std::size_t m, std::size_t n);

/// Smallest R such that every R x R sub-window of `patch` contains every r x r pattern
/// that occurs anywhere in it; nullopt when no R <= side - r works.
std::optional<std::int64_t> estimate_repetitivity(const Patch& patch, std::int64_t r);

}  // namespace delone
