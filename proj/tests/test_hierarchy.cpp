#include <doctest.h>

#include <random>
#include <set>

#include "delone/hierarchy.hpp"
#include "delone/nonrect.hpp"
#include "delone/ue.hpp"
#include "oracles.hpp"

using namespace delone;

namespace {

// distinct random level-1 patches and random arrangements above them
HierarchySpec random_spec(std::mt19937_64& rng, std::size_t depth) {
  std::uniform_int_distribution<int> side(2, 4), bit(0, 1), cnt(2, 3), grid(2, 3);
  const int w = side(rng), h = side(rng), k = cnt(rng);
  std::vector<Patch> base;
  std::set<std::vector<std::string>> seen;
  while (static_cast<int>(base.size()) < k) {
    Patch p(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) p.set(x, y, bit(rng));
    if (seen.insert(p.rows_top_down()).second) base.push_back(p);
  }
  HierarchySpec spec(base);
  for (std::size_t n = 2; n <= depth; ++n) {
    const int rows = grid(rng), cols = grid(rng);
    const auto kids = static_cast<std::uint32_t>(spec.patch_count(n - 1));
    std::uniform_int_distribution<std::uint32_t> child(0, kids - 1);
    std::vector<Arrangement> arrs;
    for (int j = 0; j < cnt(rng); ++j) {
      Arrangement a(rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) a.set(r, c, child(rng));
      arrs.push_back(a);
    }
    spec.add_level(arrs, {0, 0}, false);
  }
  return spec;
}

// bit-by-bit expansion by direct recursion
bool naive_bit(const HierarchySpec& spec, std::size_t level, std::size_t id, std::int64_t x, std::int64_t y) {
  if (level == 1) return spec.level(1).patches[id].at(x, y);
  const std::int64_t cw = spec.width(level - 1), ch = spec.height(level - 1);
  const auto child = spec.level(level).arrangements[id].at(y / ch, x / cw);
  return naive_bit(spec, level - 1, child, x % cw, y % ch);
}

}  // namespace

TEST_CASE("materialize agrees with direct recursion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto spec = random_spec(rng, 3);
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t j = 0; j < spec.patch_count(n); ++j) {
        const Patch p = materialize(spec, n, j);
        REQUIRE(p.width() == spec.width(n));
        bool same = true;
        for (std::int64_t y = 0; y < p.height(); ++y)
          for (std::int64_t x = 0; x < p.width(); ++x) same = same && p.at(x, y) == naive_bit(spec, n, j, x, y);
        CHECK(same);
      }
  }
}

TEST_CASE("recursive occurrence counts equal scans") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const auto spec = random_spec(rng, 4);
    const Patch& b0 = spec.level(1).patches[0];
    std::uniform_int_distribution<int> nw(1, 3);
    const int w = std::min<int>(nw(rng), b0.width()), h = std::min<int>(nw(rng), b0.height());
    const Patch needle = materialize(spec, 2, 0).crop(1, 1, w, h);
    OccurrenceCounter sliding(spec, needle), block(spec, b0);
    for (std::size_t n = 1; n <= spec.depth(); ++n)
      for (std::size_t j = 0; j < spec.patch_count(n); ++j) {
        const Patch hay = materialize(spec, n, j);
        CHECK(sliding.count(n, j, OccurrenceMode::sliding) == oracle::scan_sliding(hay, needle));
        CHECK(block.count(n, j, OccurrenceMode::block_aligned) == oracle::scan_aligned(hay, b0));
      }
  }
}

TEST_CASE("block counts multiply along levels") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    const auto spec = random_spec(rng, 4);
    const IntMatrix m14 = block_count_matrix(spec, 1, 4);
    CHECK(m14 == spec.step_counts(2) * spec.step_counts(3) * spec.step_counts(4));
    for (std::size_t j = 0; j < spec.patch_count(4); ++j) {
      const Patch hay = materialize(spec, 4, j);
      for (std::size_t i = 0; i < spec.patch_count(1); ++i)
        CHECK(m14(i, j) == oracle::scan_aligned(hay, spec.level(1).patches[i]));
    }
    const RatMatrix f = block_frequency_matrix(spec, 1, 4);
    for (std::size_t j = 0; j < f.cols(); ++j) CHECK(f.column_sum(j) == 1);
  }
}

TEST_CASE("render_region matches a crop of the full patch") {
  std::mt19937_64 rng(14);
  const auto spec = random_spec(rng, 3);
  const Patch full = materialize(spec, 3, 1);
  const Rect r{1, 2, full.width() - 3, full.height() - 4};
  CHECK(render_region(spec, 3, 1, r).same_pattern(full.crop(r.x0, r.y0, r.width, r.height)));
}

TEST_CASE("materialization respects the cell cap") {
  nonrect::Schedule s;
  s.depth = 2;
  const auto spec = ue::build_ue_spec(s).spec;
  CHECK_THROWS_AS(materialize(spec, spec.depth(), 0, 100), ResourceError);
}

TEST_CASE("frame origins follow the frame cells") {
  nonrect::Schedule s;
  s.depth = 1;
  const auto spec = ue::build_ue_spec(s).spec;
  // level 2: 3x3 blocks of side 4 with frame cell (1,1); level 3: mixing grid with frame cell (1,1)
  CHECK(spec.frame_origin(1) == Point{0, 0});
  CHECK(spec.frame_origin(2) == Point{-4, -4});
  CHECK(spec.frame_origin(3) == Point{-16, -16});
  CHECK(validate_scheme(spec).all_passed());
}

TEST_CASE("frame checks catch a broken anchor") {
  nonrect::Schedule s;
  s.depth = 1;
  const auto good = ue::build_ue_spec(s).spec;
  HierarchySpec bad(good.level(1).patches);
  auto arrs = good.level(2).arrangements;
  arrs[0].set(1, 1, 1);
  bad.add_level(arrs, good.level(2).frame_cell, true);
  CHECK_FALSE(validate_scheme(bad).all_passed());
}

TEST_CASE("repetitivity agrees with the window scan") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 15; ++t) {
    const auto spec = random_spec(rng, 3);
    const Patch p = materialize(spec, 3, 0);
    for (std::int64_t r : {1, 2}) {
      if (p.width() < 3 * r || p.height() < 3 * r) continue;
      std::optional<std::int64_t> want;
      for (std::int64_t R = r; R <= std::min(p.width(), p.height()) - r && !want; ++R)
        if (oracle::all_windows_complete(p, r, R)) want = R;
      CHECK(estimate_repetitivity(p, r) == want);
    }
  }
}
