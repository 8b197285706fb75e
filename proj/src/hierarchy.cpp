#include "delone/hierarchy.hpp"

#include <cstdlib>
#include <limits>

namespace delone {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("hierarchy dimensions overflow 64-bit integers");
  return out;
}

void check_cap(std::uint64_t cells, std::uint64_t cap) {
  if (cells > cap)
    throw ResourceError("materialization needs " + std::to_string(cells) + " cells, cap is " +
                        std::to_string(cap));
}

std::string cell_name(GridCell c) {
  return "(row " + std::to_string(c.row) + ", col " + std::to_string(c.col) + ")";
}

}  // namespace

Arrangement::Arrangement(std::int64_t rows, std::int64_t cols, std::uint32_t fill)
    : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) throw DomainError("arrangement dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(rows * cols), fill);
}

void Arrangement::fill(std::int64_t row, std::int64_t col, std::int64_t h, std::int64_t w,
                       std::uint32_t id) {
  if (row < 0 || col < 0 || row + h > rows_ || col + w > cols_)
    throw DomainError("fill block exceeds arrangement");
  for (std::int64_t r = row; r < row + h; ++r)
    for (std::int64_t c = col; c < col + w; ++c) set(r, c, id);
}

std::vector<std::uint64_t> Arrangement::histogram(std::size_t k) const {
  std::vector<std::uint64_t> h(k, 0);
  for (auto id : cells_) {
    if (id >= k) throw DomainError("arrangement references id " + std::to_string(id + 1) +
                                   " but only " + std::to_string(k) + " exist");
    ++h[id];
  }
  return h;
}

HierarchySpec::HierarchySpec(std::vector<Patch> base) {
  if (base.empty()) throw DomainError("level 1 needs at least one patch");
  HierarchyLevel lvl;
  lvl.patches = std::move(base);
  levels_.push_back(std::move(lvl));
}

void HierarchySpec::add_level(std::vector<Arrangement> arrangements, GridCell frame_cell, bool anchored,
                              std::string note) {
  if (levels_.empty()) throw DomainError("add_level before level 1");
  if (arrangements.empty()) throw DomainError("a level needs at least one arrangement");
  HierarchyLevel lvl;
  lvl.arrangements = std::move(arrangements);
  lvl.frame_cell = frame_cell;
  lvl.anchored = anchored;
  lvl.note = std::move(note);
  levels_.push_back(std::move(lvl));
}

const HierarchyLevel& HierarchySpec::level(std::size_t n) const {
  if (n < 1 || n > levels_.size())
    throw DomainError("level " + std::to_string(n) + " outside 1.." + std::to_string(levels_.size()));
  return levels_[n - 1];
}

std::size_t HierarchySpec::patch_count(std::size_t n) const {
  const auto& l = level(n);
  return n == 1 ? l.patches.size() : l.arrangements.size();
}

std::int64_t HierarchySpec::width(std::size_t n) const {
  const auto& l = level(n);
  if (n == 1) return l.patches.front().width();
  return checked_mul(width(n - 1), l.arrangements.front().cols());
}

std::int64_t HierarchySpec::height(std::size_t n) const {
  const auto& l = level(n);
  if (n == 1) return l.patches.front().height();
  return checked_mul(height(n - 1), l.arrangements.front().rows());
}

Point HierarchySpec::frame_origin(std::size_t n) const {
  Point o{0, 0};
  for (std::size_t m = 2; m <= n; ++m) {
    const auto& fc = level(m).frame_cell;
    o = o - Point{checked_mul(fc.col, width(m - 1)), checked_mul(fc.row, height(m - 1))};
  }
  return o;
}

IntMatrix HierarchySpec::step_counts(std::size_t n) const {
  if (n < 2) throw DomainError("step counts need a level above 1");
  const auto& l = level(n);
  const std::size_t kprev = patch_count(n - 1);
  IntMatrix t(kprev, l.arrangements.size());
  for (std::size_t j = 0; j < l.arrangements.size(); ++j) {
    auto h = l.arrangements[j].histogram(kprev);
    for (std::size_t i = 0; i < kprev; ++i) t(i, j) = h[i];
  }
  return t;
}

std::uint64_t default_memory_cap() {
  if (const char* env = std::getenv("DELONE_MEMORY_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw DomainError(std::string("DELONE_MEMORY_CAP is not an integer: ") + env);
    }
  }
  return std::uint64_t{1} << 28;
}

namespace {

// Copies local rectangle `r` of patch (level, id) into dst, with r's corner at (dx, dy).
void render_into(const HierarchySpec& spec, std::size_t level, std::size_t id, const Rect& r, Patch& dst,
                 std::int64_t dx, std::int64_t dy) {
  if (r.width <= 0 || r.height <= 0) return;
  const auto& lvl = spec.level(level);
  if (level == 1) {
    if (id >= lvl.patches.size()) throw DomainError("level 1 has no patch " + std::to_string(id + 1));
    const Patch& p = lvl.patches[id];
    for (std::int64_t y = 0; y < r.height; ++y)
      for (std::int64_t x = 0; x < r.width; ++x)
        if (p.at(r.x0 + x, r.y0 + y)) dst.set(dx + x, dy + y);
    return;
  }
  if (id >= lvl.arrangements.size())
    throw DomainError("level " + std::to_string(level) + " has no patch " + std::to_string(id + 1));
  const Arrangement& a = lvl.arrangements[id];
  const std::int64_t cw = spec.width(level - 1);
  const std::int64_t ch = spec.height(level - 1);
  const std::size_t kprev = spec.patch_count(level - 1);
  for (std::int64_t row = r.y0 / ch; row <= (r.y0 + r.height - 1) / ch; ++row) {
    for (std::int64_t col = r.x0 / cw; col <= (r.x0 + r.width - 1) / cw; ++col) {
      const std::int64_t bx = col * cw, by = row * ch;
      const std::int64_t x0 = std::max(r.x0, bx), x1 = std::min(r.x0 + r.width, bx + cw);
      const std::int64_t y0 = std::max(r.y0, by), y1 = std::min(r.y0 + r.height, by + ch);
      const std::uint32_t child = a.at(row, col);
      if (child >= kprev)
        throw DomainError("arrangement cell " + cell_name({row, col}) + " references missing id " +
                          std::to_string(child + 1));
      render_into(spec, level - 1, child, {x0 - bx, y0 - by, x1 - x0, y1 - y0}, dst, dx + x0 - r.x0,
                  dy + y0 - r.y0);
    }
  }
}

}  // namespace

Patch render_region(const HierarchySpec& spec, std::size_t level, std::size_t id, const Rect& local,
                    std::uint64_t cap) {
  const std::int64_t w = spec.width(level), h = spec.height(level);
  if (local.x0 < 0 || local.y0 < 0 || local.width <= 0 || local.height <= 0 || local.x0 + local.width > w ||
      local.y0 + local.height > h)
    throw DomainError("region exceeds the level patch support");
  if (id >= spec.patch_count(level))
    throw DomainError("level " + std::to_string(level) + " has no patch " + std::to_string(id + 1));
  check_cap(static_cast<std::uint64_t>(local.width) * static_cast<std::uint64_t>(local.height), cap);
  const Point o = spec.frame_origin(level);
  Patch out(local.width, local.height, {o.x + local.x0, o.y + local.y0});
  render_into(spec, level, id, local, out, 0, 0);
  return out;
}

Patch materialize(const HierarchySpec& spec, std::size_t level, std::size_t id, std::uint64_t cap) {
  const std::int64_t w = spec.width(level), h = spec.height(level);
  BigInt cells = BigInt(w) * h;
  if (cells > cap)
    throw ResourceError("materialization needs " + to_string(cells) + " cells, cap is " + std::to_string(cap));
  Patch p = render_region(spec, level, id, {0, 0, w, h}, cap);
  if (p.boundary_is_full()) p.set_full_boundary(true);
  return p;
}

bool SchemeReport::all_passed() const {
  for (const auto& p : properties)
    if (!p.passed) return false;
  return true;
}

const PropertyResult& SchemeReport::get(const std::string& name) const {
  for (const auto& p : properties)
    if (p.name == name) return p;
  throw DomainError("no property named " + name);
}

SchemeReport validate_scheme(const HierarchySpec& spec) {
  PropertyResult f1{"F1", true, ""}, f2{"F2", true, ""}, f3{"F3", true, ""};
  PropertyResult f4{"F4", true, ""}, f5{"F5", true, ""}, f6{"F6", true, ""};
  auto fail = [](PropertyResult& p, std::string w) {
    if (p.passed) {
      p.passed = false;
      p.witness = std::move(w);
    }
  };

  if (spec.depth() == 0) {
    fail(f1, "empty hierarchy");
    return {{f1, f2, f3, f4, f5, f6}};
  }
  const auto& base = spec.level(1).patches;
  for (std::size_t i = 1; i < base.size(); ++i)
    if (base[i].width() != base[0].width() || base[i].height() != base[0].height())
      fail(f3, "level 1 patch " + std::to_string(i + 1) + " has a different support");

  for (std::size_t n = 2; n <= spec.depth(); ++n) {
    const auto& lvl = spec.level(n);
    const std::string at = "level " + std::to_string(n);
    const Arrangement& first = lvl.arrangements.front();
    const std::size_t kprev = spec.patch_count(n - 1);
    bool shapes_ok = true;
    for (std::size_t j = 0; j < lvl.arrangements.size(); ++j) {
      const auto& a = lvl.arrangements[j];
      if (a.rows() != first.rows() || a.cols() != first.cols()) {
        fail(f3, at + " patch " + std::to_string(j + 1) + " grid is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ", expected " + std::to_string(first.rows()) + "x" +
                     std::to_string(first.cols()));
        shapes_ok = false;
      }
    }
    const GridCell fc = lvl.frame_cell;
    if (fc.row < 0 || fc.col < 0 || fc.row >= first.rows() || fc.col >= first.cols()) {
      fail(f1, at + " frame cell " + cell_name(fc) + " outside the grid");
      continue;
    }
    if (fc.row == 0 || fc.col == 0 || fc.row == first.rows() - 1 || fc.col == first.cols() - 1)
      fail(f2, at + " frame cell " + cell_name(fc) + " touches the grid edge; F_" + std::to_string(n - 1) +
                   " does not grow on every side");

    for (std::size_t j = 0; j < lvl.arrangements.size(); ++j) {
      const auto& a = lvl.arrangements[j];
      std::vector<bool> seen(kprev, false);
      for (std::int64_t r = 0; r < a.rows(); ++r)
        for (std::int64_t c = 0; c < a.cols(); ++c) {
          const auto id = a.at(r, c);
          if (id >= kprev)
            fail(f4, at + " patch " + std::to_string(j + 1) + " cell " + cell_name({r, c}) +
                         " references id " + std::to_string(id + 1) + " of " + std::to_string(kprev));
          else
            seen[id] = true;
        }
      for (std::size_t i = 0; i < kprev; ++i)
        if (!seen[i])
          fail(f5, at + " patch " + std::to_string(j + 1) + " lacks level-" + std::to_string(n - 1) +
                       " patch " + std::to_string(i + 1));
    }
    if (lvl.anchored && shapes_ok && lvl.arrangements.front().at(fc.row, fc.col) != 0)
      fail(f6, at + " patch 1 carries patch " + std::to_string(lvl.arrangements.front().at(fc.row, fc.col) + 1) +
                   " at frame cell " + cell_name(fc));
  }
  return {{f1, f2, f3, f4, f5, f6}};
}

std::uint64_t count_matches(const Patch& hay, const Patch& needle, std::int64_t x0, std::int64_t x1,
                            std::int64_t y0, std::int64_t y1) {
  const std::int64_t w = needle.width(), h = needle.height();
  x1 = std::min(x1, hay.width() - w);
  y1 = std::min(y1, hay.height() - h);
  x0 = std::max<std::int64_t>(x0, 0);
  y0 = std::max<std::int64_t>(y0, 0);
  std::uint64_t n = 0;
  for (std::int64_t y = y0; y <= y1; ++y)
    for (std::int64_t x = x0; x <= x1; ++x) {
      bool ok = true;
      for (std::int64_t j = 0; j < h && ok; ++j)
        for (std::int64_t i = 0; i < w; ++i)
          if (hay.at(x + i, y + j) != needle.at(i, j)) {
            ok = false;
            break;
          }
      if (ok) ++n;
    }
  return n;
}

std::uint64_t count_matches(const Patch& hay, const Patch& needle) {
  return count_matches(hay, needle, 0, hay.width() - needle.width(), 0, hay.height() - needle.height());
}

OccurrenceCounter::OccurrenceCounter(const HierarchySpec& spec, Patch needle, std::uint64_t cap)
    : spec_(spec), needle_(std::move(needle)), cap_(cap) {}

BigInt OccurrenceCounter::count(std::size_t level, std::size_t id, OccurrenceMode mode) {
  if (id >= spec_.patch_count(level))
    throw DomainError("level " + std::to_string(level) + " has no patch " + std::to_string(id + 1));
  if (needle_.width() > spec_.width(level) || needle_.height() > spec_.height(level))
    throw DomainError("needle larger than the target patch");
  return mode == OccurrenceMode::sliding ? sliding(level, id) : block_aligned(level, id);
}

BigInt OccurrenceCounter::block_aligned(std::size_t level, std::size_t id) {
  if (!block_match_) {
    std::size_t m = 0;
    for (std::size_t l = 1; l <= spec_.depth(); ++l)
      if (spec_.width(l) == needle_.width() && spec_.height(l) == needle_.height()) {
        m = l;
        break;
      }
    if (m == 0) throw DomainError("needle size matches no block level");
    std::vector<bool> match(spec_.patch_count(m));
    for (std::size_t i = 0; i < match.size(); ++i)
      match[i] = materialize(spec_, m, i, cap_).same_pattern(needle_);
    block_match_.emplace(m, std::move(match));
  }
  const auto& [m, match] = *block_match_;
  if (m > level) return 0;
  const IntMatrix counts = block_count_matrix(spec_, m, level);
  BigInt total = 0;
  for (std::size_t i = 0; i < match.size(); ++i)
    if (match[i]) total += counts(i, id);
  return total;
}

BigInt OccurrenceCounter::sliding(std::size_t level, std::size_t id) {
  const std::int64_t w = needle_.width(), h = needle_.height();
  if (w > spec_.width(level) || h > spec_.height(level)) return 0;
  auto key = std::make_pair(level, id);
  if (auto it = full_.find(key); it != full_.end()) return it->second;

  BigInt total = 0;
  if (level == 1 || w > spec_.width(level - 1) || h > spec_.height(level - 1)) {
    total = count_matches(materialize(spec_, level, id, cap_), needle_);
  } else {
    const Arrangement& a = spec_.level(level).arrangements.at(id);
    for (std::int64_t r = 0; r < a.rows(); ++r)
      for (std::int64_t c = 0; c < a.cols(); ++c) {
        total += sliding(level - 1, a.at(r, c));
        const bool right = c + 1 < a.cols(), up = r + 1 < a.rows();
        if (right) total += straddle_right(level - 1, a.at(r, c), a.at(r, c + 1));
        if (up) total += straddle_up(level - 1, a.at(r, c), a.at(r + 1, c));
        if (right && up)
          total += straddle_diag(level - 1, a.at(r, c), a.at(r, c + 1), a.at(r + 1, c), a.at(r + 1, c + 1));
      }
  }
  full_.emplace(key, total);
  return total;
}

BigInt OccurrenceCounter::straddle_right(std::size_t cl, std::uint32_t left, std::uint32_t right) {
  const std::int64_t w = needle_.width(), h = needle_.height();
  if (w == 1) return 0;
  auto key = std::make_tuple(cl, left, right);
  if (auto it = right_.find(key); it != right_.end()) return it->second;
  const std::int64_t cw = spec_.width(cl), ch = spec_.height(cl);
  check_cap(static_cast<std::uint64_t>(2 * (w - 1)) * static_cast<std::uint64_t>(ch), cap_);
  Patch band(2 * (w - 1), ch);
  render_into(spec_, cl, left, {cw - w + 1, 0, w - 1, ch}, band, 0, 0);
  render_into(spec_, cl, right, {0, 0, w - 1, ch}, band, w - 1, 0);
  BigInt n = count_matches(band, needle_, 0, w - 2, 0, ch - h);
  right_.emplace(key, n);
  return n;
}

BigInt OccurrenceCounter::straddle_up(std::size_t cl, std::uint32_t below, std::uint32_t above) {
  const std::int64_t w = needle_.width(), h = needle_.height();
  if (h == 1) return 0;
  auto key = std::make_tuple(cl, below, above);
  if (auto it = up_.find(key); it != up_.end()) return it->second;
  const std::int64_t cw = spec_.width(cl), ch = spec_.height(cl);
  check_cap(static_cast<std::uint64_t>(2 * (h - 1)) * static_cast<std::uint64_t>(cw), cap_);
  Patch band(cw, 2 * (h - 1));
  render_into(spec_, cl, below, {0, ch - h + 1, cw, h - 1}, band, 0, 0);
  render_into(spec_, cl, above, {0, 0, cw, h - 1}, band, 0, h - 1);
  BigInt n = count_matches(band, needle_, 0, cw - w, 0, h - 2);
  up_.emplace(key, n);
  return n;
}

BigInt OccurrenceCounter::straddle_diag(std::size_t cl, std::uint32_t ll, std::uint32_t lr, std::uint32_t ul,
                                        std::uint32_t ur) {
  const std::int64_t w = needle_.width(), h = needle_.height();
  if (w == 1 || h == 1) return 0;
  auto key = std::make_tuple(cl, ll, lr, ul, ur);
  if (auto it = diag_.find(key); it != diag_.end()) return it->second;
  const std::int64_t cw = spec_.width(cl), ch = spec_.height(cl);
  Patch quad(2 * (w - 1), 2 * (h - 1));
  render_into(spec_, cl, ll, {cw - w + 1, ch - h + 1, w - 1, h - 1}, quad, 0, 0);
  render_into(spec_, cl, lr, {0, ch - h + 1, w - 1, h - 1}, quad, w - 1, 0);
  render_into(spec_, cl, ul, {cw - w + 1, 0, w - 1, h - 1}, quad, 0, h - 1);
  render_into(spec_, cl, ur, {0, 0, w - 1, h - 1}, quad, w - 1, h - 1);
  BigInt n = count_matches(quad, needle_, 0, w - 2, 0, h - 2);
  diag_.emplace(key, n);
  return n;
}

BigInt count_occurrences(const HierarchySpec& spec, const Patch& needle, std::size_t level, std::size_t id,
                         OccurrenceMode mode, std::uint64_t cap) {
  OccurrenceCounter counter(spec, needle, cap);
  return counter.count(level, id, mode);
}

IntMatrix block_count_matrix(const HierarchySpec& spec, std::size_t m, std::size_t n) {
  if (m < 1 || m > n || n > spec.depth()) throw DomainError("block counts need 1 <= m <= n <= depth");
  IntMatrix out = IntMatrix::identity(spec.patch_count(m));
  for (std::size_t l = m + 1; l <= n; ++l) out = out * spec.step_counts(l);
  return out;
}

RatMatrix block_frequency_matrix(const HierarchySpec& spec, std::size_t m, std::size_t n) {
  if (m >= n) throw DomainError("block frequencies need m < n");
  const IntMatrix counts = block_count_matrix(spec, m, n);
  BigInt blocks = 1;
  for (std::size_t l = m + 1; l <= n; ++l) {
    const auto& a = spec.level(l).arrangements.front();
    blocks *= BigInt(a.rows()) * a.cols();
  }
  RatMatrix out(counts.rows(), counts.cols());
  for (std::size_t i = 0; i < counts.rows(); ++i)
    for (std::size_t j = 0; j < counts.cols(); ++j) out(i, j) = Rational(counts(i, j), blocks);
  return out;
}

}  // namespace delone
