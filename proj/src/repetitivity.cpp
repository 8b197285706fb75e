#include <unordered_map>

#include "delone/hierarchy.hpp"

namespace delone {

namespace {

struct PatternIndex {
  std::int64_t cols = 0, rows = 0;  // positions of r x r windows
  std::vector<std::vector<std::int64_t>> prefix;  // per pattern, (rows+1) x (cols+1)

  std::int64_t sum(std::size_t p, std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) const {
    const auto& s = prefix[p];
    auto at = [&](std::int64_t x, std::int64_t y) { return s[static_cast<std::size_t>(y * (cols + 1) + x)]; };
    return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
  }
};

PatternIndex index_patterns(const Patch& patch, std::int64_t r) {
  PatternIndex idx;
  idx.cols = patch.width() - r + 1;
  idx.rows = patch.height() - r + 1;
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<std::size_t> at(static_cast<std::size_t>(idx.cols * idx.rows));
  std::string key(static_cast<std::size_t>(r * r), '0');
  for (std::int64_t y = 0; y < idx.rows; ++y)
    for (std::int64_t x = 0; x < idx.cols; ++x) {
      for (std::int64_t j = 0; j < r; ++j)
        for (std::int64_t i = 0; i < r; ++i) key[static_cast<std::size_t>(j * r + i)] = patch.at(x + i, y + j) ? '1' : '0';
      auto [it, fresh] = ids.emplace(key, ids.size());
      at[static_cast<std::size_t>(y * idx.cols + x)] = it->second;
    }
  const std::size_t stride = static_cast<std::size_t>(idx.cols + 1);
  idx.prefix.assign(ids.size(), std::vector<std::int64_t>(stride * static_cast<std::size_t>(idx.rows + 1), 0));
  for (std::size_t p = 0; p < ids.size(); ++p) {
    auto& s = idx.prefix[p];
    for (std::int64_t y = 0; y < idx.rows; ++y)
      for (std::int64_t x = 0; x < idx.cols; ++x) {
        const std::size_t o = static_cast<std::size_t>(y + 1) * stride + static_cast<std::size_t>(x + 1);
        s[o] = (at[static_cast<std::size_t>(y * idx.cols + x)] == p ? 1 : 0) + s[o - 1] + s[o - stride] -
               s[o - stride - 1];
      }
  }
  return idx;
}

bool every_window_complete(const PatternIndex& idx, const Patch& patch, std::int64_t r, std::int64_t R) {
  const std::int64_t span = R - r + 1;  // positions per window side
  for (std::int64_t b = 0; b + R <= patch.height(); ++b)
    for (std::int64_t a = 0; a + R <= patch.width(); ++a)
      for (std::size_t p = 0; p < idx.prefix.size(); ++p)
        if (idx.sum(p, a, b, a + span, b + span) == 0) return false;
  return true;
}

}  // namespace

std::optional<std::int64_t> estimate_repetitivity(const Patch& patch, std::int64_t r) {
  if (r <= 0) throw DomainError("r must be positive");
  if (patch.width() < 3 * r || patch.height() < 3 * r) throw DomainError("patch side must be at least 3r");
  const PatternIndex idx = index_patterns(patch, r);
  std::int64_t lo = r, hi = std::min(patch.width(), patch.height()) - r;
  if (!every_window_complete(idx, patch, r, hi)) return std::nullopt;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (every_window_complete(idx, patch, r, mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace delone
