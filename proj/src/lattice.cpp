#include "delone/lattice.hpp"

#include <bit>
#include <cmath>
#include <set>

namespace delone {

std::uint64_t Bitset::count() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

Patch::Patch(std::int64_t width, std::int64_t height, Point origin, bool full_boundary)
    : width_(width), height_(height), origin_(origin), full_boundary_(false) {
  if (width <= 0 || height <= 0) throw DomainError("patch dimensions must be positive");
  bits_ = Bitset(static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height));
  if (full_boundary) set_full_boundary(true);
}

Patch Patch::from_rows(const std::vector<std::string>& rows_top_down, Point origin,
                       bool full_boundary) {
  if (rows_top_down.empty()) throw DomainError("patch needs at least one row");
  const auto h = static_cast<std::int64_t>(rows_top_down.size());
  const auto w = static_cast<std::int64_t>(rows_top_down.front().size());
  Patch p(w, h, origin);
  for (std::int64_t r = 0; r < h; ++r) {
    const auto& line = rows_top_down[static_cast<std::size_t>(h - 1 - r)];
    if (static_cast<std::int64_t>(line.size()) != w)
      throw DomainError("patch rows have inconsistent widths");
    for (std::int64_t c = 0; c < w; ++c) {
      const char ch = line[static_cast<std::size_t>(c)];
      if (ch != '0' && ch != '1') throw DomainError("patch rows must be over {0,1}");
      p.set(c, r, ch == '1');
    }
  }
  p.set_full_boundary(full_boundary);
  return p;
}

Patch Patch::full(std::int64_t width, std::int64_t height, Point origin) {
  Patch p(width, height, origin);
  for (std::int64_t r = 0; r < height; ++r)
    for (std::int64_t c = 0; c < width; ++c) p.set(c, r);
  p.full_boundary_ = true;
  return p;
}

bool Patch::contains(Point p) const {
  const std::int64_t c = p.x - origin_.x;
  const std::int64_t r = p.y - origin_.y;
  if (c < 0 || r < 0 || c >= width_ || r >= height_) return false;
  return at(c, r);
}

std::vector<Point> Patch::points() const {
  std::vector<Point> out;
  out.reserve(count());
  for (std::int64_t r = 0; r < height_; ++r)
    for (std::int64_t c = 0; c < width_; ++c)
      if (at(c, r)) out.push_back({origin_.x + c, origin_.y + r});
  return out;
}

Patch Patch::crop(std::int64_t col, std::int64_t row, std::int64_t w, std::int64_t h) const {
  if (col < 0 || row < 0 || col + w > width_ || row + h > height_)
    throw DomainError("crop exceeds support");
  Patch out(w, h, {origin_.x + col, origin_.y + row});
  for (std::int64_t r = 0; r < h; ++r)
    for (std::int64_t c = 0; c < w; ++c)
      if (at(col + c, row + r)) out.set(c, r);
  return out;
}

bool Patch::same_pattern(const Patch& other) const {
  return width_ == other.width_ && height_ == other.height_ && bits_ == other.bits_;
}

std::vector<std::string> Patch::rows_top_down() const {
  std::vector<std::string> rows;
  rows.reserve(static_cast<std::size_t>(height_));
  for (std::int64_t r = height_ - 1; r >= 0; --r) {
    std::string line(static_cast<std::size_t>(width_), '0');
    for (std::int64_t c = 0; c < width_; ++c)
      if (at(c, r)) line[static_cast<std::size_t>(c)] = '1';
    rows.push_back(std::move(line));
  }
  return rows;
}

bool Patch::boundary_is_full() const {
  for (std::int64_t c = 0; c < width_; ++c)
    if (!at(c, 0) || !at(c, height_ - 1)) return false;
  for (std::int64_t r = 0; r < height_; ++r)
    if (!at(0, r) || !at(width_ - 1, r)) return false;
  return true;
}

void Patch::set_full_boundary(bool flag) {
  if (flag && !boundary_is_full())
    throw DomainError("full_boundary flag set but a boundary cell is empty");
  full_boundary_ = flag;
}

DeloneParams DeloneParams::make(Rational separation, Rational covering_radius) {
  if (separation <= 0 || covering_radius <= 0)
    throw DomainError("Delone parameters must be positive");
  if (separation > 2 * covering_radius)
    throw DomainError("separation must not exceed twice the covering radius");
  return {std::move(separation), std::move(covering_radius)};
}

namespace {

void check_injective_in_window(const Rect& window, const std::map<Point, Point>& images) {
  std::set<Point> seen;
  for (const auto& [x, fx] : images) {
    if (!window.contains(x))
      throw DomainError("map domain point " + to_string(x) + " lies outside the window");
    if (!seen.insert(fx).second)
      throw DomainError("map is not injective: image " + to_string(fx) + " repeated");
  }
}

}  // namespace

CandidateMap CandidateMap::make(Rect window, std::map<Point, Point> images) {
  check_injective_in_window(window, images);
  for (std::int64_t x = window.x0; x < window.x0 + window.width; ++x) {
    if (x % 2 != 0) continue;
    for (std::int64_t y = window.y0; y < window.y0 + window.height; ++y)
      if (!images.count({x, y}))
        throw DomainError("2Z-property violated: " + to_string(Point{x, y}) + " missing from domain");
  }
  CandidateMap f;
  f.window_ = window;
  f.images_ = std::move(images);
  return f;
}

CandidateMap CandidateMap::make_unchecked_2z(Rect window, std::map<Point, Point> images) {
  check_injective_in_window(window, images);
  CandidateMap f;
  f.window_ = window;
  f.images_ = std::move(images);
  return f;
}

Point CandidateMap::operator()(Point p) const {
  auto it = images_.find(p);
  if (it == images_.end()) throw DomainError("point " + to_string(p) + " not in map domain");
  return it->second;
}

std::vector<Point> CandidateMap::domain() const {
  std::vector<Point> out;
  out.reserve(images_.size());
  for (const auto& [x, fx] : images_) out.push_back(x);
  return out;
}

Point CandidateMap::baseline_vector(std::int64_t M, std::int64_t N) const {
  return (*this)({2 * M * N, 0}) - (*this)({0, 0});
}

double DistortionReport::max_expansion() const { return std::sqrt(to_double(max_expansion_sq)); }
double DistortionReport::min_expansion() const { return std::sqrt(to_double(min_expansion_sq)); }
double DistortionReport::bilip_constant() const { return std::sqrt(to_double(bilip_constant_sq)); }

bool has_2z_property(const Patch& patch) {
  if (patch.cell_count() == 0) throw DomainError("empty patch");
  const Point o = patch.origin();
  for (std::int64_t c = 0; c < patch.width(); ++c) {
    if ((o.x + c) % 2 != 0) continue;
    for (std::int64_t r = 0; r < patch.height(); ++r)
      if (!patch.at(c, r)) return false;
  }
  return true;
}

Rational corner_density(const Patch& patch, std::int64_t corner_side) {
  if (corner_side <= 0) throw DomainError("corner side must be positive");
  if (corner_side > patch.width() || corner_side > patch.height())
    throw DomainError("corner exceeds support");
  std::int64_t occupied = 0;
  for (std::int64_t r = 0; r < corner_side; ++r)
    for (std::int64_t c = 0; c < corner_side; ++c)
      if (patch.at(c, r)) ++occupied;
  return Rational(occupied, corner_side * corner_side);
}

HatMap hat_extend(const CandidateMap& f) {
  HatMap out;
  const Rect& w = f.window();
  for (std::int64_t y = w.y0; y < w.y0 + w.height; ++y) {
    for (std::int64_t x = w.x0; x < w.x0 + w.width; ++x) {
      const Point p{x, y};
      if (f.in_domain(p)) {
        out.emplace(p, HalfPoint::from(f(p)));
        continue;
      }
      const Point right{x + 1, y};
      if (!f.in_domain(right))
        throw DomainError("2Z-property violated: neither " + to_string(p) + " nor its right neighbour is in the domain");
      out.emplace(p, HalfPoint::from(f(right)) - HalfPoint{1, 0});
    }
  }
  return out;
}

Rational expansion_sq(HalfPoint fa, HalfPoint fb, Point a, Point b) {
  const std::int64_t d = norm_sq(a - b);
  if (d == 0) throw DomainError("pair with identical points");
  return norm_sq(fa - fb) / Rational(d);
}

namespace {

template <class Lookup>
DistortionReport distortion_impl(std::span<const PointPair> pairs, Lookup&& lookup) {
  if (pairs.empty()) throw DomainError("distortion needs at least one pair");
  DistortionReport rep;
  bool first = true;
  for (const auto& pr : pairs) {
    const Rational e = expansion_sq(lookup(pr.first), lookup(pr.second), pr.first, pr.second);
    if (first || e > rep.max_expansion_sq) {
      rep.max_expansion_sq = e;
      rep.max_witness = pr;
    }
    if (first || e < rep.min_expansion_sq) {
      rep.min_expansion_sq = e;
      rep.min_witness = pr;
    }
    first = false;
  }
  if (rep.min_expansion_sq == 0) throw DomainError("map collapses a pair; not injective");
  const Rational inv = 1 / rep.min_expansion_sq;
  rep.bilip_constant_sq = rep.max_expansion_sq > inv ? rep.max_expansion_sq : inv;
  if (rep.bilip_constant_sq < 1) rep.bilip_constant_sq = 1;
  return rep;
}

}  // namespace

DistortionReport distortion(const CandidateMap& f, std::span<const PointPair> pairs) {
  return distortion_impl(pairs, [&](Point p) { return HalfPoint::from(f(p)); });
}

DistortionReport distortion(const HatMap& f, std::span<const PointPair> pairs) {
  return distortion_impl(pairs, [&](Point p) {
    auto it = f.find(p);
    if (it == f.end()) throw DomainError("point " + to_string(p) + " not in extended map domain");
    return it->second;
  });
}

std::vector<PointPair> all_pairs(std::span<const Point> points) {
  std::vector<PointPair> out;
  out.reserve(points.size() * (points.size() - (points.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) out.emplace_back(points[i], points[j]);
  return out;
}

std::vector<Point> window_points(const Rect& window) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(window.area()));
  for (std::int64_t y = window.y0; y < window.y0 + window.height; ++y)
    for (std::int64_t x = window.x0; x < window.x0 + window.width; ++x) out.push_back({x, y});
  return out;
}

std::string to_string(Point p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

std::string to_string(HalfPoint p) {
  return "(" + to_string(p.x()) + "," + to_string(p.y()) + ")";
}

}  // namespace delone
