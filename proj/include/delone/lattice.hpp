#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "delone/rational.hpp"

namespace delone {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
};

/// A point of (1/2)Z^2, stored with doubled coordinates so arithmetic stays integral.
struct HalfPoint {
  std::int64_t x2 = 0;
  std::int64_t y2 = 0;

  static HalfPoint from(Point p) { return {2 * p.x, 2 * p.y}; }
  Rational x() const { return Rational(x2, 2); }
  Rational y() const { return Rational(y2, 2); }

  friend auto operator<=>(const HalfPoint&, const HalfPoint&) = default;
  HalfPoint operator+(const HalfPoint& o) const { return {x2 + o.x2, y2 + o.y2}; }
  HalfPoint operator-(const HalfPoint& o) const { return {x2 - o.x2, y2 - o.y2}; }
};

using PointPair = std::pair<Point, Point>;

inline std::int64_t norm_sq(Point p) { return p.x * p.x + p.y * p.y; }
inline Rational norm_sq(HalfPoint p) { return Rational(p.x2 * p.x2 + p.y2 * p.y2, 4); }

/// Axis-aligned lattice rectangle [x0, x0+width) x [y0, y0+height).
struct Rect {
  std::int64_t x0 = 0;
  std::int64_t y0 = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;

  bool contains(Point p) const {
    return p.x >= x0 && p.x < x0 + width && p.y >= y0 && p.y < y0 + height;
  }
  std::int64_t area() const { return width * height; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Packed bit storage.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::uint64_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::uint64_t size() const { return size_; }
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::uint64_t i, bool v = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  std::uint64_t count() const;
  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Finite subset of Z^2 on a rectangular support. Cell (0,0) is the bottom-left
/// cell and sits at lattice position `origin`; storage is row-major from the bottom row.
class Patch {
 public:
  Patch() = default;
  Patch(std::int64_t width, std::int64_t height, Point origin = {}, bool full_boundary = false);

  /// Rows given top row first, each a string over {0,1}.
  static Patch from_rows(const std::vector<std::string>& rows_top_down, Point origin = {},
                         bool full_boundary = false);
  static Patch full(std::int64_t width, std::int64_t height, Point origin = {});

  std::int64_t width() const { return width_; }
  std::int64_t height() const { return height_; }
  Point origin() const { return origin_; }
  void set_origin(Point o) { origin_ = o; }
  bool full_boundary() const { return full_boundary_; }
  Rect support() const { return {origin_.x, origin_.y, width_, height_}; }
  std::uint64_t cell_count() const { return static_cast<std::uint64_t>(width_) * height_; }

  bool at(std::int64_t col, std::int64_t row) const { return bits_.test(index(col, row)); }
  void set(std::int64_t col, std::int64_t row, bool v = true) { bits_.set(index(col, row), v); }
  /// Membership by absolute lattice coordinates; false outside the support.
  bool contains(Point p) const;

  std::uint64_t count() const { return bits_.count(); }
  std::vector<Point> points() const;

  /// Sub-rectangle in local coordinates; the result's origin is the absolute position.
  Patch crop(std::int64_t col, std::int64_t row, std::int64_t w, std::int64_t h) const;
  /// Same occupancy on same-size support, origin ignored.
  bool same_pattern(const Patch& other) const;

  /// Rows top row first.
  std::vector<std::string> rows_top_down() const;

  /// Re-validates the full_boundary flag against the data.
  bool boundary_is_full() const;
  void set_full_boundary(bool flag);

  friend bool operator==(const Patch&, const Patch&) = default;

 private:
  std::uint64_t index(std::int64_t col, std::int64_t row) const {
    return static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(width_) +
           static_cast<std::uint64_t>(col);
  }

  std::int64_t width_ = 0;
  std::int64_t height_ = 0;
  Point origin_{};
  bool full_boundary_ = false;
  Bitset bits_;
};

struct DeloneParams {
  Rational separation;
  Rational covering_radius;

  /// Throws unless both are positive and separation <= 2 * covering radius.
  static DeloneParams make(Rational separation, Rational covering_radius);
};

/// Finite injective map D -> Z^2 on a window, with D having the 2Z-property in the window.
class CandidateMap {
 public:
  /// Validates injectivity, containment in the window and the 2Z-property.
  static CandidateMap make(Rect window, std::map<Point, Point> images);
  /// Only checks injectivity and containment.
  static CandidateMap make_unchecked_2z(Rect window, std::map<Point, Point> images);

  const Rect& window() const { return window_; }
  const std::map<Point, Point>& images() const { return images_; }
  bool in_domain(Point p) const { return images_.count(p) != 0; }
  Point operator()(Point p) const;
  std::vector<Point> domain() const;

  /// f(2MN, 0) - f(0, 0).
  Point baseline_vector(std::int64_t M, std::int64_t N) const;

 private:
  Rect window_;
  std::map<Point, Point> images_;
};

/// Values of the hat-extension on a full window.
using HatMap = std::map<Point, HalfPoint>;

struct DistortionReport {
  Rational max_expansion_sq;
  Rational min_expansion_sq;
  Rational bilip_constant_sq;
  PointPair max_witness;
  PointPair min_witness;

  double max_expansion() const;
  double min_expansion() const;
  double bilip_constant() const;
};

/// True iff every support cell whose absolute first coordinate is even is occupied.
bool has_2z_property(const Patch& patch);

/// Occupied fraction of the M x M lower-left corner block.
Rational corner_density(const Patch& patch, std::int64_t corner_side);

/// f on the domain, f(x + (1,0)) - (1/2, 0) elsewhere in the window.
HatMap hat_extend(const CandidateMap& f);

DistortionReport distortion(const CandidateMap& f, std::span<const PointPair> pairs);
DistortionReport distortion(const HatMap& f, std::span<const PointPair> pairs);

/// All unordered pairs of distinct points, in lexicographic order.
std::vector<PointPair> all_pairs(std::span<const Point> points);
std::vector<Point> window_points(const Rect& window);

/// Squared expansion |f(a)-f(b)|^2 / |a-b|^2.
Rational expansion_sq(HalfPoint fa, HalfPoint fb, Point a, Point b);

std::string to_string(Point p);
std::string to_string(HalfPoint p);

}  // namespace delone
