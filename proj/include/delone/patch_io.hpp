#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "delone/lattice.hpp"

namespace delone::io {

/// Thrown on malformed input files; message carries the line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ".dpf": `PATCH <w> <h> <ox> <oy> [full_boundary]` then h rows, top row first.
Patch read_patch(std::istream& in);
void write_patch(std::ostream& out, const Patch& patch);
Patch load_patch(const std::string& path);
void save_patch(const std::string& path, const Patch& patch);

// Points file: one `x y` per line, `#` comments.
std::vector<Point> read_points(std::istream& in);
void write_points(std::ostream& out, const std::vector<Point>& points);
/// Smallest patch whose support covers the points.
Patch patch_from_points(const std::vector<Point>& points);

// Map file: `x y -> u v` per line.
std::map<Point, Point> read_map(std::istream& in);
void write_map(std::ostream& out, const std::map<Point, Point>& images);
std::map<Point, Point> load_map(const std::string& path);

// Plain PBM ("P1"), top row first, 1 = occupied.
void write_pbm(std::ostream& out, const Patch& patch);
Patch read_pbm(std::istream& in, Point origin = {});

/// Line reader that strips `#` comments and blank lines, tracking line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  bool next(std::string& line);
  int line_number() const { return line_no_; }
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::istream& in_;
  int line_no_ = 0;
};

std::vector<std::string> split_ws(const std::string& line);

}  // namespace delone::io
