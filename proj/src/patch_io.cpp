#include "delone/patch_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace delone::io {

bool LineReader::next(std::string& line) {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_no_;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = raw.find_last_not_of(" \t\r");
    line = raw.substr(first, last - first + 1);
    return true;
  }
  return false;
}

void LineReader::fail(const std::string& what) const {
  throw ParseError("line " + std::to_string(line_no_) + ": " + what);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

namespace {

std::int64_t parse_int(const LineReader& rd, const std::string& tok) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) rd.fail("malformed integer '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    rd.fail("malformed integer '" + tok + "'");
  }
}

Patch read_patch_body(LineReader& rd, const std::vector<std::string>& header) {
  if (header.size() < 5 || header.size() > 6 || header[0] != "PATCH")
    rd.fail("expected 'PATCH <width> <height> <origin_x> <origin_y> [full_boundary]'");
  const auto w = parse_int(rd, header[1]);
  const auto h = parse_int(rd, header[2]);
  const Point origin{parse_int(rd, header[3]), parse_int(rd, header[4])};
  bool full = false;
  if (header.size() == 6) {
    if (header[5] != "full_boundary") rd.fail("unknown patch flag '" + header[5] + "'");
    full = true;
  }
  if (w <= 0 || h <= 0) rd.fail("patch dimensions must be positive");
  std::vector<std::string> rows;
  std::string line;
  for (std::int64_t r = 0; r < h; ++r) {
    if (!rd.next(line)) rd.fail("unexpected end of patch rows");
    if (static_cast<std::int64_t>(line.size()) != w)
      rd.fail("row has " + std::to_string(line.size()) + " cells, expected " + std::to_string(w));
    rows.push_back(line);
  }
  try {
    return Patch::from_rows(rows, origin, full);
  } catch (const DomainError& e) {
    rd.fail(e.what());
  }
}

}  // namespace

Patch read_patch(std::istream& in) {
  LineReader rd(in);
  std::string line;
  if (!rd.next(line)) rd.fail("empty patch file");
  return read_patch_body(rd, split_ws(line));
}

void write_patch(std::ostream& out, const Patch& patch) {
  out << "PATCH " << patch.width() << ' ' << patch.height() << ' ' << patch.origin().x << ' '
      << patch.origin().y;
  if (patch.full_boundary()) out << " full_boundary";
  out << '\n';
  for (const auto& row : patch.rows_top_down()) out << row << '\n';
}

Patch load_patch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_patch(in);
}

void save_patch(const std::string& path, const Patch& patch) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_patch(out, patch);
}

std::vector<Point> read_points(std::istream& in) {
  LineReader rd(in);
  std::vector<Point> pts;
  std::string line;
  while (rd.next(line)) {
    auto tok = split_ws(line);
    if (tok.size() != 2) rd.fail("expected 'x y'");
    pts.push_back({parse_int(rd, tok[0]), parse_int(rd, tok[1])});
  }
  return pts;
}

void write_points(std::ostream& out, const std::vector<Point>& points) {
  for (const auto& p : points) out << p.x << ' ' << p.y << '\n';
}

Patch patch_from_points(const std::vector<Point>& points) {
  if (points.empty()) throw DomainError("no points");
  std::int64_t x0 = std::numeric_limits<std::int64_t>::max(), y0 = x0;
  std::int64_t x1 = std::numeric_limits<std::int64_t>::min(), y1 = x1;
  for (const auto& p : points) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  Patch patch(x1 - x0 + 1, y1 - y0 + 1, {x0, y0});
  for (const auto& p : points) patch.set(p.x - x0, p.y - y0);
  return patch;
}

std::map<Point, Point> read_map(std::istream& in) {
  LineReader rd(in);
  std::map<Point, Point> images;
  std::string line;
  while (rd.next(line)) {
    auto tok = split_ws(line);
    if (tok.size() != 5 || tok[2] != "->") rd.fail("expected 'x y -> u v'");
    const Point x{parse_int(rd, tok[0]), parse_int(rd, tok[1])};
    const Point u{parse_int(rd, tok[3]), parse_int(rd, tok[4])};
    if (!images.emplace(x, u).second) rd.fail("duplicate domain point " + to_string(x));
  }
  return images;
}

void write_map(std::ostream& out, const std::map<Point, Point>& images) {
  for (const auto& [x, u] : images) out << x.x << ' ' << x.y << " -> " << u.x << ' ' << u.y << '\n';
}

std::map<Point, Point> load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_map(in);
}

void write_pbm(std::ostream& out, const Patch& patch) {
  out << "P1\n" << patch.width() << ' ' << patch.height() << '\n';
  for (const auto& row : patch.rows_top_down()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ' ';
      out << row[i];
    }
    out << '\n';
  }
}

Patch read_pbm(std::istream& in, Point origin) {
  LineReader rd(in);
  std::string line;
  std::vector<std::string> tokens;
  while (rd.next(line))
    for (auto& t : split_ws(line)) tokens.push_back(t);
  if (tokens.size() < 3 || tokens[0] != "P1") rd.fail("not a plain PBM (P1) file");
  const auto w = parse_int(rd, tokens[1]);
  const auto h = parse_int(rd, tokens[2]);
  std::string cells;
  for (std::size_t i = 3; i < tokens.size(); ++i) cells += tokens[i];
  if (w <= 0 || h <= 0 || static_cast<std::int64_t>(cells.size()) != w * h)
    rd.fail("PBM pixel count does not match dimensions");
  std::vector<std::string> rows;
  for (std::int64_t r = 0; r < h; ++r)
    rows.push_back(cells.substr(static_cast<std::size_t>(r * w), static_cast<std::size_t>(w)));
  return Patch::from_rows(rows, origin);
}

}  // namespace delone::io
