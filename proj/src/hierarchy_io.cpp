#include "delone/hierarchy_io.hpp"

#include <fstream>
#include <sstream>

#include "delone/patch_io.hpp"

namespace delone::io {

namespace {

std::int64_t to_int(const LineReader& rd, const std::string& tok) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) rd.fail("malformed integer '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    rd.fail("malformed integer '" + tok + "'");
  }
}

}  // namespace

HierarchySpec read_hierarchy(std::istream& in) {
  LineReader rd(in);
  std::string line;
  if (!rd.next(line) || split_ws(line) != std::vector<std::string>{"DHS", "1"}) rd.fail("expected 'DHS 1' header");

  HierarchySpec spec;
  std::size_t expected_level = 1;
  while (rd.next(line)) {
    auto tok = split_ws(line);
    if (tok.size() < 4 || tok[0] != "level" || tok[2] != "patches") rd.fail("expected 'level <n> patches <k> ...'");
    if (to_int(rd, tok[1]) != static_cast<std::int64_t>(expected_level))
      rd.fail("levels must appear in order; expected level " + std::to_string(expected_level));
    const auto k = to_int(rd, tok[3]);
    if (k <= 0) rd.fail("patch count must be positive");

    if (expected_level == 1) {
      std::vector<Patch> base;
      for (std::int64_t i = 0; i < k; ++i) {
        if (!rd.next(line)) rd.fail("missing level-1 patch block");
        std::string block = line + '\n';
        const auto head = split_ws(line);
        if (head.size() < 3 || head[0] != "PATCH") rd.fail("expected PATCH block");
        const auto h = to_int(rd, head[2]);
        for (std::int64_t r = 0; r < h; ++r) {
          if (!rd.next(line)) rd.fail("unexpected end of patch rows");
          block += line + '\n';
        }
        std::istringstream blk(block);
        try {
          base.push_back(read_patch(blk));
        } catch (const ParseError& e) {
          rd.fail(std::string("in patch block: ") + e.what());
        }
      }
      spec = HierarchySpec(std::move(base));
    } else {
      if (tok.size() < 7 || tok[4] != "frame") rd.fail("expected 'frame <row> <col>' after patch count");
      GridCell fc{to_int(rd, tok[5]), to_int(rd, tok[6])};
      bool anchored = false;
      std::string note;
      for (std::size_t i = 7; i < tok.size(); ++i) {
        if (tok[i] == "anchored") {
          anchored = true;
        } else if (tok[i] == "note") {
          for (std::size_t j = i + 1; j < tok.size(); ++j) note += (note.empty() ? "" : " ") + tok[j];
          break;
        } else {
          rd.fail("unknown level flag '" + tok[i] + "'");
        }
      }
      std::vector<Arrangement> arrs;
      for (std::int64_t i = 0; i < k; ++i) {
        if (!rd.next(line)) rd.fail("missing arrangement");
        auto head = split_ws(line);
        if (head.size() != 3 || head[0] != "arrangement") rd.fail("expected 'arrangement <rows> <cols>'");
        const auto rows = to_int(rd, head[1]), cols = to_int(rd, head[2]);
        if (rows <= 0 || cols <= 0) rd.fail("arrangement dimensions must be positive");
        Arrangement a(rows, cols);
        for (std::int64_t r = rows - 1; r >= 0; --r) {
          if (!rd.next(line)) rd.fail("unexpected end of arrangement rows");
          auto ids = split_ws(line);
          if (static_cast<std::int64_t>(ids.size()) != cols)
            rd.fail("arrangement row has " + std::to_string(ids.size()) + " ids, expected " + std::to_string(cols));
          for (std::int64_t c = 0; c < cols; ++c) {
            const auto id = to_int(rd, ids[static_cast<std::size_t>(c)]);
            if (id < 1) rd.fail("ids are 1-based");
            a.set(r, c, static_cast<std::uint32_t>(id - 1));
          }
        }
        arrs.push_back(std::move(a));
      }
      spec.add_level(std::move(arrs), fc, anchored, note);
    }
    ++expected_level;
  }
  if (spec.depth() == 0) rd.fail("no levels");
  return spec;
}

void write_hierarchy(std::ostream& out, const HierarchySpec& spec) {
  out << "DHS 1\n";
  for (std::size_t n = 1; n <= spec.depth(); ++n) {
    const auto& lvl = spec.level(n);
    out << "level " << n << " patches " << spec.patch_count(n);
    if (n == 1) {
      out << '\n';
      for (const auto& p : lvl.patches) write_patch(out, p);
      continue;
    }
    out << " frame " << lvl.frame_cell.row << ' ' << lvl.frame_cell.col;
    if (lvl.anchored) out << " anchored";
    if (!lvl.note.empty()) out << " note " << lvl.note;
    out << '\n';
    for (const auto& a : lvl.arrangements) {
      out << "arrangement " << a.rows() << ' ' << a.cols() << '\n';
      for (std::int64_t r = a.rows() - 1; r >= 0; --r) {
        for (std::int64_t c = 0; c < a.cols(); ++c) out << (c ? " " : "") << a.at(r, c) + 1;
        out << '\n';
      }
    }
  }
}

HierarchySpec load_hierarchy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_hierarchy(in);
}

void save_hierarchy(const std::string& path, const HierarchySpec& spec) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_hierarchy(out, spec);
}

}  // namespace delone::io
