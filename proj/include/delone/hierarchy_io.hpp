#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "delone/hierarchy.hpp"

namespace delone::io {

// ".dhs" hierarchy descriptor:
//   DHS 1
//   level 1 patches <k>            followed by k ".dpf" patch blocks
//   level <n> patches <k> frame <row> <col> [anchored] [note <text...>]
//   arrangement <rows> <cols>      followed by rows of 1-based child ids, top row first
HierarchySpec read_hierarchy(std::istream& in);
void write_hierarchy(std::ostream& out, const HierarchySpec& spec);
HierarchySpec load_hierarchy(const std::string& path);
void save_hierarchy(const std::string& path, const HierarchySpec& spec);

}  // namespace delone::io
