#pragma once

#include <string>

#include "grouprec/group.hpp"

namespace grouprec {

/// Reads a group file: a "degree n" header line followed by one generator
/// per line in cycle or image notation (1-based points).  Blank lines and
/// '#' comments are skipped.
PermutationGroup read_group_file(const std::string& path);

void write_group_file(const std::string& path, const PermutationGroup& group);

}  // namespace grouprec
