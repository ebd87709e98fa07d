#pragma once

#include <string>
#include <vector>

#include "grouprec/group.hpp"

namespace grouprec {

/// Named example groups: "s<n>", "a<n>", "c<n>" (cyclic), "d<n>" (dihedral on
/// n points), "we6" (the degree-27 reflection group of order 51840), and
/// "rect8" (Z_2^2 x D_8 on 8 points).  Throws std::invalid_argument for
/// unknown names.
PermutationGroup named_group(const std::string& name);

/// The Young subgroup of a partition: the direct product of full symmetric
/// groups on its parts.
PermutationGroup young_group(const OrbitPartition& parts);
/// The full wreath-type stabilizer of an equal-size block partition.
PermutationGroup wreath_group(const OrbitPartition& blocks);

/// One representative per conjugacy class of subgroups of S_n, by exhaustive
/// closure search with double-coset pruning.  Deterministic order: by order,
/// then by the canonical element list.  Feasible for n <= 6.
std::vector<PermutationGroup> subgroup_class_reps(int n);

/// One representative per conjugacy class of transitive subgroups of S_n.
/// n <= 6 filters the full enumeration; n == 7 searches upward from the
/// 7-cycle (every transitive group of prime degree contains one).
std::vector<PermutationGroup> transitive_class_reps(int n);

}  // namespace grouprec
