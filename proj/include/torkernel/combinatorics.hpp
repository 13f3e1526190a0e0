#pragma once

#include "torkernel/fan.hpp"

#include <set>
#include <vector>

namespace torkernel {

/// Sorted list of distinct indices.
using IndexSet = std::vector<int>;
using IndexSetFamily = std::set<IndexSet>;

/// All subsets of `s` with one element fewer. Empty input gives an empty family.
IndexSetFamily subsets_minus1(const IndexSet& s);

/// k > 0: every k-element subset. k == 0: the full powerset, including the
/// empty set and `s` itself. Throws std::invalid_argument when k > |s|.
IndexSetFamily set_of_all_subsets(const IndexSet& s, int k);

/// Minimal non-faces of the fan: index sets lying in no maximal cone whose
/// every one-smaller subset does lie in some maximal cone. Throws
/// std::invalid_argument when the cones differ in size.
IndexSetFamily prim_coll(const std::vector<Cone>& cones);

/// The cone with its i-th entry replaced by `l`, for every position i.
std::vector<Cone> permut(const Cone& cone, int l);

}  // namespace torkernel
