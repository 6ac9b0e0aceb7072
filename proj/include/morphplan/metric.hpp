#pragma once

#include "morphplan/config.hpp"

namespace morphplan {

// Minimum over translations of the optimal-assignment summed per-cell
// Manhattan distance between the two shapes. Exact (candidate translations
// are coordinate differences; a sorted per-axis matching bounds the search,
// exact costs come from an assignment DP). Memoized by shape pair; symmetric.
// Throws SizeMismatch.
int group_manhattan_distance(const Configuration& a, const Configuration& b);

}  // namespace morphplan
