#pragma once

#include <map>
#include <vector>

#include "morphplan/config.hpp"
#include "morphplan/rng.hpp"
#include "morphplan/schedule.hpp"

namespace morphplan {

struct BirrtResult {
    bool success = false;
    std::vector<Configuration> path;         // canonical fixed shapes start..goal
    int iterations = 0;
    std::vector<Step> steps;                 // move pairs expanded, start labels
    std::map<ModuleId, ModuleId> goalToStart;  // set on success
};

// Bidirectional RRT over fixed shapes with one whole morphpivot as the
// primitive. Each iteration samples a random shape, extends the nearer tree's
// nearest node with the move minimizing the assignment metric to the sample
// (forward moves on the start tree, reverse moves on the goal tree), and joins
// when a shape appears in both trees. Deterministic per seed. Throws
// SizeMismatch.
BirrtResult birrt_plan(const Configuration& start, const Configuration& goal,
                       int maxIterations, Rng& rng);

}  // namespace morphplan
