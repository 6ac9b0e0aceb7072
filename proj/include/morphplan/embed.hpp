#pragma once

#include <vector>

#include "morphplan/config.hpp"
#include "morphplan/graph.hpp"

namespace morphplan {

// All lattice placements realizing the graph: every edge joins unit-adjacent
// cells, faces that are recorded must point the stated way, cells are distinct.
// Placements may create adjacencies beyond g's edges (the canonical closure re-
// adds them). Results are translation-normalized with labels preserved, deduped
// and deterministically ordered. Throws NoEmbedding when none exists.
std::vector<Configuration> embed_graph(const ConnectionGraph& g);

}  // namespace morphplan
