#pragma once

#include <vector>

#include "morphplan/graph.hpp"

namespace morphplan {

// BFS exploration tree where a vertex may appear many times: a node's children
// are the graph neighbors not already on its own root path, so each root path
// is a simple path and depth is bounded by the vertex count.
struct TreeNode {
    ModuleId module;
    int parent;  // index into nodes, -1 for root
    int depth;
};

struct ExtendedTree {
    std::vector<TreeNode> nodes;  // BFS order, root first

    std::vector<ModuleId> root_path(int index) const;  // root..node inclusive
    int max_depth() const;
};

ExtendedTree build_extended_tree(const ConnectionGraph& g, ModuleId root);

// Unordered non-adjacent vertex pairs, ordered by first co-occurrence at equal
// depth across the per-root trees (root order ascending), then any remaining
// non-adjacent pairs in sorted order. Extensionally: every non-adjacent pair,
// exactly once.
std::vector<EdgeKey> candidate_pairs(const ConnectionGraph& g);

}  // namespace morphplan
