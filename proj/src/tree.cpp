#include "morphplan/tree.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

namespace morphplan {

std::vector<ModuleId> ExtendedTree::root_path(int index) const {
    std::vector<ModuleId> path;
    for (int i = index; i != -1; i = nodes[i].parent) path.push_back(nodes[i].module);
    std::reverse(path.begin(), path.end());
    return path;
}

int ExtendedTree::max_depth() const {
    int d = 0;
    for (const TreeNode& n : nodes) d = std::max(d, n.depth);
    return d;
}

ExtendedTree build_extended_tree(const ConnectionGraph& g, ModuleId root) {
    ExtendedTree t;
    t.nodes.push_back({root, -1, 0});
    for (std::size_t head = 0; head < t.nodes.size(); ++head) {
        // Index-based loop: nodes grows while we scan it (queue-in-place).
        std::set<ModuleId> on_path;
        for (int i = static_cast<int>(head); i != -1; i = t.nodes[i].parent)
            on_path.insert(t.nodes[i].module);
        for (ModuleId nb : g.neighbors(t.nodes[head].module)) {
            if (on_path.count(nb)) continue;
            t.nodes.push_back({nb, static_cast<int>(head), t.nodes[head].depth + 1});
        }
    }
    return t;
}

std::vector<EdgeKey> candidate_pairs(const ConnectionGraph& g) {
    std::set<EdgeKey> emitted;
    std::vector<EdgeKey> out;
    auto push = [&](ModuleId a, ModuleId b) {
        if (a == b || g.has_edge(a, b)) return;
        EdgeKey k = make_edge_key(a, b);
        if (emitted.insert(k).second) out.push_back(k);
    };

    // Same-depth co-occurrence in the extended tree, without enumerating its
    // paths one by one: a module sits at depth d under some root exactly when
    // a simple path of d edges reaches it, so a DP over visited-sets yields
    // each root's depth levels directly. Matches build_extended_tree's levels
    // at a fraction of the cost (the tree itself can hold thousands of paths).
    const std::vector<ModuleId>& verts = g.vertices();
    const int n = static_cast<int>(verts.size());
    std::vector<std::vector<int>> nb(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.has_edge(verts[i], verts[j])) nb[i].push_back(j);

    for (int root = 0; root < n; ++root) {
        std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);  // mask -> end modules
        reach[1u << root] = 1u << root;
        std::vector<std::set<ModuleId>> by_depth(n);
        by_depth[0].insert(verts[root]);
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::uint32_t ends = reach[mask];
            if (!ends) continue;
            const int depth = std::popcount(mask) - 1;
            for (int m = 0; m < n; ++m) {
                if (!(ends & (1u << m))) continue;
                by_depth[depth].insert(verts[m]);
                for (int k : nb[m])
                    if (!(mask & (1u << k))) reach[mask | (1u << k)] |= 1u << k;
            }
        }
        for (const auto& level : by_depth)
            for (auto i = level.begin(); i != level.end(); ++i)
                for (auto j = std::next(i); j != level.end(); ++j) push(*i, *j);
    }
    // Safety sweep: same-level co-occurrence covers everything in practice, but
    // the contract is "all non-adjacent pairs", so make that unconditional.
    for (auto i = g.vertices().begin(); i != g.vertices().end(); ++i)
        for (auto j = std::next(i); j != g.vertices().end(); ++j) push(*i, *j);
    return out;
}

}  // namespace morphplan
