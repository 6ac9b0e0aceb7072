#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morphplan/graph.hpp"

namespace morphplan {

// Unlabeled view of a connection graph's topology (faces ignored), n <= 15.
struct UGraph {
    int n = 0;
    std::array<std::uint16_t, 15> adj{};  // adjacency bitmask rows
    std::vector<ModuleId> ids;            // index -> module id

    bool edge(int a, int b) const { return adj[a] >> b & 1; }
    int degree(int a) const;
};

UGraph topology_of(const ConnectionGraph& g);

// Backtracking subisomorphism specialised to full isomorphism; deterministic.
bool isomorphic(const UGraph& a, const UGraph& b);

// index-in-a -> index-in-b, first found in deterministic order.
std::optional<std::vector<int>> find_isomorphism(const UGraph& a, const UGraph& b);

// Up to `cap` distinct isomorphisms, deterministic order.
std::vector<std::vector<int>> all_isomorphisms(const UGraph& a, const UGraph& b, std::size_t cap);

// Canonical topology key: lexicographically minimal adjacency unrolling over
// all vertex orders (branch-and-bound, exact). Equal keys <=> isomorphic.
std::string canonical_key(const UGraph& g);

// The vertex order realizing canonical_key (first of them, deterministic):
// order[position] = original index. Graphs with equal keys relabel onto one
// another through their canonical orders, so pairwise isomorphisms can be
// composed from these instead of searched.
std::vector<int> canonical_order(const UGraph& g);

}  // namespace morphplan
