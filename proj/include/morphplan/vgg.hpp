#pragma once

#include <string>
#include <vector>

#include "morphplan/config.hpp"
#include "morphplan/graph.hpp"

namespace morphplan {

// A feasible fan closure: a new connection (u,v) on faces (su,sv) realizable by
// pivoting the cycle formed with an existing simple path u..v. Consecutive
// cycle edges are perpendicular at every cycle vertex and no face slot is
// double-booked. `winding` is the net quarter-turn count around the polygon
// (orientation metadata, not a validity condition).
struct CycleRecord {
    ModuleId u = 0;
    ModuleId v = 0;
    Dir su = Dir::Top;
    Dir sv = Dir::Top;
    std::vector<ModuleId> cycle;  // path u..v inclusive; closing edge is (v,u)
    int winding = 0;

    int loop_size() const { return static_cast<int>(cycle.size()); }
    auto operator<=>(const CycleRecord&) const = default;
};

// Every valid record for the given pair on the given graph (all simple paths,
// all feasible face choices), deterministic order, duplicates removed.
std::vector<CycleRecord> records_for_pair(const ConnectionGraph& g, EdgeKey pair);

// All valid records over candidate_pairs(g).
std::vector<CycleRecord> valid_records(const ConnectionGraph& g);

// Single-record validity check against a graph (used by the replay validator).
bool is_valid_cycle(const ConnectionGraph& g, const CycleRecord& rec, std::string* why = nullptr);

Edge record_edge(const CycleRecord& rec);  // virtual edge the record would add

struct VggLeaf {
    ConnectionGraph graph;
    std::vector<CycleRecord> added;  // records applied along this branch, in order
};

struct VggResult {
    std::vector<VggLeaf> leaves;  // maximal virtual graphs, deduped, deterministic order
    int max_aux_loop = 0;         // largest record loop leaving >=1 module outside, any stage
    int max_loop = 0;             // largest record loop regardless of auxiliary, any stage
    int states = 0;               // graph states explored (diagnostics)
};

// Iterated virtual-graph generation from the geometric adjacency of c: at each
// state, enumerate valid records, split them into maximal non-conflicting
// subsets (same pair or same face slot conflicts), apply each subset as virtual
// edges and recurse until no record applies. Later-stage cycles may traverse
// earlier virtual edges.
VggResult vgg(const Configuration& c);

// Shape-keyed memoized variant (labels of c must already be the canonical
// 1..n-by-sorted-cell labeling; callers normalize first). Thread-safe.
const VggResult& vgg_cached(const Configuration& c);

}  // namespace morphplan
