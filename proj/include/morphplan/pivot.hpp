#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "morphplan/config.hpp"
#include "morphplan/graph.hpp"
#include "morphplan/vgg.hpp"

namespace morphplan {

// A module's landing pose when a connection graph settles flat: the grid cell
// plus the quarter turns its body frame has picked up relative to the frame
// the graph's faces are written in. Anchored at the graph's first vertex
// (cell {0,0}, no turn), so poses are meaningful up to one rigid motion.
struct SettledPose {
    ModuleId id = 0;
    Vec2 cell;
    int rot = 0;  // counter-clockwise quarter turns

    friend auto operator<=>(const SettledPose&, const SettledPose&) = default;
};

// Rigidly settle a connection graph into the plane. Every docked face pins
// the relative cell and orientation of its two modules, so placements follow
// forced from the anchor; an inconsistent back edge or a cell collision means
// the graph has no flat state and yields nullopt. Poses come back in vertex
// order.
std::optional<std::vector<SettledPose>> settle_graph(const ConnectionGraph& g);

// One realizable morphpivot: close the fan described by `rec` (connecting the
// record pair on its faces) while opening `cut`, one of the cycle's own path
// edges. Every other connection persists; the landing state is the unique
// rigid re-embedding of the reshuffled graph, with modules rotating as their
// neighborhoods swing. No re-embedding means the move does not execute.
struct PivotMove {
    CycleRecord rec;        // the connection to make
    EdgeKey cut;            // the connection to break (a cycle path edge)
    Configuration result;   // original ids at their landing cells, min-corner at origin
};

// All executable forward moves out of c. Closable fans are corner fans whose
// 2x2 gap cell is empty (the closing faces both point into it) and zigzag
// chains of five or more modules; each needs a module outside the loop, and a
// chain of four never executes because its closed form is the square block
// itself. Results whose shape equals c are dropped; deterministic order.
std::vector<PivotMove> morphpivot_raw(const Configuration& c);

// Neighbors of c in the undirected move graph, as canonical fixed shapes: a
// morphpivot run backwards is again a morphpivot, so the union of forward
// landings and of states that land on c. Backed by StateSpace::of(|c|),
// which is practical for sizes up to about 8.
std::vector<Configuration> morphpivot_successors(const Configuration& c);

// The full move graph over all fixed polyominoes of one size. Successor and
// predecessor adjacency is exact; one witness move is kept per ordered shape
// pair. Built lazily per n and cached; thread-safe.
class StateSpace {
public:
    struct Arc {
        int to = -1;
        CycleRecord rec;              // in the source shape's canonical labels
        EdgeKey cut;
        std::vector<ModuleId> perm;   // perm[srcLabel] = dstLabel, 1-based
    };

    static const StateSpace& of(int n);

    int n() const { return n_; }
    const std::vector<Configuration>& shapes() const { return shapes_; }
    int index_of(const Configuration& canonicalFixed) const;  // -1 if absent
    const std::vector<int>& succ(int i) const { return succ_[i]; }
    const std::vector<int>& pred(int i) const { return pred_[i]; }
    const std::vector<int>& adj(int i) const { return adj_[i]; }  // succ ∪ pred
    const Arc* arc(int from, int to) const;  // witness, nullptr if no move

private:
    explicit StateSpace(int n);

    int n_;
    std::vector<Configuration> shapes_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<Arc>> arcs_;  // one per ordered reachable pair
    std::vector<std::vector<int>> succ_;
    std::vector<std::vector<int>> pred_;
    std::vector<std::vector<int>> adj_;
};

}  // namespace morphplan
