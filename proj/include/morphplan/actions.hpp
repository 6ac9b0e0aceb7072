#pragma once

#include <map>
#include <string>
#include <vector>

#include "morphplan/config.hpp"
#include "morphplan/graph.hpp"
#include "morphplan/rng.hpp"
#include "morphplan/schedule.hpp"
#include "morphplan/vgg.hpp"

namespace morphplan {

// Vertex bijection between two isomorphic virtual graphs, 1-based arrays.
struct Mapping {
    std::vector<ModuleId> fwd;  // fwd[idA] = idB
    std::vector<ModuleId> inv;  // inv[idB] = idA
};

struct ActionSets {
    std::vector<CycleRecord> connects;   // leafA's records, branch order
    std::vector<EdgeKey> disconnects;    // A-side keys of leafB's virtual edges, sorted
    ConnectionGraph mappedGoal;          // A-labeled image of the goal's geometric graph
};

// Eq.-style decomposition of one reconfiguration hop: everything leafA added
// is connected, the preimages of everything leafB added are disconnected, and
// what remains must be the goal graph carried through the mapping. Verified by
// applying and comparing, and by checking that the remaining graph admits a
// lattice realization that lands on the goal shape (up to translation and the
// eight square symmetries, labels carried through phi). Throws MappingInvalid.
ActionSets derive_action_sets(const VggLeaf& leafA, const Mapping& phi, const VggLeaf& leafB,
                              const ConnectionGraph& goalGeometric, const Configuration& goalShape);

// One scheduled hop between configurations of equal size.
struct Hop {
    Configuration from, to;     // canonical fixed shapes
    Mapping phi;                // from-side ids -> to-side ids
    ActionSets actions;
    Schedule schedule;          // steps in from-side labels
};

struct BitChain {
    std::vector<Hop> hops;      // empty when start and goal already share a shape
    int intermediatesTried = 0;
};

// Bidirectional isomorphism-tree search: direct leaf-to-leaf hops first, then
// random intermediate shapes grown from both sides until the sides meet.
// Throws SizeMismatch, LinearConfiguration, SearchExhausted.
BitChain bit_search(const Configuration& start, const Configuration& goal, Rng& rng,
                    int maxIntermediates = 48);

// Chain flattened to steps in the labels of `start` as given, plus the
// goal-id -> start-id correspondence.
struct FlatPlan {
    std::vector<Step> steps;
    std::map<ModuleId, ModuleId> goalToStart;
    int compensations = 0;
    int hops = 0;
};

FlatPlan flatten_chain(const BitChain& chain, const Configuration& start,
                       const Configuration& goal);

// True when `final` (stripped of face pins) has a lattice realization whose
// labeled cells match the goal under goalToStart, up to translation + D4.
bool final_state_realizes(const ConnectionGraph& final, const Configuration& goal,
                          const std::map<ModuleId, ModuleId>& goalToStart);

}  // namespace morphplan
