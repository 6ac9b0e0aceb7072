#pragma once

#include <map>
#include <string>
#include <vector>

#include "morphplan/config.hpp"

namespace morphplan {

struct LoopSignature {
    int value = 0;       // largest closable loop over the reachable set; 0 if none
    bool truncated = false;  // state cap hit before the reachable set was exhausted
    int states = 0;      // states visited by the reachability search
};

// Maximum loop size of c: breadth-first closure of the undirected move graph
// from c, taking the largest loop any visited state can close while leaving a
// module outside it. Corner fans and zigzag chains of five or more close
// directly; a 2x2 block is an already-closed 4-loop (no new tetragonal loop
// ever forms). Exact unless `truncated`.
LoopSignature compute_S_info(const Configuration& c, int stateCap = 20000);
int compute_S(const Configuration& c);

struct ClassRow {
    int n;
    std::string canonicalForm;  // cell list of the free canonical representative
    int S;
    int component;              // mutual-reachability component of the move graph
    int freeIndex;
};

struct ClassifyResult {
    std::vector<ClassRow> rows;              // one per free polyomino, enumeration order
    std::map<int, std::vector<int>> classes; // S value -> row indices
    std::vector<int> splitClasses;           // S values whose class spans >1 component
    bool zeroShapesInert = false;            // every S==0 shape has no moves at all
    bool truncated = false;
};

// Signature and reachability survey over all free polyominoes of size n.
// Components are connected components of the undirected move graph lifted to
// free shapes (a fixed-shape move induces a free-shape edge), so S is
// constant on each component by construction; `splitClasses` reports the S
// values whose class is not a single component, i.e. states sharing S that
// are not mutually reachable. Parallel and serial paths compute identical
// results. Throws BudgetExceeded for n > 8.
ClassifyResult isotypy_classes(int n, bool parallel = true);

// Executable form of the induction step behind the terminal classification:
// build a k-loop support (the square block for k = 4, a staircase otherwise)
// with an auxiliary module and the leftover modules attached per `attachCase`
// (0 = on a loop module, 1 = beside the reopening corner, 2 = extending the
// auxiliary), then search reachable states (bounded depth) for a record of
// size k+1. True when the premise holds and the larger loop is found.
bool check_theorem1_induction(int k, int n, int attachCase, int maxDepth = 5);
bool check_theorem1_induction(int k, int n);  // all three attachment cases

}  // namespace morphplan
