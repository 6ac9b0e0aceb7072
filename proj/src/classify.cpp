#include "morphplan/classify.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "morphplan/errors.hpp"
#include "morphplan/graph.hpp"
#include "morphplan/pivot.hpp"
#include "morphplan/vgg.hpp"

namespace morphplan {

namespace {

bool has_square_block(const Configuration& c) {
    for (const Placement& p : c.modules())
        if (c.has_cell(p.cell + Vec2{1, 0}) && c.has_cell(p.cell + Vec2{0, 1}) &&
            c.has_cell(p.cell + Vec2{1, 1}))
            return true;
    return false;
}

// Largest loop the state can close in place while a module stays outside it.
// Corner fans and zigzag chains close on any free perpendicular slot pair; a
// square block is an already-closed tetragonal loop, and no new one can form,
// so 4 enters only through a block (which needs n >= 5 for the outside
// module).
int closable_loop_value(const Configuration& c) {
    const int n = c.size();
    if (n < 4) return 0;
    int best = 0;
    if (n >= 5 && has_square_block(c)) best = 4;
    const ConnectionGraph g = ConnectionGraph::from_config(c);
    for (const CycleRecord& rec : valid_records(g)) {
        const int k = rec.loop_size();
        if (k == 4 || k >= n) continue;
        best = std::max(best, k);
        if (best == n - 1) break;
    }
    return best;
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

LoopSignature compute_S_info(const Configuration& config, int stateCap) {
    const int n = config.size();
    if (n > 8) throw BudgetExceeded("compute_S: reachability enumeration is sized for n <= 8");

    LoopSignature sig;
    if (n < 3) {
        sig.states = 1;
        return sig;
    }

    const StateSpace& space = StateSpace::of(n);
    const int start = space.index_of(normalize(config, Symmetry::Translation).config);
    std::vector<char> seen(space.shapes().size(), 0);
    std::queue<int> frontier;
    seen[start] = 1;
    frontier.push(start);
    while (!frontier.empty()) {
        const int i = frontier.front();
        frontier.pop();
        ++sig.states;
        sig.value = std::max(sig.value, closable_loop_value(space.shapes()[i]));
        if (sig.value == n - 1) break;  // largest loop an outside module allows
        if (sig.states >= stateCap) {
            sig.truncated = !frontier.empty();
            break;
        }
        for (int j : space.adj(i))
            if (!seen[j]) {
                seen[j] = 1;
                frontier.push(j);
            }
    }
    return sig;
}

int compute_S(const Configuration& c) { return compute_S_info(c).value; }

ClassifyResult isotypy_classes(int n, bool parallel) {
    if (n > 8) throw BudgetExceeded("isotypy_classes: reachability enumeration is sized for n <= 8");

    ClassifyResult res;
    const StateSpace& space = StateSpace::of(n);
    const int m = static_cast<int>(space.shapes().size());

    // Closable-loop value of every fixed state; the parallel kernel, with the
    // serial twin kept for verification and benchmarking.
    std::vector<int> stateValue(m, 0);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < m; ++i) stateValue[i] = closable_loop_value(space.shapes()[i]);
    } else {
        for (int i = 0; i < m; ++i) stateValue[i] = closable_loop_value(space.shapes()[i]);
    }

    // Free polyominoes and the fixed -> free projection.
    const std::vector<Configuration> freeShapes = enumerate_polyominoes(n, Symmetry::TranslationD4);
    std::map<std::string, int> freeIndexByKey;
    for (int f = 0; f < static_cast<int>(freeShapes.size()); ++f)
        freeIndexByKey.emplace(freeShapes[f].shape_key(), f);
    std::vector<int> freeOf(m);
    for (int i = 0; i < m; ++i)
        freeOf[i] = freeIndexByKey.at(normalize(space.shapes()[i], Symmetry::TranslationD4).config.shape_key());

    // Mutual-reachability components: moves run backwards as well as forwards,
    // so lift every arc to an undirected edge between free shapes.
    UnionFind uf(static_cast<int>(freeShapes.size()));
    for (int i = 0; i < m; ++i)
        for (int j : space.succ(i)) uf.unite(freeOf[i], freeOf[j]);

    // S is the component-wide maximum of the closable-loop values.
    std::map<int, int> componentValue;
    for (int i = 0; i < m; ++i) {
        int root = uf.find(freeOf[i]);
        auto [it, inserted] = componentValue.emplace(root, stateValue[i]);
        if (!inserted) it->second = std::max(it->second, stateValue[i]);
    }

    std::map<int, int> componentId;  // root -> dense id in row order
    for (int f = 0; f < static_cast<int>(freeShapes.size()); ++f) {
        const int root = uf.find(f);
        const auto [it, inserted] = componentId.emplace(root, static_cast<int>(componentId.size()));
        ClassRow row;
        row.n = n;
        row.canonicalForm = cells_to_string(freeShapes[f]);
        row.S = componentValue.at(root);
        row.component = it->second;
        row.freeIndex = f;
        res.classes[row.S].push_back(f);
        res.rows.push_back(std::move(row));
    }

    // Report S values whose class is not one mutually reachable component.
    for (const auto& [s, members] : res.classes) {
        std::set<int> comps;
        for (int f : members) comps.insert(res.rows[f].component);
        if (comps.size() > 1) res.splitClasses.push_back(s);
    }

    // S == 0 shapes should admit no moves at all.
    res.zeroShapesInert = true;
    for (int i = 0; i < m; ++i)
        if (componentValue.at(uf.find(freeOf[i])) == 0 && !space.adj(i).empty())
            res.zeroShapesInert = false;

    return res;
}

namespace {

// Support configuration for the induction step: a closable k-loop (the square
// block when k = 4, the staircase otherwise), one auxiliary module on the
// loop, and the leftover modules chained at a case-dependent attachment site.
Configuration induction_support(int k, int n, int attachCase) {
    std::vector<Vec2> cells;
    Vec2 base, step;
    if (k == 4) {
        cells = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};  // the closed tetragonal loop
        cells.push_back({0, 2});                   // auxiliary on the loop
        switch (attachCase) {
            case 0: base = {1, 2}; step = {1, 0}; break;    // on a loop module
            case 1: base = {-1, 1}; step = {-1, 0}; break;  // beside the reopening corner
            default: base = {0, 3}; step = {0, 1}; break;   // extending the auxiliary
        }
    } else {
        for (int i = 0; i < k; ++i) cells.push_back({(i + 1) / 2, i / 2});  // staircase
        cells.push_back({1, -1});  // auxiliary under the second step
        switch (attachCase) {
            case 0:  // past the staircase tip, perpendicular to its last edge
                base = k % 2 == 0 ? cells[k - 1] + Vec2{0, 1} : cells[k - 1] + Vec2{1, 0};
                step = k % 2 == 0 ? Vec2{0, 1} : Vec2{1, 0};
                break;
            case 1: base = {0, 1}; step = {0, 1}; break;    // beside the closing end
            default: base = {1, -2}; step = {0, -1}; break; // extending the auxiliary
        }
    }
    Vec2 at = base;
    for (int i = 0; i < n - k - 1; ++i) {
        cells.push_back(at);
        at = at + step;
    }
    return Configuration::from_cells(cells);
}

bool has_record_of(const Configuration& c, int k) {
    const ConnectionGraph g = ConnectionGraph::from_config(c);
    for (const CycleRecord& rec : valid_records(g))
        if (rec.loop_size() == k) return true;
    return false;
}

}  // namespace

bool check_theorem1_induction(int k, int n, int attachCase, int maxDepth) {
    if (k < 4 || k > n - 2) return false;

    const Configuration support = induction_support(k, n, attachCase);
    const bool premise = k == 4 ? has_square_block(support) : has_record_of(support, k);
    if (!premise) return false;

    // Bounded breadth-first search for a state admitting the (k+1)-loop.
    constexpr int kStateCap = 2000;
    std::queue<std::pair<Configuration, int>> frontier;
    std::set<std::string> seen;
    Configuration start = normalize(support, Symmetry::Translation).config;
    seen.insert(start.shape_key());
    frontier.emplace(std::move(start), 0);
    while (!frontier.empty()) {
        auto [cur, depth] = std::move(frontier.front());
        frontier.pop();
        if (has_record_of(cur, k + 1)) return true;
        if (depth == maxDepth || static_cast<int>(seen.size()) >= kStateCap) continue;
        for (Configuration& nxt : morphpivot_successors(cur))
            if (seen.insert(nxt.shape_key()).second) frontier.emplace(std::move(nxt), depth + 1);
    }
    return false;
}

bool check_theorem1_induction(int k, int n) {
    return check_theorem1_induction(k, n, 0) && check_theorem1_induction(k, n, 1) &&
           check_theorem1_induction(k, n, 2);
}

}  // namespace morphplan
