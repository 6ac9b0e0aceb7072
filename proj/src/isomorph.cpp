#include "morphplan/isomorph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string_view>

#include "morphplan/errors.hpp"

namespace morphplan {

int UGraph::degree(int a) const {
    return __builtin_popcount(adj[a]);
}

UGraph topology_of(const ConnectionGraph& g) {
    UGraph u;
    u.n = static_cast<int>(g.vertices().size());
    if (u.n > 15) throw Error("graph too large for topology view");
    u.ids.assign(g.vertices().begin(), g.vertices().end());
    std::map<ModuleId, int> index;
    for (int i = 0; i < u.n; ++i) index[u.ids[i]] = i;
    for (const Edge& e : g.edges()) {
        int a = index.at(e.u), b = index.at(e.v);
        u.adj[a] |= static_cast<std::uint16_t>(1u << b);
        u.adj[b] |= static_cast<std::uint16_t>(1u << a);
    }
    return u;
}

namespace {

// Map vertices of a onto b one at a time, checking adjacency consistency with
// everything already mapped. Degree mismatch prunes early.
bool extend(const UGraph& a, const UGraph& b, std::vector<int>& map_ab, std::uint16_t used_b,
            int depth, const std::function<bool(const std::vector<int>&)>& sink) {
    if (depth == a.n) return sink(map_ab);
    for (int cand = 0; cand < b.n; ++cand) {
        if (used_b >> cand & 1) continue;
        if (a.degree(depth) != b.degree(cand)) continue;
        bool ok = true;
        for (int prev = 0; prev < depth; ++prev)
            if (a.edge(depth, prev) != b.edge(cand, map_ab[prev])) {
                ok = false;
                break;
            }
        if (!ok) continue;
        map_ab[depth] = cand;
        if (extend(a, b, map_ab, static_cast<std::uint16_t>(used_b | (1u << cand)), depth + 1,
                   sink))
            return true;
    }
    return false;
}

bool edge_counts_match(const UGraph& a, const UGraph& b) {
    if (a.n != b.n) return false;
    int ea = 0, eb = 0;
    std::vector<int> da, db;
    for (int i = 0; i < a.n; ++i) {
        ea += a.degree(i);
        eb += b.degree(i);
        da.push_back(a.degree(i));
        db.push_back(b.degree(i));
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    return ea == eb && da == db;
}

}  // namespace

bool isomorphic(const UGraph& a, const UGraph& b) {
    return find_isomorphism(a, b).has_value();
}

std::optional<std::vector<int>> find_isomorphism(const UGraph& a, const UGraph& b) {
    if (!edge_counts_match(a, b)) return std::nullopt;
    std::vector<int> map_ab(a.n, -1);
    std::optional<std::vector<int>> found;
    extend(a, b, map_ab, 0, 0, [&](const std::vector<int>& m) {
        found = m;
        return true;
    });
    return found;
}

std::vector<std::vector<int>> all_isomorphisms(const UGraph& a, const UGraph& b,
                                               std::size_t cap) {
    std::vector<std::vector<int>> out;
    if (!edge_counts_match(a, b) || cap == 0) return out;
    std::vector<int> map_ab(a.n, -1);
    extend(a, b, map_ab, 0, 0, [&](const std::vector<int>& m) {
        out.push_back(m);
        return out.size() >= cap;
    });
    return out;
}

namespace {

// Depth-first canonical labeling: append, for each newly placed vertex, its
// adjacency bits toward the already placed prefix; keep the lexicographically
// smallest full string, pruning branches whose prefix already exceeds it.
void canon_rec(const UGraph& g, std::vector<int>& order, std::uint16_t used, std::string& cur,
               std::string& best, std::vector<int>& best_order, bool& have_best) {
    std::size_t depth = order.size();
    if (depth == static_cast<std::size_t>(g.n)) {
        if (!have_best || cur < best) {
            best = cur;
            best_order = order;
            have_best = true;
        }
        return;
    }
    for (int v = 0; v < g.n; ++v) {
        if (used >> v & 1) continue;
        std::size_t before = cur.size();
        for (int prev : order) cur += g.edge(v, prev) ? '1' : '0';
        bool prune = have_best && cur.compare(0, cur.size(), best, 0, cur.size()) > 0;
        if (!prune) {
            order.push_back(v);
            canon_rec(g, order, static_cast<std::uint16_t>(used | (1u << v)), cur, best,
                      best_order, have_best);
            order.pop_back();
        }
        cur.resize(before);
    }
}

}  // namespace

std::string canonical_key(const UGraph& g) {
    std::string best, cur;
    bool have_best = false;
    std::vector<int> order, best_order;
    canon_rec(g, order, 0, cur, best, best_order, have_best);
    return std::to_string(g.n) + "|" + best;
}

std::vector<int> canonical_order(const UGraph& g) {
    std::string best, cur;
    bool have_best = false;
    std::vector<int> order, best_order;
    canon_rec(g, order, 0, cur, best, best_order, have_best);
    return best_order;
}

}  // namespace morphplan
