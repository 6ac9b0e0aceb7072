#include "morphplan/embed.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "morphplan/errors.hpp"

namespace morphplan {

std::vector<Configuration> embed_graph(const ConnectionGraph& g) {
    if (!g.connected())
        throw DisconnectedConfiguration("cannot embed a disconnected connection graph");
    const auto& verts = g.vertices();
    if (verts.empty()) throw NoEmbedding("empty graph");

    // BFS order; every later vertex hooks onto an earlier one via a tree edge.
    std::vector<ModuleId> order{verts.front()};
    std::map<ModuleId, ModuleId> tree_parent;
    {
        std::set<ModuleId> seen{verts.front()};
        for (std::size_t head = 0; head < order.size(); ++head)
            for (ModuleId nb : g.neighbors(order[head]))
                if (seen.insert(nb).second) {
                    tree_parent[nb] = order[head];
                    order.push_back(nb);
                }
    }

    std::map<ModuleId, Vec2> pos;
    std::set<Vec2> used;
    std::set<std::string> dedup;
    std::vector<Configuration> results;

    auto edge_ok = [&](const Edge& e) {
        Vec2 delta = pos.at(e.v) - pos.at(e.u);
        if (manhattan(pos.at(e.u), pos.at(e.v)) != 1) return false;
        if (e.su && dir_vec(*e.su) != delta) return false;
        if (e.sv && dir_vec(*e.sv) != -delta) return false;
        return true;
    };

    auto finish = [&] {
        for (const Edge& e : g.edges())
            if (!edge_ok(e)) return;
        Vec2 lo = pos.begin()->second;
        for (const auto& [id, cell] : pos) {
            lo.x = std::min(lo.x, cell.x);
            lo.y = std::min(lo.y, cell.y);
        }
        std::vector<Placement> mods;
        mods.reserve(pos.size());
        std::string key;
        for (const auto& [id, cell] : pos) {
            mods.push_back({id, cell - lo});
            key += std::to_string(id) + ":" + to_string(cell - lo) + ";";
        }
        if (dedup.insert(key).second)
            results.push_back(Configuration::from_placements(std::move(mods)));
    };

    auto place = [&](auto&& self, std::size_t idx) -> void {
        if (idx == order.size()) {
            finish();
            return;
        }
        ModuleId m = order[idx];
        ModuleId p = tree_parent.at(m);
        const Edge* e = g.find_edge(p, m);
        // Face on the parent side pins the direction; otherwise try all four.
        std::optional<Dir> forced;
        if (e->u == p && e->su) forced = *e->su;
        if (e->v == p && e->sv) forced = *e->sv;
        for (Dir d : kAllDirs) {
            if (forced && d != *forced) continue;
            Vec2 cell = pos.at(p) + dir_vec(d);
            if (used.count(cell)) continue;
            pos[m] = cell;
            used.insert(cell);
            self(self, idx + 1);
            used.erase(cell);
            pos.erase(m);
        }
    };

    pos[order[0]] = {0, 0};
    used.insert({0, 0});
    place(place, 1);

    if (results.empty()) throw NoEmbedding("graph admits no lattice placement");
    std::sort(results.begin(), results.end());
    return results;
}

}  // namespace morphplan
