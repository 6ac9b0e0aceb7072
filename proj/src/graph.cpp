#include "morphplan/graph.hpp"

#include <algorithm>
#include <set>

#include "morphplan/errors.hpp"

namespace morphplan {

ConnectionGraph::ConnectionGraph(std::vector<ModuleId> vertices) : verts_(std::move(vertices)) {
    std::sort(verts_.begin(), verts_.end());
    verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
}

ConnectionGraph ConnectionGraph::from_config(const Configuration& c) {
    if (!c.connected())
        throw DisconnectedConfiguration("configuration cells do not form one connected group");
    std::vector<ModuleId> ids;
    ids.reserve(c.modules().size());
    for (const auto& p : c.modules()) ids.push_back(p.id);
    ConnectionGraph g(std::move(ids));
    for (const auto& p : c.modules()) {
        for (Dir d : kAllDirs) {
            Vec2 nb = p.cell + dir_vec(d);
            auto other = c.id_at(nb);
            if (!other || *other < p.id) continue;
            Edge e;
            e.u = p.id;
            e.v = *other;
            e.su = d;
            e.sv = opposite(d);
            g.add_edge(e);
        }
    }
    return g;
}

bool ConnectionGraph::has_vertex(ModuleId m) const {
    return std::binary_search(verts_.begin(), verts_.end(), m);
}

const Edge* ConnectionGraph::find_edge(ModuleId a, ModuleId b) const {
    EdgeKey k = make_edge_key(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), k,
                               [](const Edge& e, const EdgeKey& key) { return e.key() < key; });
    if (it == edges_.end() || it->key() != k) return nullptr;
    return &*it;
}

void ConnectionGraph::add_edge(Edge e) {
    if (e.u == e.v) throw BadModuleId("self edge on module " + std::to_string(e.u));
    if (e.u > e.v) {
        std::swap(e.u, e.v);
        std::swap(e.su, e.sv);
    }
    if (!has_vertex(e.u) || !has_vertex(e.v))
        throw BadModuleId("edge endpoint not in graph: (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ")");
    if (has_edge(e.u, e.v))
        throw SlotConflict("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") already present");
    if (e.su && !slot_free(e.u, *e.su))
        throw SlotConflict("slot " + std::string(dir_name(*e.su)) + " of module " +
                           std::to_string(e.u) + " already occupied");
    if (e.sv && !slot_free(e.v, *e.sv))
        throw SlotConflict("slot " + std::string(dir_name(*e.sv)) + " of module " +
                           std::to_string(e.v) + " already occupied");
    if (e.su) slots_[{e.u, *e.su}] = e.key();
    if (e.sv) slots_[{e.v, *e.sv}] = e.key();
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e.key(),
                               [](const Edge& x, const EdgeKey& key) { return x.key() < key; });
    edges_.insert(it, e);
}

void ConnectionGraph::remove_edge(ModuleId a, ModuleId b) {
    EdgeKey k = make_edge_key(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), k,
                               [](const Edge& e, const EdgeKey& key) { return e.key() < key; });
    if (it == edges_.end() || it->key() != k)
        throw UnknownEdge("no edge (" + std::to_string(k.first) + "," +
                          std::to_string(k.second) + ")");
    if (it->su) slots_.erase({it->u, *it->su});
    if (it->sv) slots_.erase({it->v, *it->sv});
    edges_.erase(it);
}

std::optional<EdgeKey> ConnectionGraph::slot_user(ModuleId m, Dir d) const {
    auto it = slots_.find({m, d});
    if (it == slots_.end()) return std::nullopt;
    return it->second;
}

std::optional<Dir> ConnectionGraph::face_at(ModuleId a, ModuleId b) const {
    const Edge* e = find_edge(a, b);
    if (!e) return std::nullopt;
    return a == e->u ? e->su : e->sv;
}

std::vector<ModuleId> ConnectionGraph::neighbors(ModuleId m) const {
    std::vector<ModuleId> out;
    for (const Edge& e : edges_) {
        if (e.u == m) out.push_back(e.v);
        else if (e.v == m) out.push_back(e.u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int ConnectionGraph::degree(ModuleId m) const {
    int d = 0;
    for (const Edge& e : edges_)
        if (e.u == m || e.v == m) ++d;
    return d;
}

bool ConnectionGraph::connected_impl(const Edge* skip) const {
    if (verts_.empty()) return true;
    std::set<ModuleId> seen{verts_.front()};
    std::vector<ModuleId> stack{verts_.front()};
    while (!stack.empty()) {
        ModuleId m = stack.back();
        stack.pop_back();
        for (const Edge& e : edges_) {
            if (skip && e.key() == skip->key()) continue;
            ModuleId other;
            if (e.u == m) other = e.v;
            else if (e.v == m) other = e.u;
            else continue;
            if (seen.insert(other).second) stack.push_back(other);
        }
    }
    return seen.size() == verts_.size();
}

bool ConnectionGraph::connected() const { return connected_impl(nullptr); }

bool ConnectionGraph::connected_without(EdgeKey skip) const {
    const Edge* e = find_edge(skip.first, skip.second);
    if (!e) return connected();
    return connected_impl(e);
}

std::string ConnectionGraph::state_key() const {
    std::string key;
    for (ModuleId m : verts_) {
        key += std::to_string(m);
        key += ',';
    }
    key += '|';
    for (const Edge& e : edges_) {
        key += std::to_string(e.u);
        key += '-';
        key += std::to_string(e.v);
        key += ':';
        key += e.su ? dir_name(*e.su)[0] : '.';
        key += e.sv ? dir_name(*e.sv)[0] : '.';
        key += e.virt ? 'v' : 'g';
        key += ';';
    }
    return key;
}

}  // namespace morphplan
