#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morphplan/config.hpp"
#include "morphplan/geom.hpp"

namespace morphplan {

using EdgeKey = std::pair<ModuleId, ModuleId>;  // normalized u < v

constexpr EdgeKey make_edge_key(ModuleId a, ModuleId b) {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

struct Edge {
    ModuleId u = 0;  // u < v
    ModuleId v = 0;
    // Docking faces; geometric edges always carry both, virtual edges carry the
    // faces chosen by their cycle record, and embedding inputs may omit them.
    std::optional<Dir> su;
    std::optional<Dir> sv;
    bool virt = false;

    EdgeKey key() const { return {u, v}; }
    auto operator<=>(const Edge&) const = default;
};

// Undirected connection graph with per-module face-slot bookkeeping: each
// (module, face) pair hosts at most one edge.
class ConnectionGraph {
public:
    ConnectionGraph() = default;
    explicit ConnectionGraph(std::vector<ModuleId> vertices);

    // Geometric adjacency of a configuration; every edge gets its two faces.
    // Throws DisconnectedConfiguration when the cells do not form one group.
    static ConnectionGraph from_config(const Configuration& c);

    const std::vector<ModuleId>& vertices() const { return verts_; }
    const std::vector<Edge>& edges() const { return edges_; }  // sorted by key

    bool has_vertex(ModuleId m) const;
    bool has_edge(ModuleId a, ModuleId b) const { return find_edge(a, b) != nullptr; }
    const Edge* find_edge(ModuleId a, ModuleId b) const;

    // Throws SlotConflict on slot double-booking or duplicate edge,
    // BadModuleId on unknown endpoints.
    void add_edge(Edge e);
    // Throws UnknownEdge.
    void remove_edge(ModuleId a, ModuleId b);

    // Edge currently occupying (m, d), if any.
    std::optional<EdgeKey> slot_user(ModuleId m, Dir d) const;
    bool slot_free(ModuleId m, Dir d) const { return !slot_user(m, d).has_value(); }

    // Face of edge (a, b) on module a's side, when recorded.
    std::optional<Dir> face_at(ModuleId a, ModuleId b) const;

    std::vector<ModuleId> neighbors(ModuleId m) const;  // sorted
    int degree(ModuleId m) const;

    bool connected() const;
    bool connected_without(EdgeKey skip) const;

    // Exact state key (vertices, edges, faces) for dedup during iteration.
    std::string state_key() const;

    auto operator<=>(const ConnectionGraph&) const = default;

private:
    std::vector<ModuleId> verts_;  // sorted
    std::vector<Edge> edges_;      // sorted by key
    std::map<std::pair<ModuleId, Dir>, EdgeKey> slots_;

    bool connected_impl(const Edge* skip) const;
};

}  // namespace morphplan
