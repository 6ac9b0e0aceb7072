#include "morphplan/pivot.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

#include "morphplan/errors.hpp"

namespace morphplan {

namespace {

struct Pose {
    Vec2 cell;
    int rot = 0;  // counter-clockwise quarter turns of the module body
};

int solve_rot(Dir face, Vec2 want) {
    for (int r = 0; r < 4; ++r)
        if (rotq(dir_vec(face), r) == want) return r;
    return -1;  // rotations cover all four unit vectors; never reached
}

std::string move_key(const PivotMove& mv) {
    std::ostringstream os;
    os << mv.rec.u << ':' << mv.rec.v << ':' << int(mv.rec.su) << ':' << int(mv.rec.sv);
    for (ModuleId m : mv.rec.cycle) os << ',' << m;
    os << '|' << mv.cut.first << ':' << mv.cut.second << '|';
    for (const Placement& p : mv.result.modules())
        os << p.id << '@' << p.cell.x << ',' << p.cell.y << ';';
    return os.str();
}

Configuration to_min_corner(const std::vector<Placement>& mods) {
    Vec2 lo = mods.front().cell;
    for (const Placement& p : mods) {
        lo.x = std::min(lo.x, p.cell.x);
        lo.y = std::min(lo.y, p.cell.y);
    }
    std::vector<Placement> shifted;
    shifted.reserve(mods.size());
    for (const Placement& p : mods) shifted.push_back({p.id, p.cell - lo});
    return Configuration::from_placements(std::move(shifted));
}

int turn_sign(Vec2 in, Vec2 out) {
    int c = cross(in, out);
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

// Corner fans: two modules at right angles around a shared neighbor, with the
// fourth cell of their 2x2 square empty.  The closing faces both point into
// that empty cell, so the fan folds shut without leaving the lattice.
std::vector<CycleRecord> corner_fan_records(const Configuration& c, const ConnectionGraph& g) {
    std::vector<CycleRecord> out;
    if (c.size() <= 3) return out;  // a loop needs a module outside it
    for (ModuleId b : g.vertices()) {
        const std::vector<ModuleId>& nbrs = g.neighbors(b);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                ModuleId a = nbrs[i], v = nbrs[j];
                Vec2 da = c.cell(a) - c.cell(b);
                Vec2 dv = c.cell(v) - c.cell(b);
                if (da == -dv) continue;  // collinear arms cannot fold shut
                Vec2 gap = c.cell(b) + da + dv;
                if (c.has_cell(gap)) continue;
                CycleRecord rec;
                rec.u = a;
                rec.v = v;
                rec.su = *dir_from_vec(gap - c.cell(a));
                rec.sv = *dir_from_vec(gap - c.cell(v));
                rec.cycle = {a, b, v};
                // Polygon travel vectors a -> b -> v -> (closing edge on sv).
                std::vector<Vec2> vecs{{-da.x, -da.y}, dv, dir_vec(rec.sv)};
                int w = 0;
                for (std::size_t t = 0; t < vecs.size(); ++t)
                    w += turn_sign(vecs[t], vecs[(t + 1) % vecs.size()]);
                rec.winding = w;
                out.push_back(std::move(rec));
            }
        }
    }
    return out;
}

// Moves a state can execute in place: corner fans closing across an empty
// gap, and zigzag chains of five or more modules.  A chain of four would
// close into a square block, which is already its own flat state, so no new
// tetragonal loop ever executes as a move.
std::vector<CycleRecord> move_records(const Configuration& c, const ConnectionGraph& g) {
    std::vector<CycleRecord> out = corner_fan_records(c, g);
    const int n = c.size();
    for (const CycleRecord& rec : valid_records(g)) {
        const int k = rec.loop_size();
        if (k >= 5 && k < n) out.push_back(rec);
    }
    return out;
}

// Cells of the settled graph, orientation data dropped.
std::optional<std::vector<Placement>> pose_embed(const ConnectionGraph& g) {
    auto settled = settle_graph(g);
    if (!settled) return std::nullopt;
    std::vector<Placement> out;
    out.reserve(settled->size());
    for (const SettledPose& p : *settled) out.push_back({p.id, p.cell});
    return out;
}

}  // namespace

std::optional<std::vector<SettledPose>> settle_graph(const ConnectionGraph& g) {
    const std::vector<ModuleId>& verts = g.vertices();
    std::map<ModuleId, Pose> pose;
    std::map<Vec2, ModuleId> occ;
    std::queue<ModuleId> frontier;

    pose[verts.front()] = {{0, 0}, 0};
    occ[{0, 0}] = verts.front();
    frontier.push(verts.front());

    while (!frontier.empty()) {
        ModuleId a = frontier.front();
        frontier.pop();
        const Pose pa = pose[a];
        for (ModuleId b : g.neighbors(a)) {
            const Edge& e = *g.find_edge(a, b);
            Dir fa = a == e.u ? *e.su : *e.sv;
            Dir fb = a == e.u ? *e.sv : *e.su;
            Vec2 world = rotq(dir_vec(fa), pa.rot);
            Vec2 cell = pa.cell + world;
            int rot = solve_rot(fb, -world);
            auto it = pose.find(b);
            if (it != pose.end()) {
                if (it->second.cell != cell || it->second.rot != rot) return std::nullopt;
                continue;
            }
            if (occ.count(cell)) return std::nullopt;
            pose[b] = {cell, rot};
            occ[cell] = b;
            frontier.push(b);
        }
    }

    std::vector<SettledPose> out;
    out.reserve(verts.size());
    for (ModuleId m : verts) out.push_back({m, pose[m].cell, pose[m].rot});
    return out;
}

std::vector<PivotMove> morphpivot_raw(const Configuration& c) {
    std::vector<PivotMove> out;
    if (c.size() < 4) return out;

    const ConnectionGraph g = ConnectionGraph::from_config(c);
    const std::string selfKey = c.shape_key();
    std::set<std::string> seen;

    for (const CycleRecord& rec : move_records(c, g)) {
        const std::vector<ModuleId>& path = rec.cycle;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            EdgeKey cut = make_edge_key(path[i], path[i + 1]);
            ConnectionGraph h = g;
            h.remove_edge(cut.first, cut.second);
            h.add_edge(record_edge(rec));
            std::optional<std::vector<Placement>> placed = pose_embed(h);
            if (!placed) continue;
            Configuration result = to_min_corner(*placed);
            if (result.shape_key() == selfKey) continue;
            PivotMove mv{rec, cut, std::move(result)};
            if (seen.insert(move_key(mv)).second) out.push_back(std::move(mv));
        }
    }
    return out;
}

std::vector<Configuration> morphpivot_successors(const Configuration& c) {
    // A morphpivot run backwards is again a morphpivot, so the move graph is
    // undirected: neighbors are the union of forward landings and the states
    // that land here.
    const StateSpace& space = StateSpace::of(c.size());
    const int at = space.index_of(normalize(c, Symmetry::Translation).config);
    std::vector<Configuration> out;
    for (int j : space.adj(at)) out.push_back(space.shapes()[j]);
    return out;
}

StateSpace::StateSpace(int n) : n_(n) {
    shapes_ = enumerate_polyominoes(n, Symmetry::Translation);
    for (int i = 0; i < int(shapes_.size()); ++i) index_[shapes_[i].shape_key()] = i;
    arcs_.resize(shapes_.size());
    succ_.resize(shapes_.size());
    pred_.resize(shapes_.size());
    adj_.resize(shapes_.size());

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < int(shapes_.size()); ++i) {
        std::map<int, Arc> first;
        for (const PivotMove& mv : morphpivot_raw(shapes_[i])) {
            NormalizeResult nr = normalize(mv.result, Symmetry::Translation);
            int j = index_.at(nr.config.shape_key());
            if (first.count(j)) continue;
            Arc a;
            a.to = j;
            a.rec = mv.rec;
            a.cut = mv.cut;
            a.perm.assign(n_ + 1, 0);
            for (const auto& [orig, relabeled] : nr.label_map) a.perm[orig] = relabeled;
            first.emplace(j, std::move(a));
        }
        for (auto& [j, a] : first) {
            succ_[i].push_back(j);
            arcs_[i].push_back(std::move(a));
        }
    }
    for (int i = 0; i < int(shapes_.size()); ++i)
        for (int j : succ_[i]) pred_[j].push_back(i);
    for (auto& p : pred_) {
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    for (int i = 0; i < int(shapes_.size()); ++i) {
        adj_[i] = succ_[i];
        adj_[i].insert(adj_[i].end(), pred_[i].begin(), pred_[i].end());
        std::sort(adj_[i].begin(), adj_[i].end());
        adj_[i].erase(std::unique(adj_[i].begin(), adj_[i].end()), adj_[i].end());
    }
}

const StateSpace& StateSpace::of(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<StateSpace>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::unique_ptr<StateSpace>(new StateSpace(n))).first;
    return *it->second;
}

int StateSpace::index_of(const Configuration& c) const {
    auto it = index_.find(c.shape_key());
    return it == index_.end() ? -1 : it->second;
}

const StateSpace::Arc* StateSpace::arc(int from, int to) const {
    const auto& v = arcs_[from];
    auto it = std::lower_bound(v.begin(), v.end(), to,
                               [](const Arc& a, int t) { return a.to < t; });
    return it != v.end() && it->to == to ? &*it : nullptr;
}

}  // namespace morphplan
