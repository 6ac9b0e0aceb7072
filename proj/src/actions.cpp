#include "morphplan/actions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "morphplan/errors.hpp"
#include "morphplan/isomorph.hpp"
#include "morphplan/pivot.hpp"

namespace morphplan {

namespace {

std::vector<Vec2> d4_cells(const Configuration& c, int t) {
    std::vector<Vec2> out;
    out.reserve(c.size());
    for (const Placement& p : c.modules()) {
        Vec2 v = p.cell;
        if (t >= 4) v.x = -v.x;
        out.push_back(rotq(v, t & 3));
    }
    return out;
}

}  // namespace

bool final_state_realizes(const ConnectionGraph& final, const Configuration& goal,
                          const std::map<ModuleId, ModuleId>& goalToStart) {
    // The docked faces pin the final state completely: modules carry their
    // accumulated turns in the face names, so the graph settles into exactly
    // one flat state or none.
    auto settled = settle_graph(final);
    if (!settled) return false;

    std::map<ModuleId, Vec2> cellOf;
    std::set<Vec2> cells;
    for (const SettledPose& p : *settled) {
        cellOf[p.id] = p.cell;
        cells.insert(p.cell);
    }

    // Flat states connect every touching pair: a settling with extra
    // adjacencies would immediately dock more faces than the graph holds.
    std::size_t touching = 0;
    for (Vec2 c : cells)
        for (Vec2 d : {Vec2{1, 0}, Vec2{0, 1}})
            if (cells.count(c + d)) ++touching;
    if (touching != final.edges().size()) return false;

    for (int t = 0; t < 8; ++t) {
        std::vector<Vec2> tc = d4_cells(goal, t);
        const std::vector<Placement>& gm = goal.modules();
        Vec2 offset = cellOf.at(goalToStart.at(gm.front().id)) - tc.front();
        bool match = true;
        for (std::size_t i = 0; i < gm.size() && match; ++i)
            match = cellOf.at(goalToStart.at(gm[i].id)) == tc[i] + offset;
        if (match) return true;
    }
    return false;
}

ActionSets derive_action_sets(const VggLeaf& leafA, const Mapping& phi, const VggLeaf& leafB,
                              const ConnectionGraph& goalGeometric, const Configuration& goalShape) {
    const std::vector<ModuleId>& va = leafA.graph.vertices();
    const std::vector<ModuleId>& vb = leafB.graph.vertices();
    if (va.size() != vb.size()) throw MappingInvalid("vertex count mismatch");
    if (leafA.graph.edges().size() != leafB.graph.edges().size())
        throw MappingInvalid("edge count mismatch");
    for (const Edge& e : leafA.graph.edges())
        if (!leafB.graph.has_edge(phi.fwd[e.u], phi.fwd[e.v]))
            throw MappingInvalid("mapping does not preserve adjacency");

    ActionSets as;
    as.connects = leafA.added;
    for (const Edge& e : leafB.graph.edges()) {
        if (!e.virt) continue;
        EdgeKey key = make_edge_key(phi.inv[e.u], phi.inv[e.v]);
        if (!leafA.graph.has_edge(key.first, key.second))
            throw MappingInvalid("virtual edge preimage missing");
        as.disconnects.push_back(key);
    }
    std::sort(as.disconnects.begin(), as.disconnects.end());

    as.mappedGoal = leafA.graph;
    for (const EdgeKey& d : as.disconnects) as.mappedGoal.remove_edge(d.first, d.second);

    if (as.mappedGoal.edges().size() != goalGeometric.edges().size())
        throw MappingInvalid("leftover edges do not match the goal graph");
    for (const Edge& e : goalGeometric.edges())
        if (!as.mappedGoal.has_edge(phi.inv[e.u], phi.inv[e.v]))
            throw MappingInvalid("goal edge missing after disconnects");

    std::map<ModuleId, ModuleId> goalToStart;
    for (ModuleId b : vb) goalToStart[b] = phi.inv[b];
    if (!final_state_realizes(as.mappedGoal, goalShape, goalToStart))
        throw MappingInvalid("remaining graph cannot settle into the goal shape");

    return as;
}

namespace {

struct LeafInfo {
    UGraph topo;
    std::string key;
    std::vector<int> pos;  // original index -> canonical position
};

// Adjacency unrolling along a fixed order; equals canonical_key when the
// order is the canonical one.
std::string unroll_key(const UGraph& g, const std::vector<int>& order) {
    std::string bits;
    for (std::size_t d = 1; d < order.size(); ++d)
        for (std::size_t p = 0; p < d; ++p) bits += g.edge(order[d], order[p]) ? '1' : '0';
    return std::to_string(g.n) + "|" + bits;
}

const std::vector<LeafInfo>& leaf_infos(const Configuration& canonical) {
    static std::mutex mu;
    static std::map<std::string, std::vector<LeafInfo>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(canonical.shape_key());
    if (it != cache.end()) return it->second;
    std::vector<LeafInfo> infos;
    for (const VggLeaf& leaf : vgg_cached(canonical).leaves) {
        UGraph t = topology_of(leaf.graph);
        std::vector<int> order = canonical_order(t);
        std::vector<int> pos(order.size());
        for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = static_cast<int>(p);
        infos.push_back({t, unroll_key(t, order), std::move(pos)});
    }
    return cache.emplace(canonical.shape_key(), std::move(infos)).first->second;
}

// Automorphisms of a topology class's canonical form, computed once per key.
// Every isomorphism between two leaves of one class is the composition of
// their canonical relabelings with one of these.
const std::vector<std::vector<int>>& autos_for(const LeafInfo& leaf) {
    static std::mutex mu;
    static std::map<std::string, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(leaf.key);
    if (it != cache.end()) return it->second;
    UGraph canon;
    canon.n = leaf.topo.n;
    for (int i = 0; i < canon.n; ++i) canon.ids.push_back(i + 1);
    for (int a = 0; a < canon.n; ++a)
        for (int b = a + 1; b < canon.n; ++b)
            if (leaf.topo.edge(a, b)) {
                int pa = leaf.pos[a], pb = leaf.pos[b];
                canon.adj[pa] |= static_cast<std::uint16_t>(1u << pb);
                canon.adj[pb] |= static_cast<std::uint16_t>(1u << pa);
            }
    return cache.emplace(leaf.key, all_isomorphisms(canon, canon, 8)).first->second;
}

std::optional<Hop> try_hop_uncached(const Configuration& from, const Configuration& to) {
    const VggResult& va = vgg_cached(from);
    const VggResult& vb = vgg_cached(to);
    const std::vector<LeafInfo>& ia = leaf_infos(from);
    const std::vector<LeafInfo>& ib = leaf_infos(to);
    const ConnectionGraph goalGeom = ConnectionGraph::from_config(to);
    const ConnectionGraph startGeom = ConnectionGraph::from_config(from);
    const int n = from.size();

    for (std::size_t a = 0; a < ia.size(); ++a) {
        for (std::size_t b = 0; b < ib.size(); ++b) {
            if (ia[a].key != ib[b].key) continue;
            std::vector<int> atPos(n);  // canonical position -> b index
            for (int i = 0; i < n; ++i) atPos[ib[b].pos[i]] = i;
            for (const std::vector<int>& pi : autos_for(ia[a])) {
                Mapping phi;
                phi.fwd.assign(n + 1, 0);
                phi.inv.assign(n + 1, 0);
                for (int i = 0; i < n; ++i) {
                    ModuleId ma = ia[a].topo.ids[i];
                    ModuleId mb = ib[b].topo.ids[atPos[pi[ia[a].pos[i]]]];
                    phi.fwd[ma] = mb;
                    phi.inv[mb] = ma;
                }
                try {
                    ActionSets as = derive_action_sets(va.leaves[a], phi, vb.leaves[b], goalGeom, to);
                    Schedule sched = schedule_actions(startGeom, as);
                    return Hop{from, to, std::move(phi), std::move(as), std::move(sched)};
                } catch (const MappingInvalid&) {
                } catch (const ScheduleFailure&) {
                }
            }
        }
    }
    return std::nullopt;
}

// Hops depend only on the two canonical shapes, so the scan is memoized per
// ordered shape pair, like the leaf caches above.
std::optional<Hop> try_hop(const Configuration& from, const Configuration& to) {
    static std::mutex mu;
    static std::map<std::string, std::optional<Hop>> cache;
    const std::string key = from.shape_key() + '|' + to.shape_key();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::optional<Hop> hop = try_hop_uncached(from, to);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(hop)).first->second;
}

}  // namespace

BitChain bit_search(const Configuration& start, const Configuration& goal, Rng& rng,
                    int maxIntermediates) {
    if (start.size() != goal.size()) throw SizeMismatch("start and goal sizes differ");
    const Configuration s = normalize(start, Symmetry::Translation).config;
    const Configuration g = normalize(goal, Symmetry::Translation).config;
    const int n = s.size();

    if (normalize(s, Symmetry::TranslationD4).config.shape_key() ==
        normalize(g, Symmetry::TranslationD4).config.shape_key())
        return {};

    if (is_linear(s) || is_linear(g))
        throw LinearConfiguration("straight-line shapes admit no fan");

    BitChain chain;
    if (std::optional<Hop> hop = try_hop(s, g)) {
        chain.hops.push_back(std::move(*hop));
        return chain;
    }

    // Grow both sides through random intermediate shapes until they meet.
    // Proposals alternate between neighbors of a frontier shape in the move
    // graph (cheap to hop onto) and uniform shapes (diversity).
    std::vector<std::pair<Configuration, std::vector<Hop>>> aSide{{s, {}}};
    std::vector<std::pair<Configuration, std::vector<Hop>>> bSide{{g, {}}};
    std::set<std::string> tried{s.shape_key(), g.shape_key()};
    const StateSpace& space = StateSpace::of(n);

    for (int t = 0; t < maxIntermediates; ++t) {
        chain.intermediatesTried = t + 1;
        Configuration r = random_polyomino(n, rng);
        if (t % 2 == 0) {
            const auto& side = (rng.next() & 1) ? aSide : bSide;
            const Configuration& pick = side[rng.below(side.size())].first;
            const std::vector<int>& nb = space.adj(space.index_of(pick));
            if (!nb.empty()) r = space.shapes()[nb[rng.below(nb.size())]];
        }
        if (is_linear(r) || !tried.insert(r.shape_key()).second) continue;

        std::optional<std::vector<Hop>> fromStart;
        for (const auto& [cfg, hops] : aSide) {
            if (std::optional<Hop> h = try_hop(cfg, r)) {
                std::vector<Hop> ext = hops;
                ext.push_back(std::move(*h));
                fromStart = std::move(ext);
                break;
            }
        }
        std::optional<std::vector<Hop>> toGoal;
        for (const auto& [cfg, hops] : bSide) {
            if (std::optional<Hop> h = try_hop(r, cfg)) {
                std::vector<Hop> ext{std::move(*h)};
                ext.insert(ext.end(), hops.begin(), hops.end());
                toGoal = std::move(ext);
                break;
            }
        }
        if (fromStart && toGoal) {
            chain.hops = std::move(*fromStart);
            chain.hops.insert(chain.hops.end(), toGoal->begin(), toGoal->end());
            return chain;
        }
        if (fromStart) aSide.emplace_back(r, std::move(*fromStart));
        else if (toGoal) bSide.emplace_back(r, std::move(*toGoal));
    }
    throw SearchExhausted("intermediate budget exhausted without a chain");
}

FlatPlan flatten_chain(const BitChain& chain, const Configuration& start, const Configuration& goal) {
    const int n = start.size();
    FlatPlan fp;
    fp.hops = static_cast<int>(chain.hops.size());

    if (chain.hops.empty()) {
        // Same free shape: no actions, just match cells through the square
        // symmetry that carries the goal onto the start.
        std::vector<Vec2> sc = start.cells_sorted();
        for (int t = 0; t < 8; ++t) {
            std::vector<Vec2> tc = d4_cells(goal, t);
            std::vector<Vec2> sorted = tc;
            std::sort(sorted.begin(), sorted.end());
            Vec2 offset = sc.front() - sorted.front();
            bool same = true;
            for (std::size_t i = 0; i < sc.size(); ++i)
                if (sorted[i] + offset != sc[i]) same = false;
            if (!same) continue;
            const std::vector<Placement>& gm = goal.modules();
            for (std::size_t i = 0; i < gm.size(); ++i)
                fp.goalToStart[gm[i].id] = *start.id_at(tc[i] + offset);
            return fp;
        }
        throw MappingInvalid("shapes reported equal but no symmetry matches");
    }

    // Hops run in canonical labels; sigma carries them back to the caller's.
    std::vector<ModuleId> sigma(n + 1, 0);  // current hop-source label -> start label
    for (const auto& [orig, canon] : normalize(start, Symmetry::Translation).label_map)
        sigma[canon] = orig;

    // Each hop's faces are named in its source shape's frame; after earlier
    // hops the modules carry accumulated turns, so every step is reframed
    // against the physically evolved graph before it is emitted or applied.
    ConnectionGraph phys = ConnectionGraph::from_config(start);
    for (const Hop& hop : chain.hops) {
        FaceReframer reframe(phys, hop.from, sigma);
        for (const Step& st : hop.schedule.steps) {
            Step out = reframe(remap_step(st, sigma));
            if (out.kind == StepKind::Connect)
                phys.add_edge(record_edge(step_record(out)));
            else
                phys.remove_edge(out.edge.first, out.edge.second);
            fp.steps.push_back(std::move(out));
        }
        fp.compensations += hop.schedule.compensations;
        std::vector<ModuleId> next(n + 1, 0);
        for (int f = 1; f <= n; ++f) next[hop.phi.fwd[f]] = sigma[f];
        sigma = std::move(next);
    }

    for (const auto& [orig, canon] : normalize(goal, Symmetry::Translation).label_map)
        fp.goalToStart[orig] = sigma[canon];
    return fp;
}

}  // namespace morphplan
