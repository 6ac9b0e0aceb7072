#include "morphplan/birrt.hpp"

#include <limits>
#include <unordered_map>

#include "morphplan/errors.hpp"
#include "morphplan/metric.hpp"
#include "morphplan/pivot.hpp"

namespace morphplan {

namespace {

struct Node {
    int shape;
    int parent;  // index within the same tree, -1 at the root
};

std::vector<int> climb(const std::vector<Node>& tree, int at) {
    std::vector<int> shapes;
    for (int i = at; i >= 0; i = tree[i].parent) shapes.push_back(tree[i].shape);
    return shapes;  // node..root order
}

}  // namespace

BirrtResult birrt_plan(const Configuration& start, const Configuration& goal,
                       int maxIterations, Rng& rng) {
    if (start.size() != goal.size()) throw SizeMismatch("start and goal sizes differ");
    const NormalizeResult ns = normalize(start, Symmetry::Translation);
    const NormalizeResult ng = normalize(goal, Symmetry::Translation);
    const Configuration& s = ns.config;
    const Configuration& g = ng.config;
    const int n = s.size();
    const StateSpace& space = StateSpace::of(n);

    // Tree search runs in canonical labels; sigma carries them back to the
    // caller's, exactly like the planner's flattening.
    std::vector<ModuleId> sigma(n + 1, 0);
    for (const auto& [orig, canon] : ns.label_map) sigma[canon] = orig;
    auto finish = [&](BirrtResult& out) {
        for (const auto& [orig, canon] : ng.label_map) out.goalToStart[orig] = sigma[canon];
    };

    BirrtResult res;
    const int si = space.index_of(s), gi = space.index_of(g);
    if (si == gi) {
        res.success = true;
        res.path = {s};
        finish(res);
        return res;
    }

    std::vector<Node> ta{{si, -1}}, tb{{gi, -1}};
    std::unordered_map<int, int> inA{{si, 0}}, inB{{gi, 0}};

    auto dist = [&](int shape, const Configuration& to) {
        return group_manhattan_distance(space.shapes()[shape], to);
    };

    std::vector<int> joined;  // path of shape indices start..goal, set on join

    for (int it = 0; it < maxIterations && joined.empty(); ++it) {
        res.iterations = it + 1;
        const Configuration sample = random_polyomino(n, rng);
        const bool fromStart = (it % 2 == 0);
        std::vector<Node>& tree = fromStart ? ta : tb;
        std::unordered_map<int, int>& mine = fromStart ? inA : inB;
        std::unordered_map<int, int>& other = fromStart ? inB : inA;

        int nearest = 0, nearestD = std::numeric_limits<int>::max();
        for (int i = 0; i < static_cast<int>(tree.size()); ++i) {
            int d = dist(tree[i].shape, sample);
            if (d < nearestD) {
                nearestD = d;
                nearest = i;
            }
        }

        // Forward moves grow the start tree; reverse moves grow the goal tree
        // so every edge runs in execution direction.
        const std::vector<int>& moves =
            fromStart ? space.succ(tree[nearest].shape) : space.pred(tree[nearest].shape);
        int cand = -1, candD = std::numeric_limits<int>::max();
        for (int m : moves) {
            int d = dist(m, sample);
            if (d < candD) {
                candD = d;
                cand = m;
            }
        }
        if (cand < 0 || mine.count(cand)) continue;  // the iteration is spent either way

        tree.push_back({cand, nearest});
        mine.emplace(cand, static_cast<int>(tree.size()) - 1);

        auto hit = other.find(cand);
        if (hit == other.end()) continue;

        std::vector<int> aPath, bPath;
        if (fromStart) {
            aPath = climb(ta, static_cast<int>(ta.size()) - 1);
            bPath = climb(tb, hit->second);
        } else {
            aPath = climb(ta, hit->second);
            bPath = climb(tb, static_cast<int>(tb.size()) - 1);
        }
        joined.assign(aPath.rbegin(), aPath.rend());  // start..meet
        joined.insert(joined.end(), bPath.begin() + 1, bPath.end());  // ..goal
    }

    if (joined.empty()) return res;

    res.success = true;
    // Arc records name faces in each shape's canonical frame; the modules
    // accumulate turns along the path, so steps are reframed against the
    // physically evolved graph before emission (see FaceReframer).
    ConnectionGraph phys = ConnectionGraph::from_config(start);
    for (std::size_t h = 0; h < joined.size(); ++h) {
        res.path.push_back(space.shapes()[joined[h]]);
        if (h + 1 == joined.size()) break;
        const StateSpace::Arc* arc = space.arc(joined[h], joined[h + 1]);
        FaceReframer reframe(phys, space.shapes()[joined[h]], sigma);
        Step con = reframe(remap_step(Step::connect(arc->rec), sigma));
        Step dis = remap_step(Step::disconnect(arc->cut), sigma);
        phys.add_edge(record_edge(step_record(con)));
        phys.remove_edge(dis.edge.first, dis.edge.second);
        res.steps.push_back(std::move(con));
        res.steps.push_back(std::move(dis));

        // The landing state docks every touching pair (states are shapes under
        // the flat-state convention); engage those connectors explicitly so the
        // replayed graph matches the state the next arc starts from.
        auto settled = settle_graph(phys);
        if (!settled) throw MappingInvalid("arc landing does not settle flat");
        std::map<Vec2, const SettledPose*> at;
        for (const SettledPose& p : *settled) at[p.cell] = &p;
        for (const SettledPose& p : *settled)
            for (Vec2 d : {Vec2{1, 0}, Vec2{0, 1}}) {
                auto hitP = at.find(p.cell + d);
                if (hitP == at.end() || phys.has_edge(p.id, hitP->second->id)) continue;
                const SettledPose& q = *hitP->second;
                Dir fp = *dir_from_vec(rotq(d, (4 - p.rot) % 4));
                Dir fq = *dir_from_vec(rotq(Vec2{-d.x, -d.y}, (4 - q.rot) % 4));
                Step dock;
                dock.edge = make_edge_key(p.id, q.id);
                dock.su = p.id < q.id ? fp : fq;
                dock.sv = p.id < q.id ? fq : fp;
                phys.add_edge({dock.edge.first, dock.edge.second, dock.su, dock.sv, false});
                res.steps.push_back(std::move(dock));
            }
        std::vector<ModuleId> next(n + 1, 0);
        for (int l = 1; l <= n; ++l) next[arc->perm[l]] = sigma[l];
        sigma = std::move(next);
    }
    finish(res);
    return res;
}

}  // namespace morphplan
