#include "morphplan/vgg.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "morphplan/errors.hpp"
#include "morphplan/tree.hpp"

namespace morphplan {

namespace {

// Directed travel vector of edge (from -> to) as recorded on its faces.
std::optional<Vec2> edge_vec(const ConnectionGraph& g, ModuleId from, ModuleId to) {
    auto f = g.face_at(from, to);
    if (!f) return std::nullopt;
    return dir_vec(*f);
}

int turn_sign(Vec2 in, Vec2 out) {
    int c = cross(in, out);
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

}  // namespace

Edge record_edge(const CycleRecord& rec) {
    Edge e;
    e.u = rec.u;
    e.v = rec.v;
    e.su = rec.su;
    e.sv = rec.sv;
    e.virt = true;
    if (e.u > e.v) {
        std::swap(e.u, e.v);
        std::swap(e.su, e.sv);
    }
    return e;
}

std::vector<CycleRecord> records_for_pair(const ConnectionGraph& g, EdgeKey pair) {
    std::vector<CycleRecord> out;
    std::set<CycleRecord> seen;
    ModuleId u = pair.first, v = pair.second;
    if (g.has_edge(u, v)) return out;

    // DFS over simple paths u..v with perpendicularity enforced incrementally.
    std::vector<ModuleId> path{u};
    std::set<ModuleId> on_path{u};

    auto emit = [&](const std::vector<ModuleId>& p) {
        // p runs u..v and is perpendicular at interior vertices already.
        auto first_face = g.face_at(p[0], p[1]);
        auto last_face = g.face_at(p.back(), p[p.size() - 2]);
        for (Dir du : kAllDirs) {
            if (!perpendicular(du, *first_face) || !g.slot_free(u, du)) continue;
            for (Dir dv : kAllDirs) {
                if (!perpendicular(dv, *last_face) || !g.slot_free(v, dv)) continue;
                CycleRecord rec;
                rec.u = u;
                rec.v = v;
                rec.su = du;
                rec.sv = dv;
                rec.cycle = p;
                // Winding: polygon edge vectors are the face vectors at each
                // directed edge's source; the closing edge runs v -> u on dv.
                std::vector<Vec2> vecs;
                for (std::size_t i = 0; i + 1 < p.size(); ++i)
                    vecs.push_back(*edge_vec(g, p[i], p[i + 1]));
                vecs.push_back(dir_vec(dv));
                int w = 0;
                for (std::size_t i = 0; i < vecs.size(); ++i)
                    w += turn_sign(vecs[i], vecs[(i + 1) % vecs.size()]);
                rec.winding = w;
                if (seen.insert(rec).second) out.push_back(rec);
            }
        }
    };

    auto dfs = [&](auto&& self, ModuleId at) -> void {
        for (ModuleId nb : g.neighbors(at)) {
            if (on_path.count(nb)) continue;
            if (path.size() >= 2) {
                // Perpendicularity at `at` between the path edge behind it and
                // the edge being extended.
                auto in = g.face_at(at, path[path.size() - 2]);
                auto outf = g.face_at(at, nb);
                if (!in || !outf || !perpendicular(*in, *outf)) continue;
            }
            if (nb == v) {
                if (path.size() >= 2) {
                    path.push_back(nb);
                    emit(path);
                    path.pop_back();
                }
                continue;
            }
            path.push_back(nb);
            on_path.insert(nb);
            self(self, nb);
            on_path.erase(nb);
            path.pop_back();
        }
    };
    dfs(dfs, u);
    return out;
}

std::vector<CycleRecord> valid_records(const ConnectionGraph& g) {
    std::vector<CycleRecord> out;
    for (EdgeKey pair : candidate_pairs(g)) {
        auto recs = records_for_pair(g, pair);
        out.insert(out.end(), recs.begin(), recs.end());
    }
    return out;
}

bool is_valid_cycle(const ConnectionGraph& g, const CycleRecord& rec, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const auto& p = rec.cycle;
    if (p.size() < 3) return fail("cycle shorter than 3 modules");
    if (p.front() != rec.u || p.back() != rec.v) return fail("cycle endpoints do not match pair");
    std::set<ModuleId> uniq(p.begin(), p.end());
    if (uniq.size() != p.size()) return fail("cycle repeats a module");
    if (g.has_edge(rec.u, rec.v)) return fail("pair already connected");
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.has_edge(p[i], p[i + 1]))
            return fail("missing path edge (" + std::to_string(p[i]) + "," +
                        std::to_string(p[i + 1]) + ")");
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        auto in = g.face_at(p[i], p[i - 1]);
        auto out = g.face_at(p[i], p[i + 1]);
        if (!in || !out || !perpendicular(*in, *out))
            return fail("path edges not perpendicular at module " + std::to_string(p[i]));
    }
    auto first_face = g.face_at(p[0], p[1]);
    auto last_face = g.face_at(p.back(), p[p.size() - 2]);
    if (!first_face || !last_face) return fail("path edge missing face data");
    if (!perpendicular(rec.su, *first_face))
        return fail("candidate face at " + std::to_string(rec.u) + " not perpendicular to path");
    if (!perpendicular(rec.sv, *last_face))
        return fail("candidate face at " + std::to_string(rec.v) + " not perpendicular to path");
    if (!g.slot_free(rec.u, rec.su))
        return fail("candidate face at " + std::to_string(rec.u) + " already occupied");
    if (!g.slot_free(rec.v, rec.sv))
        return fail("candidate face at " + std::to_string(rec.v) + " already occupied");
    return true;
}

namespace {

bool records_conflict(const CycleRecord& a, const CycleRecord& b) {
    if (make_edge_key(a.u, a.v) == make_edge_key(b.u, b.v)) return true;
    std::pair<ModuleId, Dir> sa1{a.u, a.su}, sa2{a.v, a.sv};
    std::pair<ModuleId, Dir> sb1{b.u, b.su}, sb2{b.v, b.sv};
    return sa1 == sb1 || sa1 == sb2 || sa2 == sb1 || sa2 == sb2;
}

// Maximal non-conflicting subsets: each record seeds one greedy subset (in
// order), subsets that end up identical are merged by the dedup below.
std::vector<std::vector<int>> partition_records(const std::vector<CycleRecord>& recs) {
    std::vector<std::vector<int>> subsets;
    std::set<std::vector<int>> seen;
    for (std::size_t seed = 0; seed < recs.size(); ++seed) {
        std::vector<int> subset{static_cast<int>(seed)};
        for (std::size_t j = 0; j < recs.size(); ++j) {
            if (j == seed) continue;
            bool ok = true;
            for (int k : subset)
                if (records_conflict(recs[k], recs[j])) {
                    ok = false;
                    break;
                }
            if (ok) subset.push_back(static_cast<int>(j));
        }
        std::sort(subset.begin(), subset.end());
        if (seen.insert(subset).second) subsets.push_back(std::move(subset));
    }
    return subsets;
}

constexpr int kMaxStates = 50000;

}  // namespace

VggResult vgg(const Configuration& c) {
    VggResult res;
    const int n = c.size();

    struct State {
        ConnectionGraph g;
        std::vector<CycleRecord> added;
    };
    std::vector<State> queue{{ConnectionGraph::from_config(c), {}}};
    std::unordered_set<std::string> seen{queue[0].g.state_key()};
    std::unordered_set<std::string> leaf_keys;

    for (std::size_t head = 0; head < queue.size(); ++head) {
        if (static_cast<int>(queue.size()) > kMaxStates)
            throw Error("virtual graph generation exceeded state budget");
        // Move out of the slot: queue may reallocate while children append,
        // and head is never revisited.
        State st = std::move(queue[head]);
        ++res.states;
        std::vector<CycleRecord> recs = valid_records(st.g);
        if (recs.empty()) {
            if (leaf_keys.insert(st.g.state_key()).second)
                res.leaves.push_back({st.g, st.added});
            continue;
        }
        for (const CycleRecord& r : recs) {
            res.max_loop = std::max(res.max_loop, r.loop_size());
            if (r.loop_size() < n) res.max_aux_loop = std::max(res.max_aux_loop, r.loop_size());
        }
        for (const auto& subset : partition_records(recs)) {
            State child = st;
            for (int idx : subset) {
                child.g.add_edge(record_edge(recs[idx]));
                child.added.push_back(recs[idx]);
            }
            if (seen.insert(child.g.state_key()).second) queue.push_back(std::move(child));
        }
    }
    return res;
}

const VggResult& vgg_cached(const Configuration& c) {
    // Cache is keyed by shape, so labels must be the canonical function of the
    // shape or different labelings would collide.
    for (std::size_t i = 0; i < c.modules().size(); ++i) {
        bool canonical = c.modules()[i].id == static_cast<ModuleId>(i + 1) &&
                         (i == 0 || c.modules()[i - 1].cell < c.modules()[i].cell);
        if (!canonical)
            throw Error("vgg_cached requires canonical 1..n-by-sorted-cell labels");
    }
    static std::mutex mu;
    static std::unordered_map<std::string, std::unique_ptr<VggResult>> cache;
    std::string key = c.shape_key();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto computed = std::make_unique<VggResult>(vgg(c));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.try_emplace(key, std::move(computed));
    return *it->second;
}

}  // namespace morphplan
