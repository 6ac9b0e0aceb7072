#include "morphplan/schedule.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "morphplan/actions.hpp"
#include "morphplan/errors.hpp"
#include "morphplan/pivot.hpp"

namespace morphplan {

CycleRecord step_record(const Step& s) {
    CycleRecord r;
    r.cycle = s.cycle;
    r.u = s.cycle.front();
    r.v = s.cycle.back();
    if (r.u == s.edge.first) {
        r.su = *s.su;
        r.sv = *s.sv;
    } else {
        r.su = *s.sv;
        r.sv = *s.su;
    }
    return r;
}

Step remap_step(const Step& s, const std::vector<ModuleId>& sigma) {
    Step out = s;
    ModuleId a = sigma[s.edge.first], b = sigma[s.edge.second];
    out.edge = make_edge_key(a, b);
    if (s.kind == StepKind::Connect) {
        if (a >= b) {
            out.su = s.sv;
            out.sv = s.su;
        }
        out.cycle.clear();
        for (ModuleId m : s.cycle) out.cycle.push_back(sigma[m]);
    }
    return out;
}

FaceReframer::FaceReframer(const ConnectionGraph& phys, const Configuration& ref,
                           const std::vector<ModuleId>& sigma) {
    auto settled = settle_graph(phys);
    if (!settled) throw MappingInvalid("mid-plan state has no flat settling");
    std::unordered_map<ModuleId, SettledPose> pose;
    for (const SettledPose& p : *settled) pose[p.id] = p;

    auto d4 = [](Vec2 v, int t) {
        if (t >= 4) v.x = -v.x;
        return rotq(v, t & 3);
    };

    // The rigid motion carrying the shape's cells onto the settled cells,
    // module by module through sigma. Rotations are tried before mirrors so a
    // collinear state (matched by both) keeps its true handedness.
    for (int t = 0; t < 8; ++t) {
        const Placement& anchor = ref.modules().front();
        Vec2 off = pose.at(sigma[anchor.id]).cell - d4(anchor.cell, t);
        bool ok = true;
        for (const Placement& p : ref.modules())
            if (pose.at(sigma[p.id]).cell != d4(p.cell, t) + off) {
                ok = false;
                break;
            }
        if (!ok) continue;
        mirrored_ = t >= 4;
        for (const Placement& p : ref.modules()) {
            const SettledPose& sp = pose.at(sigma[p.id]);
            turns_[sp.id] = (((t & 3) - sp.rot) % 4 + 4) % 4;
        }
        return;
    }
    throw MappingInvalid("mid-plan state does not realize the scheduled shape");
}

Dir FaceReframer::reframed(ModuleId m, Dir d) const {
    Vec2 v = dir_vec(d);
    if (mirrored_) v.x = -v.x;
    return *dir_from_vec(rotq(v, turns_.at(m)));
}

Step FaceReframer::operator()(Step s) const {
    if (s.kind != StepKind::Connect) return s;
    if (s.su) s.su = reframed(s.edge.first, *s.su);
    if (s.sv) s.sv = reframed(s.edge.second, *s.sv);
    return s;
}

namespace {

struct PendingCon {
    CycleRecord rec;
    std::set<EdgeKey> deps;  // the recorded cycle's path edges
    bool done = false;
};

// One admissible firing: optional slot-freeing hoists, optional dependency
// re-connections (compensations), the connect itself, the re-disconnections,
// and an optional paired disconnect.
struct Fire {
    int con = -1;
    CycleRecord use;
    std::vector<EdgeKey> hoists;
    std::vector<CycleRecord> compCons;
    std::vector<EdgeKey> compDis;
    std::optional<EdgeKey> paired;

    int comps() const { return static_cast<int>(compCons.size()); }
};

class Scheduler {
public:
    Scheduler(const ConnectionGraph& start, const ActionSets& as)
        : g_(start), disOrder_(as.disconnects) {
        for (const CycleRecord& r : as.connects) {
            std::set<EdgeKey> deps;
            for (std::size_t i = 0; i + 1 < r.cycle.size(); ++i)
                deps.insert(make_edge_key(r.cycle[i], r.cycle[i + 1]));
            cons_.push_back({r, std::move(deps)});
        }
        pendingDis_.insert(disOrder_.begin(), disOrder_.end());
        for (const Edge& e : as.mappedGoal.edges()) goalEdges_.insert(e.key());
    }

    Schedule run() {
        int round = 1;
        while (unfired() > 0) {
            std::optional<Fire> best;
            for (int i = 0; i < static_cast<int>(cons_.size()); ++i) {
                if (cons_[i].done) continue;
                std::optional<Fire> f = evaluate(i, round);
                if (!f) continue;
                if (!best || better(*f, *best)) best = std::move(f);
            }
            if (best) {
                emit(*best);
                round = 1;
                continue;
            }
            if (round < 3) {
                ++round;
                continue;
            }
            throw ScheduleFailure("no connect admissible after all three rounds");
        }
        leftovers();
        return std::move(out_);
    }

private:
    ConnectionGraph g_;
    std::vector<PendingCon> cons_;
    std::vector<EdgeKey> disOrder_;
    std::set<EdgeKey> pendingDis_;
    std::set<EdgeKey> goalEdges_;
    std::set<EdgeKey> removedEver_;
    std::map<EdgeKey, std::pair<Dir, Dir>> lastFaces_;  // faces an edge had when removed
    Schedule out_;

    int unfired() const {
        int c = 0;
        for (const PendingCon& p : cons_)
            if (!p.done) ++c;
        return c;
    }

    std::set<EdgeKey> deps_of_others(int except) const {
        std::set<EdgeKey> s;
        for (int i = 0; i < static_cast<int>(cons_.size()); ++i)
            if (!cons_[i].done && i != except) s.insert(cons_[i].deps.begin(), cons_[i].deps.end());
        return s;
    }

    bool pair_of_pending_con(EdgeKey e) const {
        for (const PendingCon& p : cons_)
            if (!p.done && make_edge_key(p.rec.u, p.rec.v) == e) return true;
        return false;
    }

    static bool better(const Fire& a, const Fire& b) {
        if (a.comps() != b.comps()) return a.comps() < b.comps();
        int ap = a.paired ? 0 : 1, bp = b.paired ? 0 : 1;
        if (ap != bp) return ap < bp;
        return a.con < b.con;
    }

    // Try to re-derive the record's pair on h; exact faces first, any faces
    // only once the slot discipline of round 1 is behind us.
    std::optional<CycleRecord> refit(const ConnectionGraph& h, const CycleRecord& rec,
                                     bool anyFaces) const {
        std::vector<CycleRecord> cands = records_for_pair(h, make_edge_key(rec.u, rec.v));
        for (const CycleRecord& c : cands)
            if (c.su == rec.su && c.sv == rec.sv) return c;
        if (anyFaces && !cands.empty()) return cands.front();
        return std::nullopt;
    }

    std::optional<Fire> evaluate(int i, int round) {
        Fire f;
        f.con = i;
        ConnectionGraph h = g_;
        const CycleRecord& rec = cons_[i].rec;
        const std::set<EdgeKey> othersDeps = deps_of_others(i);

        // Hoist disconnects sitting on the record's own slots.
        const std::pair<ModuleId, Dir> slots[2] = {{rec.u, rec.su}, {rec.v, rec.sv}};
        for (const auto& [m, d] : slots) {
            std::optional<EdgeKey> user = h.slot_user(m, d);
            if (!user) continue;
            if (pendingDis_.count(*user) && !othersDeps.count(*user) && !cons_[i].deps.count(*user) &&
                h.connected_without(*user)) {
                h.remove_edge(user->first, user->second);
                f.hoists.push_back(*user);
            }
        }

        CycleRecord use = rec;
        bool valid = is_valid_cycle(h, use);
        if (!valid) {
            std::optional<CycleRecord> alt = refit(h, rec, round >= 2);
            if (alt) {
                use = *alt;
                valid = true;
            }
        }
        if (!valid && round >= 3) {
            // Compensation: re-establish lost dependencies, fire, re-release.
            for (int guard = 0; guard < static_cast<int>(cons_[i].deps.size()) && !valid; ++guard) {
                std::optional<EdgeKey> missing;
                for (const EdgeKey& d : cons_[i].deps)
                    if (!h.has_edge(d.first, d.second) && removedEver_.count(d)) {
                        missing = d;
                        break;
                    }
                if (!missing || pair_of_pending_con(*missing)) break;
                std::vector<CycleRecord> cands = records_for_pair(h, *missing);
                std::optional<CycleRecord> re;
                auto pref = lastFaces_.find(*missing);
                if (pref != lastFaces_.end())
                    for (const CycleRecord& c : cands) {
                        Dir cu = c.u == missing->first ? c.su : c.sv;
                        Dir cv = c.u == missing->first ? c.sv : c.su;
                        if (cu == pref->second.first && cv == pref->second.second) {
                            re = c;
                            break;
                        }
                    }
                if (!re && !cands.empty()) re = cands.front();
                if (!re) break;
                h.add_edge(record_edge(*re));
                f.compCons.push_back(*re);
                valid = is_valid_cycle(h, rec);
                use = rec;
            }
        }
        if (!valid) return std::nullopt;

        f.use = use;
        h.add_edge(record_edge(use));

        for (const CycleRecord& cr : f.compCons) {
            EdgeKey e = make_edge_key(cr.u, cr.v);
            if (!h.connected_without(e)) return std::nullopt;
            h.remove_edge(e.first, e.second);
            f.compDis.push_back(e);
        }

        for (const EdgeKey& d : disOrder_) {
            if (!pendingDis_.count(d)) continue;
            bool isDep = cons_[i].deps.count(d) > 0;
            bool spare = !othersDeps.count(d) && !goalEdges_.count(d);
            if (!(isDep || (round >= 2 && spare))) continue;
            if (othersDeps.count(d)) continue;
            if (!h.has_edge(d.first, d.second) || !h.connected_without(d)) continue;
            f.paired = d;
            break;
        }
        if (round == 1 && !f.paired) return std::nullopt;
        return f;
    }

    void forget(EdgeKey e) {
        const Edge* ed = g_.find_edge(e.first, e.second);
        if (ed && ed->su && ed->sv) lastFaces_[e] = {*ed->su, *ed->sv};
        removedEver_.insert(e);
        g_.remove_edge(e.first, e.second);
    }

    void emit(const Fire& f) {
        for (const EdgeKey& e : f.hoists) {
            out_.steps.push_back(Step::disconnect(e));
            forget(e);
            pendingDis_.erase(e);
        }
        for (const CycleRecord& cr : f.compCons) {
            out_.steps.push_back(Step::connect(cr, true));
            g_.add_edge(record_edge(cr));
            ++out_.compensations;
        }
        out_.steps.push_back(Step::connect(f.use));
        g_.add_edge(record_edge(f.use));
        cons_[f.con].done = true;
        for (const EdgeKey& e : f.compDis) {
            out_.steps.push_back(Step::disconnect(e, true));
            forget(e);
        }
        if (f.paired) {
            out_.steps.push_back(Step::disconnect(*f.paired));
            forget(*f.paired);
            pendingDis_.erase(*f.paired);
        }
    }

    void leftovers() {
        bool progress = true;
        while (!pendingDis_.empty() && progress) {
            progress = false;
            for (const EdgeKey& d : disOrder_) {
                if (!pendingDis_.count(d)) continue;
                if (!g_.has_edge(d.first, d.second))
                    throw ScheduleFailure("disconnect target never materialized");
                if (!g_.connected_without(d)) continue;
                out_.steps.push_back(Step::disconnect(d));
                forget(d);
                pendingDis_.erase(d);
                progress = true;
            }
        }
        if (!pendingDis_.empty())
            throw ScheduleFailure("remaining disconnects would split the structure");
    }
};

}  // namespace

Schedule schedule_actions(const ConnectionGraph& start, const ActionSets& actions) {
    return Scheduler(start, actions).run();
}

}  // namespace morphplan
