#include "morphplan/validate.hpp"

#include <map>
#include <set>

#include "morphplan/errors.hpp"
#include "morphplan/pivot.hpp"
#include "morphplan/vgg.hpp"

namespace morphplan {

ValidationReport validate_sequence(const Configuration& start, const std::vector<Step>& steps,
                                   ValidationMode mode, const Configuration* goal,
                                   const std::map<ModuleId, ModuleId>* goalToStart) {
    ValidationReport rep;
    const int n = start.size();
    ConnectionGraph g = ConnectionGraph::from_config(start);

    for (int i = 0; i < static_cast<int>(steps.size()); ++i) {
        const Step& s = steps[i];
        rep.stepsChecked = i + 1;
        if (s.kind == StepKind::Connect) {
            if (!s.su || !s.sv) {
                rep.flag(i, "connect step names no faces");
                continue;
            }
            if (s.cycle.empty()) {
                // Surface dock: engage connectors on two faces that already
                // touch in the settled flat state. No motion, so no cycle.
                auto settled = settle_graph(g);
                if (!settled) {
                    rep.flag(i, "dock attempted while the state cannot settle flat");
                    continue;
                }
                std::map<ModuleId, SettledPose> pose;
                for (const SettledPose& p : *settled) pose[p.id] = p;
                auto iu = pose.find(s.edge.first), iv = pose.find(s.edge.second);
                if (iu == pose.end() || iv == pose.end()) {
                    rep.flag(i, "dock names an unknown module");
                    continue;
                }
                const SettledPose& pu = iu->second;
                const SettledPose& pv = iv->second;
                if (rotq(dir_vec(*s.su), pu.rot) != pv.cell - pu.cell ||
                    rotq(dir_vec(*s.sv), pv.rot) != pu.cell - pv.cell) {
                    rep.flag(i, "dock faces do not touch");
                    continue;
                }
                if (g.has_edge(s.edge.first, s.edge.second))
                    rep.flag(i, "edge already present");
                else if (!g.slot_free(s.edge.first, *s.su) || !g.slot_free(s.edge.second, *s.sv))
                    rep.flag(i, "connect slots occupied; edge not applied");
                else
                    g.add_edge({s.edge.first, s.edge.second, s.su, s.sv, false});
                continue;
            }
            if (s.cycle.size() < 3) {
                rep.flag(i, "connect step lacks a usable cycle record");
                continue;
            }
            CycleRecord rec = step_record(s);
            std::string why;
            if (!is_valid_cycle(g, rec, &why)) {
                rep.flag(i, "cycle no longer valid: " + why);
            } else if (mode == ValidationMode::Strict && rec.loop_size() >= n) {
                rep.flag(i, "loop engulfs every module; no auxiliary remains");
            }
            if (!g.has_edge(s.edge.first, s.edge.second) &&
                g.slot_free(rec.u, rec.su) && g.slot_free(rec.v, rec.sv)) {
                g.add_edge(record_edge(rec));  // keep replaying past a flagged step
            } else if (!g.has_edge(s.edge.first, s.edge.second)) {
                rep.flag(i, "connect slots occupied; edge not applied");
            } else {
                rep.flag(i, "edge already present");
            }
        } else {
            if (!g.has_edge(s.edge.first, s.edge.second)) {
                rep.flag(i, "disconnect of a non-existent edge");
                continue;
            }
            if (!g.connected_without(s.edge))
                rep.flag(i, "disconnect splits the structure");
            g.remove_edge(s.edge.first, s.edge.second);
        }
    }

    if (goal && goalToStart) {
        for (const Placement& p : goal->modules())
            if (!goalToStart->count(p.id)) {
                rep.flag(-1, "goal map misses module " + std::to_string(p.id));
                return rep;
            }
        const ConnectionGraph goalGeom = ConnectionGraph::from_config(*goal);
        std::set<EdgeKey> expect;
        for (const Edge& e : goalGeom.edges())
            expect.insert(make_edge_key(goalToStart->at(e.u), goalToStart->at(e.v)));
        std::set<EdgeKey> got;
        for (const Edge& e : g.edges()) got.insert(e.key());
        if (expect != got)
            rep.flag(-1, "final graph differs from the mapped goal graph");
        else if (!final_state_realizes(g, *goal, *goalToStart))
            rep.flag(-1, "final graph cannot settle into the goal shape");
    }
    return rep;
}

}  // namespace morphplan
