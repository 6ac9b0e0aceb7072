#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "morphplan/config.hpp"
#include "morphplan/graph.hpp"
#include "morphplan/vgg.hpp"

namespace morphplan {

enum class StepKind { Connect, Disconnect };

struct Step {
    StepKind kind = StepKind::Connect;
    EdgeKey edge{0, 0};
    std::optional<Dir> su, sv;         // connect faces
    std::vector<ModuleId> cycle;       // connect dependency cycle (path between the pair)
    bool compensation = false;

    static Step connect(const CycleRecord& r, bool comp = false) {
        return {StepKind::Connect, make_edge_key(r.u, r.v),
                r.u < r.v ? r.su : r.sv, r.u < r.v ? r.sv : r.su, r.cycle, comp};
    }
    static Step disconnect(EdgeKey e, bool comp = false) {
        return {StepKind::Disconnect, e, {}, {}, {}, comp};
    }
};

// Record as carried by a step: endpoints in cycle order with their faces.
CycleRecord step_record(const Step& s);

// Step with every module id sent through sigma (1-based), faces re-oriented
// to the relabeled edge key.
Step remap_step(const Step& s, const std::vector<ModuleId>& sigma);

// Rewrites connect faces into the body frames of the executing modules. A
// schedule names faces in its source shape's frame, where every module sits
// unturned; once earlier morphs have run, the physical state realizes that
// shape only up to a rigid motion plus per-module quarter turns, and a face
// name that ignores those turns points at the wrong side of the module.
// Built from the physical connection graph (execution labels), the shape the
// schedule was derived on, and sigma taking shape labels to execution labels.
// Throws MappingInvalid when the physical state does not settle onto the
// shape.
class FaceReframer {
public:
    FaceReframer(const ConnectionGraph& phys, const Configuration& ref,
                 const std::vector<ModuleId>& sigma);

    // `s` must already carry execution labels.
    Step operator()(Step s) const;

private:
    Dir reframed(ModuleId m, Dir d) const;

    std::unordered_map<ModuleId, int> turns_;  // quarter turns, shape frame -> body
    bool mirrored_ = false;
};

struct ActionSets;  // actions.hpp

struct Schedule {
    std::vector<Step> steps;
    int compensations = 0;
};

// Orders the unordered action sets into an executable sequence on `start`:
// every connect fires with its cycle intact (re-derived on the current graph
// when the recorded one broke), every disconnect keeps the structure in one
// piece, and each connect drags a paired dependency disconnect behind it when
// one is ready. Three relaxation rounds: (1) paired greedy, (2) connects whose
// dependencies are all disposable, (3) compensation — temporarily re-connect a
// lost dependency, fire, re-disconnect. Throws ScheduleFailure when even round
// 3 stalls. Deterministic.
Schedule schedule_actions(const ConnectionGraph& start, const ActionSets& actions);

}  // namespace morphplan
