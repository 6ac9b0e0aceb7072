#pragma once

#include <map>
#include <string>
#include <vector>

#include "morphplan/actions.hpp"
#include "morphplan/config.hpp"
#include "morphplan/schedule.hpp"

namespace morphplan {

enum class ValidationMode { Paper, Strict };

struct StepIssue {
    int step;  // -1 for final-state issues
    std::string what;
};

struct ValidationReport {
    bool ok = true;
    std::vector<StepIssue> issues;
    int stepsChecked = 0;

    void flag(int step, std::string what) {
        ok = false;
        issues.push_back({step, std::move(what)});
    }
};

// Replays the steps on start's geometric graph. Connects must carry a cycle
// that re-validates on the replay state (strict mode additionally requires the
// loop to leave a module outside); disconnects must exist and keep the graph
// in one piece. When goal data is supplied, the final graph must equal the
// goal's geometric graph carried through goalToStart and admit a lattice
// realization landing on the goal shape. Failures are reported, not thrown.
ValidationReport validate_sequence(const Configuration& start, const std::vector<Step>& steps,
                                   ValidationMode mode,
                                   const Configuration* goal = nullptr,
                                   const std::map<ModuleId, ModuleId>* goalToStart = nullptr);

}  // namespace morphplan
