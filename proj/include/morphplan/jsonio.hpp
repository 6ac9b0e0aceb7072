#pragma once

#include <map>
#include <string>
#include <vector>

#include "morphplan/config.hpp"
#include "morphplan/schedule.hpp"
#include "morphplan/validate.hpp"

namespace morphplan {

// Configuration <-> JSON.  Format:
//   {"modules": [{"id": 1, "cell": [0, 0]}, ...]}
// Ids must be distinct and positive; cells must be distinct.
Configuration config_from_json_text(const std::string& text);
std::string config_to_json_text(const Configuration& c);
Configuration load_config(const std::string& path);
void save_config(const Configuration& c, const std::string& path);

// A serialized plan: the action sequence plus enough metadata to replay it
// against the start configuration and check the outcome against a goal.
struct PlanFile {
    int n = 0;
    std::vector<Step> steps;
    // Goal-module label -> start-module label.  Empty when not applicable.
    std::map<ModuleId, ModuleId> goal_to_start;
    // Cell lists of the configurations the search went through.
    std::vector<std::string> chain;
    int compensations = 0;
};

std::string plan_to_json_text(const PlanFile& p);
PlanFile plan_from_json_text(const std::string& text);
void save_plan(const PlanFile& p, const std::string& path);
PlanFile load_plan(const std::string& path);

std::string report_to_json_text(const ValidationReport& r);

// SVG renderings.  A configuration renders as labelled unit squares with the
// shared faces marked; a plan renders as one row per step showing the
// connection graph evolving over the start footprint (virtual edges dashed,
// the step's own edge highlighted).
std::string render_config_svg(const Configuration& c);
std::string render_plan_svg(const Configuration& start, const std::vector<Step>& steps);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace morphplan
