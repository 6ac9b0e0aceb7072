#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "morphplan/config.hpp"

namespace morphplan {

struct BenchOptions {
    int n = 7;
    int pairs = 100;
    int reps = 20;
    std::uint64_t seed = 1u;
    int birrtIterations = 1000;
    int maxIntermediates = 24;
    bool runPlanner = true;
    bool runBirrt = true;
    bool parallel = true;   // fan trials out over OpenMP threads
    bool validate = true;   // replay every produced plan (outside the timer)
};

struct TrialRow {
    int pair = 0;
    int rep = 0;
    std::string algo;        // "ours" | "birrt"
    bool success = false;
    int steps = 0;           // executed connect/disconnect actions
    double ms = 0.0;
    bool validated = false;  // replay verdict for successful trials
};

struct AlgoSummary {
    int trials = 0;
    int successes = 0;
    double successRate = 0.0;
    double meanSteps = 0.0;    // over successful trials
    double avgMinSteps = 0.0;  // per-instance best over reps, averaged
    double meanMs = 0.0;       // over all trials
    int validated = 0;
};

struct BenchResult {
    BenchOptions options;
    std::vector<std::pair<Configuration, Configuration>> instances;
    std::vector<TrialRow> rows;  // instance-major, rep-minor, planner row before birrt row
    AlgoSummary planner, birrt;

    // Head-to-head wall time restricted to instances the sampling baseline
    // solved at least once.
    int pairsBirrtSolved = 0;
    double plannerMsOnBirrtSolved = 0.0;  // planner mean over those instances
    double birrtMsOnSolved = 0.0;         // baseline mean over its successes there
};

// Random distinct-shape instances of size n (never linear, never related by a
// square symmetry), reps independent seeded runs of each enabled algorithm per
// instance. Shared memo caches are warmed on the endpoint shapes and the move
// space before any timer starts, so rows measure search, not cache fills.
BenchResult run_bench(const BenchOptions& opt);

// One row per trial: pair,rep,algo,success,steps,ms
std::string bench_csv(const BenchResult& r);
std::string bench_summary_text(const BenchResult& r);

}  // namespace morphplan
