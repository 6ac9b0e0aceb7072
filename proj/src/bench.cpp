#include "morphplan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <sstream>

#include "morphplan/actions.hpp"
#include "morphplan/birrt.hpp"
#include "morphplan/errors.hpp"
#include "morphplan/pivot.hpp"
#include "morphplan/validate.hpp"
#include "morphplan/vgg.hpp"

namespace morphplan {

namespace {

Configuration sample_nonlinear(int n, Rng& rng) {
    for (;;) {
        Configuration c = random_polyomino(n, rng);
        if (!is_linear(c)) return c;
    }
}

std::vector<std::pair<Configuration, Configuration>> make_instances(const BenchOptions& opt) {
    std::vector<std::pair<Configuration, Configuration>> out;
    out.reserve(opt.pairs);
    for (int i = 0; i < opt.pairs; ++i) {
        Rng rng(Rng::mix(opt.seed, 0x70000000ull + i));
        Configuration start = sample_nonlinear(opt.n, rng);
        const std::string startFree = normalize(start, Symmetry::TranslationD4).config.shape_key();
        Configuration goal = sample_nonlinear(opt.n, rng);
        while (normalize(goal, Symmetry::TranslationD4).config.shape_key() == startFree)
            goal = sample_nonlinear(opt.n, rng);
        out.emplace_back(std::move(start), std::move(goal));
    }
    return out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

TrialRow planner_trial(const BenchOptions& opt, int pair, int rep, const Configuration& start,
                       const Configuration& goal) {
    TrialRow row{pair, rep, "ours", false, 0, 0.0, false};
    Rng rng(Rng::mix(opt.seed, (static_cast<std::uint64_t>(pair) * opt.reps + rep) * 2));
    const auto t0 = std::chrono::steady_clock::now();
    try {
        BitChain chain = bit_search(start, goal, rng, opt.maxIntermediates);
        FlatPlan plan = flatten_chain(chain, start, goal);
        row.ms = ms_since(t0);
        row.success = true;
        row.steps = static_cast<int>(plan.steps.size());
        if (opt.validate) {
            ValidationReport rep2 = validate_sequence(start, plan.steps, ValidationMode::Paper,
                                                      &goal, &plan.goalToStart);
            row.validated = rep2.ok;
        }
    } catch (const Error&) {
        row.ms = ms_since(t0);
    }
    return row;
}

TrialRow birrt_trial(const BenchOptions& opt, int pair, int rep, const Configuration& start,
                     const Configuration& goal) {
    TrialRow row{pair, rep, "birrt", false, 0, 0.0, false};
    Rng rng(Rng::mix(opt.seed, (static_cast<std::uint64_t>(pair) * opt.reps + rep) * 2 + 1));
    const auto t0 = std::chrono::steady_clock::now();
    BirrtResult res = birrt_plan(start, goal, opt.birrtIterations, rng);
    row.ms = ms_since(t0);
    row.success = res.success;
    if (res.success) {
        row.steps = static_cast<int>(res.steps.size());
        if (opt.validate) {
            ValidationReport rep2 = validate_sequence(start, res.steps, ValidationMode::Strict,
                                                      &goal, &res.goalToStart);
            row.validated = rep2.ok;
        }
    }
    return row;
}

AlgoSummary summarize(const BenchResult& r, const std::string& algo) {
    AlgoSummary s;
    std::vector<int> minSteps(r.instances.size(), std::numeric_limits<int>::max());
    for (const TrialRow& row : r.rows) {
        if (row.algo != algo) continue;
        ++s.trials;
        s.meanMs += row.ms;
        if (!row.success) continue;
        ++s.successes;
        s.meanSteps += row.steps;
        if (row.validated) ++s.validated;
        minSteps[row.pair] = std::min(minSteps[row.pair], row.steps);
    }
    if (s.trials) s.meanMs /= s.trials;
    if (s.successes) {
        s.successRate = static_cast<double>(s.successes) / s.trials;
        s.meanSteps /= s.successes;
    }
    int solvedPairs = 0;
    for (int m : minSteps)
        if (m != std::numeric_limits<int>::max()) {
            ++solvedPairs;
            s.avgMinSteps += m;
        }
    if (solvedPairs) s.avgMinSteps /= solvedPairs;
    return s;
}

}  // namespace

BenchResult run_bench(const BenchOptions& opt) {
    BenchResult r;
    r.options = opt;
    r.instances = make_instances(opt);

    // Warm the shared caches outside the timed region: the move space for the
    // baseline, the endpoint virtual graphs for the planner.
    if (opt.runBirrt) StateSpace::of(opt.n);
    if (opt.runPlanner)
        for (const auto& [a, b] : r.instances) {
            vgg_cached(a);
            vgg_cached(b);
        }

    struct Task {
        int pair, rep, algo;  // algo: 0 = planner, 1 = birrt
    };
    std::vector<Task> tasks;
    for (int p = 0; p < static_cast<int>(r.instances.size()); ++p)
        for (int rep = 0; rep < opt.reps; ++rep) {
            if (opt.runPlanner) tasks.push_back({p, rep, 0});
            if (opt.runBirrt) tasks.push_back({p, rep, 1});
        }

    r.rows.resize(tasks.size());
    const bool par = opt.parallel;
#pragma omp parallel for schedule(dynamic) if (par)
    for (int t = 0; t < static_cast<int>(tasks.size()); ++t) {
        const Task& tk = tasks[t];
        const auto& [start, goal] = r.instances[tk.pair];
        r.rows[t] = tk.algo == 0 ? planner_trial(opt, tk.pair, tk.rep, start, goal)
                                 : birrt_trial(opt, tk.pair, tk.rep, start, goal);
    }

    r.planner = summarize(r, "ours");
    r.birrt = summarize(r, "birrt");

    std::vector<char> solved(r.instances.size(), 0);
    for (const TrialRow& row : r.rows)
        if (row.algo == "birrt" && row.success) solved[row.pair] = 1;
    r.pairsBirrtSolved = static_cast<int>(std::count(solved.begin(), solved.end(), 1));
    int pc = 0, bc = 0;
    for (const TrialRow& row : r.rows) {
        if (!solved[row.pair]) continue;
        if (row.algo == "ours" && row.success) {
            r.plannerMsOnBirrtSolved += row.ms;
            ++pc;
        } else if (row.algo == "birrt" && row.success) {
            r.birrtMsOnSolved += row.ms;
            ++bc;
        }
    }
    if (pc) r.plannerMsOnBirrtSolved /= pc;
    if (bc) r.birrtMsOnSolved /= bc;
    return r;
}

std::string bench_csv(const BenchResult& r) {
    std::ostringstream out;
    out << "pair,rep,algo,success,steps,ms\n";
    for (const TrialRow& row : r.rows)
        out << row.pair << ',' << row.rep << ',' << row.algo << ',' << (row.success ? 1 : 0)
            << ',' << row.steps << ',' << std::fixed << std::setprecision(3) << row.ms << "\n";
    return out.str();
}

std::string bench_summary_text(const BenchResult& r) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << "instances: " << r.instances.size() << "  reps: " << r.options.reps
        << "  n: " << r.options.n << "  seed: " << r.options.seed << "\n";
    auto line = [&](const char* name, const AlgoSummary& s) {
        if (!s.trials) return;
        out << std::left << std::setw(8) << name << " success " << std::setw(7)
            << 100.0 * s.successRate << "%  avg steps " << std::setw(7) << s.meanSteps
            << "  avg best steps " << std::setw(7) << s.avgMinSteps << "  avg ms " << s.meanMs;
        if (r.options.validate) out << "  replays ok " << s.validated << "/" << s.successes;
        out << "\n";
    };
    line("ours", r.planner);
    line("birrt", r.birrt);
    if (r.options.runPlanner && r.options.runBirrt) {
        out << "instances solved by birrt at least once: " << r.pairsBirrtSolved << "\n";
        if (r.pairsBirrtSolved)
            out << "on those, avg ms: ours " << r.plannerMsOnBirrtSolved << " vs birrt "
                << r.birrtMsOnSolved << "\n";
    }
    return out.str();
}

}  // namespace morphplan
