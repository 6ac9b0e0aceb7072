#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "morphplan/actions.hpp"
#include "morphplan/bench.hpp"
#include "morphplan/birrt.hpp"
#include "morphplan/classify.hpp"
#include "morphplan/config.hpp"
#include "morphplan/errors.hpp"
#include "morphplan/jsonio.hpp"
#include "morphplan/validate.hpp"

using namespace morphplan;
using nlohmann::json;

namespace {

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0   success\n"
    "  1   unexpected internal error\n"
    "  2   malformed input (command line or file contents)\n"
    "  3   start/goal size mismatch\n"
    "  4   straight-line configuration (out of scope)\n"
    "  5   search budget exhausted without a chain\n"
    "  6   action scheduling failed\n"
    "  7   validation failed\n"
    "  8   graph mapping/decomposition invalid\n"
    "  9   classification budget exceeded (n > 8)\n"
    "  10  file I/O failure\n";

struct ExitInfo {
    int code;
    const char* type;
};

ExitInfo exit_info(const Error& e) {
    if (dynamic_cast<const SizeMismatch*>(&e)) return {3, "size_mismatch"};
    if (dynamic_cast<const LinearConfiguration*>(&e)) return {4, "linear_configuration"};
    if (dynamic_cast<const SearchExhausted*>(&e)) return {5, "search_exhausted"};
    if (dynamic_cast<const ScheduleFailure*>(&e)) return {6, "schedule_failure"};
    if (dynamic_cast<const ValidationFailure*>(&e)) return {7, "validation_failure"};
    if (dynamic_cast<const MappingInvalid*>(&e)) return {8, "mapping_invalid"};
    if (dynamic_cast<const BudgetExceeded*>(&e)) return {9, "budget_exceeded"};
    if (dynamic_cast<const IoError*>(&e)) return {10, "io_error"};
    return {2, "parse_error"};  // ParseError and malformed-configuration kin
}

struct Common {
    std::uint64_t seed = 1;
    std::string mode = "paper";
    bool jsonOut = false;
    std::string outPath;

    ValidationMode vmode() const {
        return mode == "strict" ? ValidationMode::Strict : ValidationMode::Paper;
    }
    void deliver(const std::string& artifact, const std::string& summary) const {
        if (!outPath.empty()) {
            write_text_file(outPath, artifact);
            if (!jsonOut && !summary.empty()) std::cout << summary;
        } else if (jsonOut || summary.empty()) {
            std::cout << artifact;
        } else {
            std::cout << artifact << summary;
        }
    }
};

void print_report_text(const ValidationReport& rep) {
    std::cout << (rep.ok ? "ok" : "FAILED") << " after " << rep.stepsChecked << " steps\n";
    for (const StepIssue& i : rep.issues) {
        if (i.step < 0)
            std::cout << "  final state: " << i.what << "\n";
        else
            std::cout << "  step " << i.step << ": " << i.what << "\n";
    }
}

int cmd_plan(const Common& c, const std::string& startFile, const std::string& goalFile,
             int maxIntermediates) {
    const Configuration start = load_config(startFile);
    const Configuration goal = load_config(goalFile);
    Rng rng(c.seed);
    const BitChain chain = bit_search(start, goal, rng, maxIntermediates);
    const FlatPlan plan = flatten_chain(chain, start, goal);

    const ValidationReport rep =
        validate_sequence(start, plan.steps, c.vmode(), &goal, &plan.goalToStart);
    if (!rep.ok) {
        print_report_text(rep);
        throw ValidationFailure("emitted plan failed " + c.mode + "-mode validation");
    }

    PlanFile pf;
    pf.n = start.size();
    pf.steps = plan.steps;
    pf.goal_to_start = plan.goalToStart;
    pf.compensations = plan.compensations;
    if (chain.hops.empty()) {
        pf.chain.push_back(cells_to_string(start));
    } else {
        pf.chain.push_back(cells_to_string(chain.hops.front().from));
        for (const Hop& h : chain.hops) pf.chain.push_back(cells_to_string(h.to));
    }

    int connects = 0;
    for (const Step& s : pf.steps)
        if (s.kind == StepKind::Connect) ++connects;
    std::ostringstream sum;
    sum << "plan: " << pf.steps.size() << " steps (" << connects << " connects, "
        << pf.steps.size() - connects << " disconnects), " << plan.hops << " hops, "
        << plan.compensations << " compensations, validated in " << c.mode << " mode\n";
    c.deliver(plan_to_json_text(pf), sum.str());
    return 0;
}

int cmd_validate(const Common& c, const std::string& planFile, const std::string& startFile,
                 const std::string& goalFile) {
    const PlanFile pf = load_plan(planFile);
    const Configuration start = load_config(startFile);
    std::optional<Configuration> goal;
    if (!goalFile.empty()) goal = load_config(goalFile);
    if (goal && pf.goal_to_start.empty())
        throw ParseError("plan carries no goal_to_start map; cannot check the goal");

    const ValidationReport rep =
        validate_sequence(start, pf.steps, c.vmode(), goal ? &*goal : nullptr,
                          goal ? &pf.goal_to_start : nullptr);
    if (c.jsonOut || !c.outPath.empty())
        c.deliver(report_to_json_text(rep), "");
    if (!c.jsonOut) print_report_text(rep);
    return rep.ok ? 0 : exit_info(ValidationFailure("")).code;
}

int cmd_bench(const Common& c, BenchOptions bo) {
    bo.seed = c.seed;
    const BenchResult r = run_bench(bo);
    const std::string summary = bench_summary_text(r);
    if (c.jsonOut) {
        json j{{"pairs", static_cast<int>(r.instances.size())},
               {"reps", r.options.reps},
               {"n", r.options.n},
               {"seed", r.options.seed},
               {"pairs_birrt_solved", r.pairsBirrtSolved},
               {"planner_ms_on_birrt_solved", r.plannerMsOnBirrtSolved},
               {"birrt_ms_on_solved", r.birrtMsOnSolved}};
        auto algo = [](const AlgoSummary& s) {
            return json{{"trials", s.trials},          {"successes", s.successes},
                        {"success_rate", s.successRate}, {"mean_steps", s.meanSteps},
                        {"avg_min_steps", s.avgMinSteps}, {"mean_ms", s.meanMs},
                        {"replays_ok", s.validated}};
        };
        if (r.options.runPlanner) j["ours"] = algo(r.planner);
        if (r.options.runBirrt) j["birrt"] = algo(r.birrt);
        if (!c.outPath.empty()) write_text_file(c.outPath, bench_csv(r));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (!c.outPath.empty()) {
        write_text_file(c.outPath, bench_csv(r));
        std::cout << summary;
    } else {
        std::cout << bench_csv(r);
        std::cerr << summary;
    }
    return 0;
}

int cmd_classify(const Common& c, int n, bool serial) {
    const ClassifyResult cr = isotypy_classes(n, !serial);
    std::ostringstream csv;
    csv << "n,canonical_form,S,component_id\n";
    for (const ClassRow& row : cr.rows)
        csv << row.n << ",\"" << row.canonicalForm << "\"," << row.S << ","
            << row.component << "\n";

    std::ostringstream sum;
    sum << "n=" << n << ": " << cr.rows.size() << " free shapes, S values {";
    bool first = true;
    for (const auto& [s, rows] : cr.classes) {
        sum << (first ? "" : ", ") << s << " x" << rows.size();
        first = false;
    }
    sum << "}, split classes: ";
    if (cr.splitClasses.empty()) {
        sum << "none";
    } else {
        for (std::size_t i = 0; i < cr.splitClasses.size(); ++i)
            sum << (i ? "," : "") << "S=" << cr.splitClasses[i];
    }
    sum << ", immobile zero-shapes: " << (cr.zeroShapesInert ? "yes" : "no") << "\n";
    if (cr.truncated) sum << "warning: signature search truncated on some shape\n";

    if (c.jsonOut) {
        json rows = json::array();
        for (const ClassRow& row : cr.rows)
            rows.push_back({{"index", row.freeIndex},
                            {"cells", row.canonicalForm},
                            {"S", row.S},
                            {"component", row.component}});
        json classes = json::object();
        for (const auto& [s, idx] : cr.classes) classes[std::to_string(s)] = idx;
        json j{{"n", n},
               {"rows", std::move(rows)},
               {"classes", std::move(classes)},
               {"split_classes", cr.splitClasses},
               {"zero_shapes_inert", cr.zeroShapesInert},
               {"truncated", cr.truncated}};
        if (!c.outPath.empty()) write_text_file(c.outPath, csv.str());
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    c.deliver(csv.str(), sum.str());
    return 0;
}

int cmd_enum(const Common& c, int n, bool fixed) {
    if (n < 1 || n > 10) throw ParseError("enum supports 1 <= n <= 10");
    const std::vector<Configuration> shapes =
        enumerate_polyominoes(n, fixed ? Symmetry::Translation : Symmetry::TranslationD4);
    if (c.jsonOut) {
        json arr = json::array();
        for (const Configuration& s : shapes) {
            json cells = json::array();
            for (const Vec2& v : s.cells_sorted()) cells.push_back({v.x, v.y});
            arr.push_back(std::move(cells));
        }
        c.deliver(json{{"n", n}, {"fixed", fixed}, {"count", shapes.size()},
                       {"shapes", std::move(arr)}}
                      .dump(2) +
                      "\n",
                  "");
        return 0;
    }
    std::ostringstream out;
    for (const Configuration& s : shapes) out << cells_to_string(s) << "\n";
    std::ostringstream sum;
    sum << (fixed ? "fixed" : "free") << " shapes of size " << n << ": " << shapes.size() << "\n";
    if (!c.outPath.empty()) {
        write_text_file(c.outPath, out.str());
        std::cout << sum.str();
    } else {
        std::cout << out.str();
        std::cerr << sum.str();
    }
    return 0;
}

int cmd_render(const Common& c, const std::string& file, const std::string& startFile) {
    const std::string text = read_text_file(file);
    json probe;
    try {
        probe = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    std::string svg;
    if (probe.is_object() && probe.contains("steps")) {
        if (startFile.empty())
            throw ParseError("rendering a plan needs --start with the start configuration");
        svg = render_plan_svg(load_config(startFile), plan_from_json_text(text).steps);
    } else {
        svg = render_config_svg(config_from_json_text(text));
    }
    c.deliver(svg, "");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"morphplan: lattice reconfiguration planning toolkit"};
    app.footer(kExitCodes);
    app.require_subcommand(1);

    Common c;
    app.add_option("--seed", c.seed, "seed for all randomized work")->capture_default_str();
    app.add_option("--mode", c.mode, "validation mode")
        ->check(CLI::IsMember({"paper", "strict"}))
        ->capture_default_str();
    app.add_flag("--json", c.jsonOut, "machine-readable output on stdout");
    app.add_option("--out", c.outPath, "write the primary artifact to this file");

    std::string startFile, goalFile, planFile, renderFile, renderStart;
    int maxIntermediates = 24;
    auto* plan = app.add_subcommand("plan", "search a reconfiguration plan between two shapes");
    plan->add_option("start", startFile, "start configuration JSON")->required();
    plan->add_option("goal", goalFile, "goal configuration JSON")->required();
    plan->add_option("--max-intermediates", maxIntermediates,
                     "random intermediate shapes to try before giving up")
        ->capture_default_str();

    auto* val = app.add_subcommand("validate", "replay a plan file against a start shape");
    val->add_option("plan", planFile, "plan JSON")->required();
    val->add_option("start", startFile, "start configuration JSON")->required();
    val->add_option("goal", goalFile, "goal configuration JSON (optional)");

    BenchOptions bo;
    std::string algo = "both";
    bool serial = false, noValidate = false;
    auto* bench = app.add_subcommand("bench", "seeded planner-vs-baseline benchmark");
    bench->add_option("-n,--size", bo.n, "modules per shape")->capture_default_str();
    bench->add_option("--pairs", bo.pairs, "random start/goal pairs")->capture_default_str();
    bench->add_option("--reps", bo.reps, "repetitions per pair")->capture_default_str();
    bench->add_option("--algo", algo, "which algorithms to run")
        ->check(CLI::IsMember({"ours", "birrt", "both"}))
        ->capture_default_str();
    bench->add_option("--iterations", bo.birrtIterations, "baseline iteration cutoff")
        ->capture_default_str();
    bench->add_option("--max-intermediates", bo.maxIntermediates,
                      "planner intermediate budget")
        ->capture_default_str();
    bench->add_flag("--serial", serial, "run trials on one thread");
    bench->add_flag("--no-validate", noValidate, "skip replaying produced plans");

    int classifyN = 4;
    bool classifySerial = false;
    auto* classify = app.add_subcommand("classify", "signature and reachability survey");
    classify->add_option("n", classifyN, "shape size (<= 8)")->required();
    classify->add_flag("--serial", classifySerial, "single-threaded survey");

    int enumN = 4;
    bool enumFixed = false;
    auto* enu = app.add_subcommand("enum", "list polyominoes of a size");
    enu->add_option("n", enumN, "shape size")->required();
    enu->add_flag("--fixed", enumFixed, "count translations only (no rotations/reflections)");

    auto* render = app.add_subcommand("render", "draw a configuration or plan as SVG");
    render->add_option("file", renderFile, "configuration or plan JSON")->required();
    render->add_option("--start", renderStart, "start configuration (for plan files)");

    for (CLI::App* sub : {plan, val, bench, classify, enu, render}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*plan) return cmd_plan(c, startFile, goalFile, maxIntermediates);
        if (*val) return cmd_validate(c, planFile, startFile, goalFile);
        if (*bench) {
            bo.runPlanner = algo != "birrt";
            bo.runBirrt = algo != "ours";
            bo.parallel = !serial;
            bo.validate = !noValidate;
            return cmd_bench(c, bo);
        }
        if (*classify) return cmd_classify(c, classifyN, classifySerial);
        if (*enu) return cmd_enum(c, enumN, enumFixed);
        if (*render) return cmd_render(c, renderFile, renderStart);
    } catch (const Error& e) {
        const ExitInfo info = exit_info(e);
        if (c.jsonOut)
            std::cout << json{{"error", {{"type", info.type}, {"what", e.what()}}}}.dump(2)
                      << "\n";
        else
            std::cerr << "error (" << info.type << "): " << e.what() << "\n";
        return info.code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
