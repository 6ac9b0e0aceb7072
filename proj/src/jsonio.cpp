#include "morphplan/jsonio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "morphplan/errors.hpp"
#include "morphplan/graph.hpp"

namespace morphplan {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw ParseError(what);
}

}  // namespace

Configuration config_from_json_text(const std::string& text) {
    const json j = parse_or_throw(text);
    require(j.is_object() && j.contains("modules") && j.at("modules").is_array(),
            "expected {\"modules\": [...]}");
    std::vector<Placement> mods;
    for (const json& m : j.at("modules")) {
        require(m.is_object() && m.contains("id") && m.contains("cell"), "module needs id and cell");
        const json& id = m.at("id");
        const json& cell = m.at("cell");
        require(id.is_number_integer(), "module id must be an integer");
        require(cell.is_array() && cell.size() == 2 && cell[0].is_number_integer() &&
                    cell[1].is_number_integer(),
                "cell must be [x, y]");
        mods.push_back({id.get<ModuleId>(), {cell[0].get<int>(), cell[1].get<int>()}});
    }
    return Configuration::from_placements(std::move(mods));
}

std::string config_to_json_text(const Configuration& c) {
    json mods = json::array();
    for (const Placement& p : c.modules())
        mods.push_back({{"id", p.id}, {"cell", {p.cell.x, p.cell.y}}});
    return json{{"modules", std::move(mods)}}.dump(2) + "\n";
}

Configuration load_config(const std::string& path) {
    return config_from_json_text(read_text_file(path));
}

void save_config(const Configuration& c, const std::string& path) {
    write_text_file(path, config_to_json_text(c));
}

std::string plan_to_json_text(const PlanFile& p) {
    json steps = json::array();
    for (const Step& s : p.steps) {
        json row{{"op", s.kind == StepKind::Connect ? "connect" : "disconnect"},
                 {"edge", {s.edge.first, s.edge.second}},
                 {"compensation", s.compensation}};
        if (s.kind == StepKind::Connect) {
            row["faces"] = {dir_name(*s.su), dir_name(*s.sv)};
            row["cycle"] = s.cycle;
        }
        steps.push_back(std::move(row));
    }
    json j{{"n", p.n}, {"compensations", p.compensations}, {"steps", std::move(steps)}};
    if (!p.goal_to_start.empty()) {
        json m = json::object();
        for (const auto& [g, s] : p.goal_to_start) m[std::to_string(g)] = s;
        j["goal_to_start"] = std::move(m);
    }
    if (!p.chain.empty()) j["chain"] = p.chain;
    return j.dump(2) + "\n";
}

PlanFile plan_from_json_text(const std::string& text) {
    const json j = parse_or_throw(text);
    require(j.is_object() && j.contains("steps") && j.at("steps").is_array(),
            "expected a plan object with steps");
    PlanFile p;
    try {
        p.n = j.value("n", 0);
        p.compensations = j.value("compensations", 0);
        if (j.contains("chain"))
            p.chain = j.at("chain").get<std::vector<std::string>>();
        if (j.contains("goal_to_start") && !j.at("goal_to_start").is_null()) {
            require(j.at("goal_to_start").is_object(), "goal_to_start must map ids to ids");
            for (const auto& [k, v] : j.at("goal_to_start").items())
                p.goal_to_start[std::stoi(k)] = v.get<ModuleId>();
        }
        for (const json& row : j.at("steps")) {
            require(row.is_object() && row.contains("op") && row.contains("edge"),
                    "step needs op and edge");
            const std::string op = row.at("op").get<std::string>();
            const json& e = row.at("edge");
            require(e.is_array() && e.size() == 2, "edge must be [a, b]");
            const EdgeKey key = make_edge_key(e[0].get<ModuleId>(), e[1].get<ModuleId>());
            Step s;
            if (op == "connect") {
                require(row.contains("faces") && row.at("faces").is_array() &&
                            row.at("faces").size() == 2,
                        "connect needs faces [a, b]");
                auto fa = dir_parse(row.at("faces")[0].get<std::string>());
                auto fb = dir_parse(row.at("faces")[1].get<std::string>());
                require(fa.has_value() && fb.has_value(), "unknown face name");
                s.kind = StepKind::Connect;
                s.su = *fa;
                s.sv = *fb;
                if (row.contains("cycle"))
                    s.cycle = row.at("cycle").get<std::vector<ModuleId>>();
            } else if (op == "disconnect") {
                s.kind = StepKind::Disconnect;
            } else {
                throw ParseError("unknown step op: " + op);
            }
            s.edge = key;
            s.compensation = row.value("compensation", false);
            p.steps.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad plan JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ParseError("goal_to_start keys must be integers");
    } catch (const std::out_of_range&) {
        throw ParseError("goal_to_start keys must be integers");
    }
    return p;
}

void save_plan(const PlanFile& p, const std::string& path) {
    write_text_file(path, plan_to_json_text(p));
}

PlanFile load_plan(const std::string& path) { return plan_from_json_text(read_text_file(path)); }

std::string report_to_json_text(const ValidationReport& r) {
    json issues = json::array();
    for (const StepIssue& i : r.issues) issues.push_back({{"step", i.step}, {"what", i.what}});
    return json{{"ok", r.ok}, {"steps_checked", r.stepsChecked}, {"issues", std::move(issues)}}
               .dump(2) +
           "\n";
}

namespace {

constexpr int kUnit = 40;
constexpr int kPad = 14;

struct Canvas {
    std::ostringstream out;
    int minX = 0, maxY = 0;

    // Lattice cell -> top-left pixel of its square (SVG y grows downwards).
    double px(int x) const { return kPad + (x - minX) * kUnit; }
    double py(int y) const { return kPad + (maxY - y) * kUnit; }
};

void draw_cells(Canvas& cv, const Configuration& c, double dy, const char* fill) {
    for (const Placement& p : c.modules()) {
        cv.out << "  <rect x=\"" << cv.px(p.cell.x) << "\" y=\"" << cv.py(p.cell.y) + dy
               << "\" width=\"" << kUnit << "\" height=\"" << kUnit << "\" fill=\"" << fill
               << "\" stroke=\"#455\" stroke-width=\"1\"/>\n";
    }
    for (const Placement& p : c.modules()) {
        cv.out << "  <text x=\"" << cv.px(p.cell.x) + kUnit / 2.0 << "\" y=\""
               << cv.py(p.cell.y) + dy + kUnit / 2.0
               << "\" font-size=\"13\" font-family=\"monospace\" text-anchor=\"middle\" "
                  "dominant-baseline=\"central\" fill=\"#223\">"
               << p.id << "</text>\n";
    }
}

void frame_bounds(Canvas& cv, const Configuration& c, int& w, int& h) {
    int minX = c.modules()[0].cell.x, maxX = minX;
    int minY = c.modules()[0].cell.y, maxY = minY;
    for (const Placement& p : c.modules()) {
        minX = std::min(minX, p.cell.x);
        maxX = std::max(maxX, p.cell.x);
        minY = std::min(minY, p.cell.y);
        maxY = std::max(maxY, p.cell.y);
    }
    cv.minX = minX;
    cv.maxY = maxY;
    w = 2 * kPad + (maxX - minX + 1) * kUnit;
    h = 2 * kPad + (maxY - minY + 1) * kUnit;
}

void draw_edge(Canvas& cv, const Configuration& c, EdgeKey e, double dy, const char* stroke,
               int width, bool dashed) {
    const Vec2 a = c.cell(e.first), b = c.cell(e.second);
    cv.out << "  <line x1=\"" << cv.px(a.x) + kUnit / 2.0 << "\" y1=\"" << cv.py(a.y) + dy + kUnit / 2.0
           << "\" x2=\"" << cv.px(b.x) + kUnit / 2.0 << "\" y2=\"" << cv.py(b.y) + dy + kUnit / 2.0
           << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\""
           << (dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
}

std::string svg_doc(const Canvas& cv, int w, int h) {
    std::ostringstream doc;
    doc << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
        << cv.out.str() << "</svg>\n";
    return doc.str();
}

}  // namespace

std::string render_config_svg(const Configuration& c) {
    if (c.size() == 0) throw IoError("nothing to render");
    Canvas cv;
    int w = 0, h = 0;
    frame_bounds(cv, c, w, h);
    draw_cells(cv, c, 0.0, "#dbe7f4");
    // Mark every touching face pair across the shared border.
    const ConnectionGraph g = ConnectionGraph::from_config(c);
    for (const Edge& e : g.edges())
        draw_edge(cv, c, make_edge_key(e.u, e.v), 0.0, "#c0504d", 4, false);
    return svg_doc(cv, w, h);
}

std::string render_plan_svg(const Configuration& start, const std::vector<Step>& steps) {
    if (start.size() == 0) throw IoError("nothing to render");
    Canvas cv;
    int w = 0, h = 0;
    frame_bounds(cv, start, w, h);
    const int frameH = h + 22;

    ConnectionGraph g = ConnectionGraph::from_config(start);
    const int frames = static_cast<int>(steps.size()) + 1;
    for (int f = 0; f < frames; ++f) {
        const double dy = static_cast<double>(f) * frameH;
        std::string caption = "initial";
        EdgeKey mark{0, 0};
        bool markNew = false;
        if (f > 0) {
            const Step& s = steps[f - 1];
            std::ostringstream cap;
            cap << "step " << f << ": "
                << (s.kind == StepKind::Connect ? "connect " : "disconnect ") << s.edge.first << "-"
                << s.edge.second;
            if (s.kind == StepKind::Connect)
                cap << " (" << dir_name(*s.su) << "/" << dir_name(*s.sv) << ")";
            if (s.compensation) cap << " [compensation]";
            caption = cap.str();
            // Best-effort replay: a malformed plan still renders, the frame
            // just shows the graph unchanged.
            try {
                if (s.kind == StepKind::Connect)
                    g.add_edge({s.edge.first, s.edge.second, s.su, s.sv, true});
                else
                    g.remove_edge(s.edge.first, s.edge.second);
            } catch (const Error&) {
            }
            mark = s.edge;
            markNew = s.kind == StepKind::Connect;
        }
        draw_cells(cv, start, dy, f == 0 ? "#dbe7f4" : "#e8eef3");
        for (const Edge& e : g.edges()) {
            const EdgeKey key = make_edge_key(e.u, e.v);
            const bool geometric = manhattan(start.cell(e.u), start.cell(e.v)) == 1;
            if (f > 0 && key == mark) continue;  // drawn highlighted below
            draw_edge(cv, start, key, dy, geometric ? "#7a8aa0" : "#4a7dbf", 2, !geometric);
        }
        if (f > 0 && (!markNew || g.has_edge(mark.first, mark.second))) {
            try {
                draw_edge(cv, start, mark, dy, "#c0392b", 3, !markNew);
            } catch (const Error&) {  // step naming modules the start never had
            }
        }
        cv.out << "  <text x=\"" << kPad << "\" y=\"" << dy + h + 14
               << "\" font-size=\"12\" font-family=\"monospace\" fill=\"#333\">" << caption
               << "</text>\n";
    }
    return svg_doc(cv, w, frames * frameH);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("cannot write " + path);
}

}  // namespace morphplan
