#include "morphplan/config.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "morphplan/errors.hpp"

namespace morphplan {

Configuration Configuration::from_placements(std::vector<Placement> mods) {
    std::sort(mods.begin(), mods.end(),
              [](const Placement& a, const Placement& b) { return a.id < b.id; });
    std::set<Vec2> seen_cells;
    for (std::size_t i = 0; i < mods.size(); ++i) {
        if (mods[i].id <= 0)
            throw BadModuleId("module ids must be positive, got " + std::to_string(mods[i].id));
        if (i > 0 && mods[i].id == mods[i - 1].id)
            throw BadModuleId("duplicate module id " + std::to_string(mods[i].id));
        if (!seen_cells.insert(mods[i].cell).second)
            throw DuplicateCell("two modules share cell " + to_string(mods[i].cell));
    }
    Configuration c;
    c.mods_ = std::move(mods);
    return c;
}

Configuration Configuration::from_cells(std::span<const Vec2> cells) {
    std::vector<Vec2> sorted(cells.begin(), cells.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Placement> mods;
    mods.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        mods.push_back({static_cast<ModuleId>(i + 1), sorted[i]});
    return from_placements(std::move(mods));
}

Configuration Configuration::from_cells(std::initializer_list<Vec2> cells) {
    return from_cells(std::span<const Vec2>(cells.begin(), cells.size()));
}

Vec2 Configuration::cell(ModuleId id) const {
    auto it = std::lower_bound(mods_.begin(), mods_.end(), id,
                               [](const Placement& p, ModuleId v) { return p.id < v; });
    if (it == mods_.end() || it->id != id)
        throw BadModuleId("unknown module id " + std::to_string(id));
    return it->cell;
}

std::optional<ModuleId> Configuration::id_at(Vec2 cell) const {
    for (const auto& p : mods_)
        if (p.cell == cell) return p.id;
    return std::nullopt;
}

std::vector<Vec2> Configuration::cells_sorted() const {
    std::vector<Vec2> cells;
    cells.reserve(mods_.size());
    for (const auto& p : mods_) cells.push_back(p.cell);
    std::sort(cells.begin(), cells.end());
    return cells;
}

bool Configuration::connected() const {
    if (mods_.empty()) return true;
    std::set<Vec2> cells;
    for (const auto& p : mods_) cells.insert(p.cell);
    std::vector<Vec2> stack{mods_.front().cell};
    std::set<Vec2> seen{mods_.front().cell};
    while (!stack.empty()) {
        Vec2 c = stack.back();
        stack.pop_back();
        for (Dir d : kAllDirs) {
            Vec2 n = c + dir_vec(d);
            if (cells.count(n) && seen.insert(n).second) stack.push_back(n);
        }
    }
    return seen.size() == cells.size();
}

namespace {

std::vector<Vec2> translate_to_origin(std::vector<Vec2> cells) {
    if (cells.empty()) return cells;
    int mx = cells[0].x, my = cells[0].y;
    for (const Vec2& c : cells) {
        mx = std::min(mx, c.x);
        my = std::min(my, c.y);
    }
    for (Vec2& c : cells) c = c - Vec2{mx, my};
    return cells;
}

std::string key_of(const std::vector<Vec2>& sorted_cells) {
    std::string key;
    key.reserve(sorted_cells.size() * 6);
    for (const Vec2& c : sorted_cells) {
        key += std::to_string(c.x);
        key += ',';
        key += std::to_string(c.y);
        key += ';';
    }
    return key;
}

// The 8 lattice symmetries as (rotation quarter-turns, mirror-x first).
std::vector<Vec2> apply_d4(const std::vector<Vec2>& cells, int transform) {
    std::vector<Vec2> out;
    out.reserve(cells.size());
    for (Vec2 c : cells) {
        if (transform >= 4) c.x = -c.x;
        out.push_back(rotq(c, transform & 3));
    }
    return out;
}

std::vector<Vec2> canonical_cells(const std::vector<Vec2>& cells, Symmetry mode) {
    std::vector<Vec2> best = translate_to_origin(cells);
    std::sort(best.begin(), best.end());
    if (mode == Symmetry::Translation) return best;
    for (int t = 1; t < 8; ++t) {
        std::vector<Vec2> cand = translate_to_origin(apply_d4(cells, t));
        std::sort(cand.begin(), cand.end());
        if (cand < best) best = cand;
    }
    return best;
}

}  // namespace

NormalizeResult normalize(const Configuration& c, Symmetry mode) {
    std::vector<Vec2> raw;
    raw.reserve(c.modules().size());
    for (const auto& p : c.modules()) raw.push_back(p.cell);

    std::vector<Vec2> canon = canonical_cells(raw, mode);

    // Recover which transform produced the canonical cells so module labels can
    // be traced through it (first matching transform in fixed order wins).
    int winner = 0;
    std::vector<Vec2> winner_cells;
    int max_t = (mode == Symmetry::Translation) ? 1 : 8;
    for (int t = 0; t < max_t; ++t) {
        std::vector<Vec2> cand = translate_to_origin(apply_d4(raw, t));
        std::vector<Vec2> sorted = cand;
        std::sort(sorted.begin(), sorted.end());
        if (sorted == canon) {
            winner = t;
            winner_cells = std::move(cand);  // index-aligned with c.modules()
            break;
        }
    }
    (void)winner;

    // ids 1..n by sorted transformed cell.
    std::vector<std::pair<Vec2, ModuleId>> order;
    order.reserve(winner_cells.size());
    for (std::size_t i = 0; i < winner_cells.size(); ++i)
        order.push_back({winner_cells[i], c.modules()[i].id});
    std::sort(order.begin(), order.end());

    NormalizeResult res;
    std::vector<Placement> mods;
    mods.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        ModuleId fresh = static_cast<ModuleId>(i + 1);
        res.label_map[order[i].second] = fresh;
        mods.push_back({fresh, order[i].first});
    }
    res.config = Configuration::from_placements(std::move(mods));
    return res;
}

std::string Configuration::shape_key() const {
    std::vector<Vec2> cells;
    cells.reserve(mods_.size());
    for (const auto& p : mods_) cells.push_back(p.cell);
    cells = translate_to_origin(std::move(cells));
    std::sort(cells.begin(), cells.end());
    return key_of(cells);
}

bool is_linear(const Configuration& c) {
    const auto& mods = c.modules();
    if (mods.size() <= 2) return true;
    Vec2 a = mods[0].cell, b = mods[1].cell;
    for (std::size_t i = 2; i < mods.size(); ++i)
        if (cross(b - a, mods[i].cell - a) != 0) return false;
    return true;
}

std::vector<Configuration> enumerate_polyominoes(int n, Symmetry mode) {
    if (n <= 0) return {};
    std::set<std::string> seen;
    std::vector<std::vector<Vec2>> level{{Vec2{0, 0}}};
    if (n == 1) return {Configuration::from_cells({Vec2{0, 0}})};
    for (int sz = 2; sz <= n; ++sz) {
        std::set<std::string> next_seen;
        std::vector<std::vector<Vec2>> next;
        for (const auto& shape : level) {
            std::set<Vec2> cells(shape.begin(), shape.end());
            std::set<Vec2> grown;
            for (const Vec2& c : shape)
                for (Dir d : kAllDirs) {
                    Vec2 nb = c + dir_vec(d);
                    if (!cells.count(nb)) grown.insert(nb);
                }
            for (const Vec2& g : grown) {
                std::vector<Vec2> bigger = shape;
                bigger.push_back(g);
                std::vector<Vec2> canon = canonical_cells(bigger, mode);
                std::string key = key_of(canon);
                if (next_seen.insert(key).second) next.push_back(std::move(canon));
            }
        }
        level = std::move(next);
    }
    std::sort(level.begin(), level.end());
    std::vector<Configuration> out;
    out.reserve(level.size());
    for (const auto& shape : level)
        out.push_back(Configuration::from_cells(shape));
    (void)seen;
    return out;
}

Configuration random_polyomino(int n, Rng& rng) {
    std::set<Vec2> cells{Vec2{0, 0}};
    while (static_cast<int>(cells.size()) < n) {
        std::set<Vec2> frontier;
        for (const Vec2& c : cells)
            for (Dir d : kAllDirs) {
                Vec2 nb = c + dir_vec(d);
                if (!cells.count(nb)) frontier.insert(nb);
            }
        auto it = frontier.begin();
        std::advance(it, static_cast<long>(rng.below(frontier.size())));
        cells.insert(*it);
    }
    std::vector<Vec2> v(cells.begin(), cells.end());
    v = translate_to_origin(std::move(v));
    return Configuration::from_cells(v);
}

std::string cells_to_string(const Configuration& c) {
    std::string s;
    for (const Vec2& cell : c.cells_sorted()) {
        if (!s.empty()) s += ' ';
        s += to_string(cell);
    }
    return s;
}

}  // namespace morphplan
