#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morphplan/geom.hpp"
#include "morphplan/rng.hpp"

namespace morphplan {

using ModuleId = int;

struct Placement {
    ModuleId id;
    Vec2 cell;
    auto operator<=>(const Placement&) const = default;
};

// A set of unit-square modules on the integer lattice, identified by positive
// ids. Cells and ids are unique; storage is sorted by id.
class Configuration {
public:
    Configuration() = default;

    // Throws DuplicateCell / BadModuleId on malformed input.
    static Configuration from_placements(std::vector<Placement> mods);

    // Assigns ids 1..n in sorted cell order ((x,y) lexicographic).
    static Configuration from_cells(std::span<const Vec2> cells);
    static Configuration from_cells(std::initializer_list<Vec2> cells);

    int size() const { return static_cast<int>(mods_.size()); }
    const std::vector<Placement>& modules() const { return mods_; }

    Vec2 cell(ModuleId id) const;                   // throws BadModuleId
    std::optional<ModuleId> id_at(Vec2 cell) const;
    bool has_cell(Vec2 cell) const { return id_at(cell).has_value(); }

    std::vector<Vec2> cells_sorted() const;

    bool connected() const;

    // Translation-normalized sorted cell list as a stable dedup/cache key.
    std::string shape_key() const;

    bool same_shape(const Configuration& other) const {
        return shape_key() == other.shape_key();
    }

    auto operator<=>(const Configuration&) const = default;

private:
    std::vector<Placement> mods_;  // sorted by id
};

enum class Symmetry {
    Translation,    // fixed polyomino identity
    TranslationD4,  // free polyomino identity (rotations + reflections)
};

struct NormalizeResult {
    Configuration config;
    std::map<ModuleId, ModuleId> label_map;  // original id -> normalized id
};

// Canonical form: minimum translation (bounding box corner at origin), for
// TranslationD4 additionally the lexicographically smallest cell sequence over
// the eight transforms, then ids relabeled 1..n in sorted cell order.
NormalizeResult normalize(const Configuration& c, Symmetry mode);

// True when all cells lie on one straight line (any orientation); n <= 2 counts.
bool is_linear(const Configuration& c);

// All polyominoes of size n as canonical configurations, deterministic order.
std::vector<Configuration> enumerate_polyominoes(int n, Symmetry mode);

// Seeded uniform growth: start from one cell, repeatedly add a uniformly
// chosen free neighbor cell of the current shape. Translation-normalized.
Configuration random_polyomino(int n, Rng& rng);

std::string cells_to_string(const Configuration& c);

}  // namespace morphplan
