#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace morphplan {

struct Vec2 {
    int x = 0;
    int y = 0;
    auto operator<=>(const Vec2&) const = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }

constexpr int dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr int cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr int manhattan(Vec2 a, Vec2 b) {
    int dx = a.x - b.x, dy = a.y - b.y;
    return (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
}

// Counter-clockwise quarter turns, r taken mod 4.
constexpr Vec2 rot90(Vec2 v) { return {-v.y, v.x}; }
constexpr Vec2 rotq(Vec2 v, int r) {
    switch (r & 3) {
        case 0: return v;
        case 1: return rot90(v);
        case 2: return {-v.x, -v.y};
        default: return {v.y, -v.x};
    }
}

// The four docking faces of a module. The attached unit vectors are a fixed
// convention of the hardware description and are deliberately not the naive
// screen directions: Top carries (0,1), Left (1,0), Bottom (0,-1), Right (-1,0).
enum class Dir : std::uint8_t { Top = 0, Left = 1, Bottom = 2, Right = 3 };

inline constexpr std::array<Vec2, 4> kDirVec{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};
inline constexpr std::array<const char*, 4> kDirName{{"Top", "Left", "Bottom", "Right"}};
inline constexpr std::array<Dir, 4> kAllDirs{Dir::Top, Dir::Left, Dir::Bottom, Dir::Right};

constexpr Vec2 dir_vec(Dir d) { return kDirVec[static_cast<int>(d)]; }
constexpr Dir opposite(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 2) & 3); }
constexpr bool perpendicular(Dir a, Dir b) { return dot(dir_vec(a), dir_vec(b)) == 0; }

constexpr std::optional<Dir> dir_from_vec(Vec2 v) {
    for (int i = 0; i < 4; ++i)
        if (kDirVec[i] == v) return static_cast<Dir>(i);
    return std::nullopt;
}

inline const char* dir_name(Dir d) { return kDirName[static_cast<int>(d)]; }

inline std::optional<Dir> dir_parse(std::string_view s) {
    for (int i = 0; i < 4; ++i)
        if (s == kDirName[i]) return static_cast<Dir>(i);
    return std::nullopt;
}

inline std::string to_string(Vec2 v) {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

}  // namespace morphplan
