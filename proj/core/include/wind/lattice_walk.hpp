#pragma once

#include "wind/geometry.hpp"
#include "wind/rng.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace wind {

enum class LatticeKind { Square, Triangular };

// Step sets.  Square: the 4 unit vectors.  Triangular: the 6 unit
// vectors exp(ik pi/3), stored in the integer (a, b) basis with
// embedding (a, b) -> a*(1, 0) + b*(1/2, sqrt(3)/2).
inline std::span<const IVec2> step_set(LatticeKind k) {
    static constexpr std::array<IVec2, 4> kSquare{
        IVec2{1, 0}, IVec2{0, 1}, IVec2{-1, 0}, IVec2{0, -1}};
    static constexpr std::array<IVec2, 6> kTriangular{
        IVec2{1, 0},  IVec2{0, 1},  IVec2{-1, 1},
        IVec2{-1, 0}, IVec2{0, -1}, IVec2{1, -1}};
    if (k == LatticeKind::Square) return kSquare;
    return kTriangular;
}

// Euclidean embedding of a lattice coordinate.
inline Vec2 embed(LatticeKind k, IVec2 v) {
    if (k == LatticeKind::Square)
        return {static_cast<double>(v.x), static_cast<double>(v.y)};
    constexpr double kHalfSqrt3 = 0.86602540378443864676;
    return {static_cast<double>(v.x) + 0.5 * static_cast<double>(v.y),
            kHalfSqrt3 * static_cast<double>(v.y)};
}

// Per-coordinate step variance.  1/2 for both lattices; the triangular
// value is re-derived from the step set in a unit test.
inline double step_variance(LatticeKind k) {
    (void)k;
    return 0.5;
}

struct WalkPath {
    LatticeKind lattice = LatticeKind::Square;
    std::vector<IVec2> vertices;  // length n + 1, vertices[0] = origin
    std::uint64_t seed = 0;
    std::int64_t n = 0;
};

struct ClosedLoop {
    WalkPath path;
    IVec2 chord_from;  // = path.vertices[n]
    IVec2 chord_to;    // = path.vertices[0]
    bool chord_degenerate() const { return chord_from == chord_to; }
};

struct ScaleParams {
    std::int64_t n = 2;
    double kappa = 0.5;
    double c0 = 1.0;
    // Near-zone radius in lattice units, r_n = c0 * ln n.
    double r_n() const;
};

WalkPath gen_walk(LatticeKind lattice, std::int64_t n, std::uint64_t seed);
ClosedLoop close_loop(WalkPath path);

ScaleParams make_scale_params(std::int64_t n, LatticeKind lattice, double c0 = 1.0);

}  // namespace wind
