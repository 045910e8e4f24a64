#pragma once

#include "wind/lattice_walk.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wind {

struct DegeneratePointError : std::domain_error {
    DegeneratePointError() : std::domain_error("degenerate point") {}
};

// Reference frame for the excursion decomposition around a point z.
// Square lattice: z_hat is the center of the cell containing z and the
// two half-lines are z_hat +- t(1+i).  Triangular lattice: s is the
// basis-horizontal edge of the triangle containing z and the two sides
// are the open half-planes of its supporting line.
struct DiagonalFrame {
    LatticeKind lattice = LatticeKind::Square;
    Vec2 z;        // Euclidean coordinates
    Vec2 z_basis;  // basis coordinates (== z for square)
    Vec2 z_hat;    // cell center (square) / midpoint of s (triangular), basis
    std::int64_t cell_x = 0, cell_y = 0;
    std::uint8_t sub = 0;      // triangular: 0 up, 1 down
    std::int64_t diag_c = 0;   // square: vertices on the line satisfy x - y == diag_c
    IVec2 s_a{}, s_b{};        // triangular: endpoints of s
    std::int64_t line_y = 0;   // triangular: supporting line y == line_y (basis)
};

enum class ExcClass : std::uint8_t { Unclassified, Small, Medium, Large };

struct Excursion {
    std::int64_t t_start = 0;
    std::int64_t t_end = 0;
    double weight = 0.0;  // in {-1/2, 0, +1/2}; 0 only on the triangular lattice
    ExcClass cls = ExcClass::Unclassified;
};

struct ExcursionSet {
    DiagonalFrame frame;
    std::vector<Excursion> excursions;
    double theta_over_2pi = 0.0;  // full-walk winding angle around z / 2 pi
    double weight_sum = 0.0;
    double residual = 0.0;  // |theta/2pi - sum w|
    std::int64_t s_traversals = 0;  // triangular: g_n(s)

    // Filled by classify():
    std::int64_t crossings = -1;  // #{i : tau_i <= n}
    std::int64_t n_small = 0, n_medium = 0, n_large = 0;
    std::int64_t n_medium_far = 0;   // medium, starting outside B(z, 8 r_n)
    std::int64_t n_medium_near = 0;  // medium, starting inside
};

DiagonalFrame build_frame(Vec2 z, LatticeKind lattice);

// compute_theta = false skips the O(n) winding-angle pass (theta and
// residual stay 0), for counting-only workloads.
ExcursionSet decompose(const WalkPath& path, const DiagonalFrame& frame,
                       bool compute_theta = true);

ExcursionSet classify(ExcursionSet set, const ScaleParams& params,
                      const WalkPath& path);

struct WeightSymmetry {
    std::int64_t n_plus = 0, n_minus = 0;
    std::int64_t per_class_plus[4] = {0, 0, 0, 0};   // indexed by ExcClass
    std::int64_t per_class_minus[4] = {0, 0, 0, 0};
    double mean_weight = 0.0;
    double std_error = 0.0;
    double p_value = 1.0;  // two-sided binomial test of +1/2 vs -1/2
};
WeightSymmetry weight_symmetry_stats(std::span<const ExcursionSet> samples);

std::string excursion_set_to_json(const ExcursionSet& set);

}  // namespace wind
