#pragma once

#include "wind/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wind {

enum class BMKind { Motion, Bridge };

// Sampled planar Brownian motion (or bridge) on [0, 1]: m + 1 points at
// times k/m, samples[0] = 0.  The bridge is beta_t - t * beta_1, so
// samples[m] = 0 as well.
struct BMPath {
    std::int64_t m = 0;
    BMKind kind = BMKind::Motion;
    std::uint64_t seed = 0;
    std::vector<Vec2> samples;
};

BMPath gen_bm(std::int64_t m, std::uint64_t seed);
BMPath gen_bridge(std::int64_t m, std::uint64_t seed);

// Raised when a query point collides with a (possibly refined) sample;
// the caller should redraw z or the path.
struct ResampleSignal : std::runtime_error {
    ResampleSignal() : std::runtime_error("query point hit a path sample") {}
};

// Winding angle of the sampled polyline around z.  Segments passing
// within their own length of z are refined by conditional Brownian
// bridge midpoint insertion (deterministic per (path seed, segment,
// tree node)) up to max_refine_depth, which shrinks the missed-winding
// bias near the path.
struct WindingResult {
    double angle = 0.0;
    std::int64_t refinements = 0;  // midpoints inserted
};
WindingResult bm_winding_angle(const BMPath& path, Vec2 z,
                               int max_refine_depth = 12);

// Z_eps of Eq-style clock: sqrt of the Riemann sum of
// 1{|beta_k - z| >= eps} |beta_k - z|^-2 / m over k = 0..m-1.
struct ClockValue {
    Vec2 z;
    double epsilon = 0.0;
    double value = 0.0;
};
ClockValue z_epsilon(const BMPath& path, Vec2 z, double epsilon);

// Wiener sausage membership: does the path pass within eps of z?
// Exact for the polyline at depth 0; with refinement, segments whose
// chord comes within eps + 3 sqrt(dt) of z are subdivided by bridge
// midpoints until hit/miss is resolved at scale well below eps.
bool sausage_contains(const BMPath& path, double epsilon, Vec2 z,
                      int max_refine_depth = 0);

// First sample time k/m with |beta_k - z| <= r, if any.
std::optional<double> hitting_time(const BMPath& path, Vec2 z, double r);

// Werner-style area estimates: for each k, estimate of
// k^2 * area{z : Delta Theta(z) in [2 pi k, 2 pi (k+1))}, where
// Delta Theta is the winding angle of the open path around z.  Areas
// are measured by stratified (jittered-grid) sampling of z over a disc
// enclosing the path; the winding bin is computed exactly for the
// sampled polyline via ray crossings plus the chord-subtended angle.
struct WernerEstimate {
    int k = 0;
    double mean = 0.0;  // of k^2 * area, across paths
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::int64_t paths = 0;
};

// From caller-supplied paths (tests substitute synthetic polylines).
// refine_depth > 0 turns on deep bridge refinement of segments near the
// query point: the mass of the high-k winding bins sits exponentially
// close to the curve, far below the base resolution, and is invisible
// without it.  Depths of ~50-64 approach the double-precision floor.
std::vector<WernerEstimate> werner_area_from_paths(
    std::span<const BMPath> paths, std::span<const int> k_values,
    std::int64_t z_samples_per_path, std::uint64_t seed, int refine_depth = 0);

// Convenience: generates `paths` Brownian motions at resolution m.
std::vector<WernerEstimate> werner_area_estimate(
    std::span<const int> k_values, std::int64_t paths, std::int64_t m,
    std::uint64_t seed, std::int64_t z_samples_per_path = 32400,
    int refine_depth = 0);

}  // namespace wind
