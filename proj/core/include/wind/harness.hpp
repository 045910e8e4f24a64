#pragma once

#include "wind/geometry.hpp"
#include "wind/lattice_walk.hpp"
#include "wind/stats.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wind {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    TotalWindingScaling,
    PointwiseIndex,
    Belisle,
    Werner,
    Spitzer,
    ExcursionCensus,
    DehnRnd,
    DehnAvg,
};

// Declarative experiment description.  JSON schema (version 1) rejects
// unknown keys; see README for the field reference.
struct ExperimentConfig {
    int schema_version = 1;
    ExperimentKind experiment = ExperimentKind::TotalWindingScaling;
    LatticeKind lattice = LatticeKind::Square;
    std::vector<std::int64_t> n_values;
    std::int64_t samples = 1;
    std::vector<Vec2> z_points;
    double c0 = 1.0;
    std::int64_t bm_resolution = 100000;
    std::vector<double> epsilon;
    std::vector<int> k_values;        // werner
    std::int64_t z_samples = 32400;   // werner: z draws per path
    int refine_depth = 12;            // spitzer/werner refinement cap
    int dehn_dimension = 2;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string output_dir = ".";

    static ExperimentConfig from_json(const std::string& text);
    std::string to_json() const;
    // Stable 64-bit hash of the scientific content (everything except
    // workers and output_dir, which cannot change results).
    std::string content_hash() const;
};

struct RunResult {
    std::string config_hash;
    std::string version;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // formatted cells
    double wall_ms = 0.0;
    // Raw per-sample values of the first component, per cell, kept for
    // downstream statistics (KS, quantiles).
    std::vector<std::vector<double>> raw;
};

RunResult run(const ExperimentConfig& config);

// Serializes result rows; first line carries the config hash and
// version.  Writes atomically (temp file + rename).
std::string to_csv(const RunResult& result);
void emit_csv(const RunResult& result, const std::string& path);

// Writes <output_dir>/<experiment>.csv, manifest.json and, where a
// reference curve exists, an SVG plot.  Returns the CSV path.
std::string emit_outputs(const ExperimentConfig& config, const RunResult& result);

// KS distance of 2 theta_n(z)/ln n against the hyperbolic secant law,
// with deciles of the empirical sample.  The continuous winding angle
// is used rather than its closest integer: the integer law keeps atoms
// of mass ~0.3 at feasible n, which floors the KS distance near 0.15.
struct BelisleResult {
    double ks = 0.0;
    std::vector<double> quantiles;  // 10%, 20%, ..., 90%
    std::int64_t samples = 0;
};
BelisleResult belisle_test(std::int64_t n, Vec2 z, std::int64_t samples,
                           std::uint64_t seed, int workers = 1);

// OLS of mean/n against ln ln n (for total-winding scaling runs).
LinearFit scaling_fit(std::span<const double> n_values,
                      std::span<const double> mean_over_n);

const char* experiment_name(ExperimentKind k);
const char* version_string();

// Closest-integer winding number of the open n-step walk around z
// (equals the closed-loop index off the chord).  Shared by the
// belisle and pointwise experiments.
std::int64_t open_walk_index(WalkPath path, Vec2 z);

// Exact continuous winding angle of the open walk around z, via the
// closed-loop index and the chord-subtended angle (no atan2 sweep).
// The belisle statistic is 2 * angle / ln n.
double open_walk_angle(WalkPath path, Vec2 z);

}  // namespace wind
