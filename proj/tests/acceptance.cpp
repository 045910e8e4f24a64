// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if
// any criterion fails.  Each check pins its own seeds, sample counts
// and tolerances; the whole run fits comfortably in the ctest timeout
// on a single core.

#include "wind/brownian.hpp"
#include "wind/dehn.hpp"
#include "wind/excursions.hpp"
#include "wind/expint.hpp"
#include "wind/harness.hpp"
#include "wind/lattice_walk.hpp"
#include "wind/rng.hpp"
#include "wind/stats.hpp"
#include "wind/winding_core.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

using namespace wind;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInvTwoPi = 0.15915494309189533577;

int g_failures = 0;

class Timer {
public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

void report(int id, const char* name, bool pass, const std::string& detail,
            double secs) {
    std::printf("C%02d %-24s %s (%s; %.1f s)\n", id, name,
                pass ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmtd(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

double cell(const RunResult& r, std::size_t row, std::size_t col) {
    return std::stod(r.rows[row][col]);
}

// --- C1: exact field vs sampled Riemann oracle, shoelace identity ---

void criterion_1() {
    Timer t;
    RngStream rng(101);
    std::int64_t bad_sampled = 0, bad_shoelace = 0;
    double max_gap_over_slack = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto n = static_cast<std::int64_t>(4 + rng.uniform_below(47));
        const ClosedLoop loop = close_loop(
            gen_walk(LatticeKind::Square, n, 90000 + static_cast<std::uint64_t>(i)));
        const IndexField field = index_field(loop);
        const TotalWinding exact = total_winding(field);

        const SampledWinding s = total_winding_sampled(loop, 1.0 / 64.0);
        const double slack =
            s.excluded_area * (static_cast<double>(s.max_abs_index) + 1.0);
        const double gap = std::abs(exact.value - s.value);
        if (gap > slack + 1e-9) ++bad_sampled;
        if (slack > 0.0) max_gap_over_slack = std::max(max_gap_over_slack, gap / slack);

        Rat signed_sum = 0;
        const IndexHistogram hist = index_histogram(field);
        for (const auto& [k, area] : hist.area_basis) signed_sum += Rat(k) * area;
        if (signed_sum != field.signed_area) ++bad_shoelace;
    }
    const double secs = t.seconds();
    const bool pass = bad_sampled == 0 && bad_shoelace == 0 && secs < 60.0;
    report(1, "exactness_oracle", pass,
           "1000 loops, sampled-oracle misses=" + std::to_string(bad_sampled) +
               ", shoelace misses=" + std::to_string(bad_shoelace) +
               ", max gap/slack=" + fmtd(max_gap_over_slack),
           secs);
}

// --- C2: excursion weight sum tracks the winding angle, residual <= 2 ---

void criterion_2() {
    Timer t;
    RngStream rng(202);
    std::int64_t violations = 0;
    double max_residual = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const WalkPath p = gen_walk(LatticeKind::Square, 1000,
                                    120000 + static_cast<std::uint64_t>(i));
        for (;;) {
            const Vec2 z{12.0 * rng.uniform01() - 6.0,
                         12.0 * rng.uniform01() - 6.0};
            try {
                const ExcursionSet set = decompose(p, build_frame(z, p.lattice));
                max_residual = std::max(max_residual, set.residual);
                if (set.residual > 2.0 + 1e-9) ++violations;
                break;
            } catch (const DegeneratePointError&) {
                continue;  // z fell on the frame; redraw
            }
        }
    }
    const double secs = t.seconds();
    const bool pass = violations == 0 && secs < 120.0;
    report(2, "excursion_identity", pass,
           "10000 pairs, violations=" + std::to_string(violations) +
               ", max residual=" + fmtd(max_residual),
           secs);
}

// --- C3: excursion weights are symmetric across >= 1e6 pooled draws ---

void criterion_3() {
    Timer t;
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::ExcursionCensus;
    cfg.lattice = LatticeKind::Square;
    cfg.n_values = {1024};
    cfg.samples = 600000;
    cfg.z_points = {{0.26, 0.37}};
    cfg.c0 = 1.0;
    cfg.seed = 31;
    const RunResult r = run(cfg);
    const double mean_w = cell(r, 0, 5);
    const double se = cell(r, 0, 6);
    const double pooled = cell(r, 0, 7);
    const bool pass = pooled >= 1e6 && std::abs(mean_w) < 4.0 * se;
    report(3, "weight_symmetry", pass,
           "pooled=" + fmtd(pooled) + ", mean weight=" + fmtd(mean_w) +
               ", 4*se=" + fmtd(4.0 * se),
           t.seconds());
}

// --- C4: small-excursion count grows like a power of ln n ---

void criterion_4() {
    Timer t;
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::ExcursionCensus;
    cfg.lattice = LatticeKind::Square;
    cfg.n_values = {1024, 2048, 4096, 8192, 16384, 32768, 65536, 131072, 262144};
    cfg.samples = 6000;
    cfg.z_points = {{0.26, 0.37}};
    cfg.c0 = 3.0;
    cfg.seed = 21;
    const RunResult r = run(cfg);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        x.push_back(std::log(std::log(cell(r, i, 0))));
        y.push_back(std::log(cell(r, i, 2)));
    }
    const LinearFit fit = ols_fit(x, y);
    const bool pass = fit.b >= 1.5 && fit.b <= 2.5;
    report(4, "small_excursion_census", pass,
           "fitted exponent=" + fmtd(fit.b) + " target [1.5, 2.5]", t.seconds());
}

// --- C5: scaled winding angle follows the hyperbolic secant law ---

void criterion_5() {
    Timer t;
    const BelisleResult b = belisle_test(1000000, {0.26, 0.37}, 10000, 5);
    const bool pass = b.ks < 0.12;
    report(5, "belisle_law", pass,
           "KS=" + fmtd(b.ks) + " target < 0.12, samples=" +
               std::to_string(b.samples),
           t.seconds());
}

// --- C6: k^2 * winding-area estimates approach 1/(2 pi) ---

void criterion_6() {
    Timer t;
    const std::vector<int> ks{5, 6, 7, 8, 9, 10};
    const auto est = werner_area_estimate(ks, 1000, 100000, 6, 3600, 80);
    bool pass = true;
    std::string detail = "2*pi*k^2*area:";
    for (const WernerEstimate& e : est) {
        const double ratio = e.mean / kInvTwoPi;
        detail += " k=" + std::to_string(e.k) + ":" + fmtd(ratio);
        if (std::abs(ratio - 1.0) > 0.35) pass = false;
    }
    report(6, "werner_law", pass, detail + " target within 35% of 1",
           t.seconds());
}

// --- C7: Wiener sausage hit rate matches the Spitzer constant ---

void criterion_7() {
    Timer t;
    const double eps = 1e-3;
    const Vec2 z{1.0, 0.0};
    std::int64_t hits = 0;
    const std::int64_t paths = 100000;
    for (std::int64_t i = 0; i < paths; ++i) {
        const BMPath p = gen_bm(5000, RngStream::mix64(0xC7u ^ static_cast<std::uint64_t>(i)));
        if (sausage_contains(p, eps, z, 12)) ++hits;
    }
    const double p_hat = static_cast<double>(hits) / static_cast<double>(paths);
    const double stat = std::abs(std::log(eps)) * p_hat;
    const double target = expint_e1(0.5) / 2.0;  // 0.27988679...
    const bool pass = std::abs(stat / target - 1.0) <= 0.30;
    report(7, "spitzer_sausage", pass,
           "|ln eps| p_hat=" + fmtd(stat) + " target " + fmtd(target) +
               " +-30%",
           t.seconds());
}

// --- C8: total winding per step grows like ln ln n / (2 pi) ---

void criterion_8() {
    Timer t;
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::TotalWindingScaling;
    cfg.lattice = LatticeKind::Square;
    cfg.n_values = {1024, 4096, 16384, 65536, 262144, 1048576};
    cfg.samples = 1000;
    cfg.seed = 4242;
    const RunResult r = run(cfg);
    std::vector<double> x, y;
    bool increasing = true;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const double n = cell(r, i, 0);
        const double per_step = cell(r, i, 2) / n;
        if (!y.empty() && per_step <= y.back()) increasing = false;
        x.push_back(std::log(std::log(n)));
        y.push_back(per_step);
    }
    const LinearFit fit = ols_fit(x, y);
    const double slope_lo = 0.5 * kInvTwoPi, slope_hi = 2.5 * kInvTwoPi;
    const double n_top = 1048576.0;
    const double ref = kInvTwoPi * std::log(std::log(n_top));
    const double top_ratio = y.back() / ref;
    const bool pass = increasing && fit.b >= slope_lo && fit.b <= slope_hi &&
                      top_ratio >= 1.0 / 3.0 && top_ratio <= 3.0;
    report(8, "headline_scaling", pass,
           std::string("monotone=") + (increasing ? "yes" : "no") +
               ", slope=" + fmtd(fit.b) + " in [" + fmtd(slope_lo) + ", " +
               fmtd(slope_hi) + "], top ratio=" + fmtd(top_ratio) +
               " in [1/3, 3]",
           t.seconds());
}

// --- C9: pointwise index magnitude matches the heat-kernel integral ---

void criterion_9() {
    Timer t;
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::PointwiseIndex;
    cfg.lattice = LatticeKind::Square;
    cfg.n_values = {1048576};
    cfg.samples = 2000;
    cfg.z_points = {{0.6, 0.8}, {1.2, 1.6}};
    cfg.seed = 12;
    const RunResult r = run(cfg);
    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const double target = cell(r, i, 4);
        const double ratio = cell(r, i, 5) / target;
        if (!(ratio >= 1.0 / 3.0 && ratio <= 3.0)) pass = false;
        detail += "|z|=" + fmtd(std::hypot(cell(r, i, 1), cell(r, i, 2))) +
                  " ratio=" + fmtd(ratio) + " ";
    }
    report(9, "pointwise_law", pass, detail + "target [1/3, 3]", t.seconds());
}

// --- C10: averaged Dehn bound at n = 4 vs independent enumeration ---

void criterion_10() {
    Timer t;
    // Independent oracle: walk over all 4^4 letter codes, keep the
    // closed words, average the per-word bound.
    static constexpr int kLetters[4] = {1, 2, -1, -2};  // +x, +y, -x, -y
    double sum = 0.0;
    std::int64_t closed = 0;
    for (int code = 0; code < 256; ++code) {
        Word w;
        w.d = 2;
        int c = code;
        for (int k = 0; k < 4; ++k) {
            w.letters.push_back(kLetters[c & 3]);
            c >>= 2;
        }
        const auto e = w.endpoint();
        if (e[0] != 0 || e[1] != 0) continue;
        ++closed;
        sum += rnd_dehn_lower(w).bound;
    }
    const double oracle = sum / static_cast<double>(closed);

    const DehnAverage a = avg_dehn_lower(4, 0, 0);
    const bool pass = a.samples == closed && std::abs(a.mean - oracle) <= 1e-12;
    report(10, "dehn_small_case", pass,
           "mean=" + fmtd(a.mean) + " oracle=" + fmtd(oracle) + " over " +
               std::to_string(closed) + " closed words",
           t.seconds());
}

// --- C11: identical config => byte-identical CSV at any worker count ---

void criterion_11() {
    Timer t;
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::TotalWindingScaling;
    cfg.lattice = LatticeKind::Square;
    cfg.n_values = {1024, 4096};
    cfg.samples = 200;
    cfg.seed = 9;
    cfg.workers = 1;
    const std::string csv1 = to_csv(run(cfg));
    cfg.workers = 2;
    const std::string csv2 = to_csv(run(cfg));
    cfg.workers = 4;
    const std::string csv4 = to_csv(run(cfg));
    const bool pass = csv1 == csv2 && csv1 == csv4;
    report(11, "determinism", pass,
           std::string("workers 1/2/4 csv ") +
               (pass ? "byte-identical" : "DIFFER"),
           t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
    // Optional arguments select a subset of criteria by number; the
    // default (and the registered ctest invocation) runs all eleven.
    void (*const criteria[11])() = {
        criterion_1, criterion_2, criterion_3, criterion_4,
        criterion_5, criterion_6, criterion_7, criterion_8,
        criterion_9, criterion_10, criterion_11};
    bool selected[11];
    for (bool& s : selected) s = argc < 2;
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (id < 1 || id > 11) {
            std::fprintf(stderr, "unknown criterion %s\n", argv[i]);
            return 2;
        }
        selected[id - 1] = true;
    }
    Timer total;
    int run_count = 0;
    for (int i = 0; i < 11; ++i) {
        if (!selected[i]) continue;
        criteria[i]();
        ++run_count;
    }
    std::printf("%d/%d criteria passed (%.1f s total)\n",
                run_count - g_failures, run_count, total.seconds());
    return g_failures == 0 ? 0 : 1;
}
