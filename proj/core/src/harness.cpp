#include "wind/harness.hpp"

#include "wind/brownian.hpp"
#include "wind/dehn.hpp"
#include "wind/excursions.hpp"
#include "wind/expint.hpp"
#include "wind/rng.hpp"
#include "wind/svg.hpp"
#include "wind/winding_core.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

namespace wind {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

const char* kExperimentNames[] = {
    "total_winding_scaling", "pointwise_index", "belisle", "werner",
    "spitzer", "excursion_census", "dehn_rnd", "dehn_avg",
};

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_i(std::int64_t v) { return std::to_string(v); }

std::uint64_t derive_seed(std::uint64_t master, std::size_t cell,
                          std::int64_t sample) {
    return RngStream::mix64(
        RngStream::mix64(master + RngStream::kGamma * (cell + 1)) ^
        RngStream::mix64(0x5A17ULL + static_cast<std::uint64_t>(sample)));
}

// Runs fn over (cell, sample) tasks; the result buffer is indexed by
// (cell * samples + sample) * ncomp + comp, so aggregation order never
// depends on scheduling.
void run_tasks(std::size_t cells, std::int64_t samples, int ncomp, int workers,
               const std::function<void(std::size_t, std::int64_t, double*)>& fn,
               std::vector<double>& buf) {
    buf.assign(cells * static_cast<std::size_t>(samples) *
                   static_cast<std::size_t>(ncomp),
               0.0);
    const auto total = static_cast<std::int64_t>(cells) * samples;
    auto work = [&](std::int64_t t) {
        const auto cell = static_cast<std::size_t>(t / samples);
        const std::int64_t sample = t % samples;
        fn(cell, sample,
           &buf[(cell * static_cast<std::size_t>(samples) +
                 static_cast<std::size_t>(sample)) *
                static_cast<std::size_t>(ncomp)]);
    };
    if (workers <= 1) {
        for (std::int64_t t = 0; t < total; ++t) work(t);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::int64_t t = next.fetch_add(1);
                if (t >= total) return;
                work(t);
            }
        });
    for (auto& th : pool) th.join();
}

// Keeps z strictly off the lattice grid lines (basis coordinates), so
// ray-crossing index queries stay well defined.
Vec2 nudge_off_lattice(LatticeKind lat, Vec2 z) {
    for (int tries = 0; tries < 64; ++tries) {
        const Vec2 zb = [&] {
            if (lat == LatticeKind::Square) return z;
            constexpr double kHalfSqrt3 = 0.86602540378443864676;
            const double by = z.y / kHalfSqrt3;
            return Vec2{z.x - 0.5 * by, by};
        }();
        const double fx = zb.x - std::floor(zb.x);
        const double fy = zb.y - std::floor(zb.y);
        const double fd = (zb.x + zb.y) - std::floor(zb.x + zb.y);
        const double eps = 1e-7;
        const bool bad = fx < eps || fx > 1 - eps || fy < eps || fy > 1 - eps ||
                         (lat == LatticeKind::Triangular &&
                          (fd < eps || fd > 1 - eps));
        if (!bad) return z;
        z.x += 3.1e-5;
        z.y += 1.7e-5;
    }
    return z;
}

double lnln(std::int64_t n) { return std::log(std::log(static_cast<double>(n))); }

struct Agg {
    std::vector<std::vector<Welford>> acc;  // [cell][comp]
    void aggregate(std::size_t cells, std::int64_t samples, int ncomp,
                   const std::vector<double>& buf) {
        acc.assign(cells, std::vector<Welford>(static_cast<std::size_t>(ncomp)));
        for (std::size_t c = 0; c < cells; ++c)
            for (std::int64_t s = 0; s < samples; ++s)
                for (int k = 0; k < ncomp; ++k)
                    acc[c][static_cast<std::size_t>(k)].add(
                        buf[(c * static_cast<std::size_t>(samples) +
                             static_cast<std::size_t>(s)) *
                                static_cast<std::size_t>(ncomp) +
                            static_cast<std::size_t>(k)]);
    }
};

json config_to_json_obj(const ExperimentConfig& c) {
    json j;
    j["schema_version"] = c.schema_version;
    j["experiment"] = kExperimentNames[static_cast<int>(c.experiment)];
    j["lattice"] = c.lattice == LatticeKind::Square ? "square" : "triangular";
    j["n_values"] = c.n_values;
    j["samples"] = c.samples;
    auto zp = json::array();
    for (const Vec2& z : c.z_points) zp.push_back({z.x, z.y});
    j["z_points"] = zp;
    j["c0"] = c.c0;
    j["bm_resolution"] = c.bm_resolution;
    j["epsilon"] = c.epsilon;
    j["k_values"] = c.k_values;
    j["z_samples"] = c.z_samples;
    j["refine_depth"] = c.refine_depth;
    j["dehn_dimension"] = c.dehn_dimension;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    j["output_dir"] = c.output_dir;
    return j;
}

}  // namespace

const char* experiment_name(ExperimentKind k) {
    return kExperimentNames[static_cast<int>(k)];
}

const char* version_string() { return kVersion; }

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    static const char* kKnown[] = {
        "schema_version", "experiment", "lattice", "n_values", "samples",
        "z_points", "c0", "bm_resolution", "epsilon", "k_values", "z_samples",
        "refine_depth", "dehn_dimension", "seed", "workers", "output_dir",
    };
    for (const auto& [key, _] : j.items()) {
        if (std::find_if(std::begin(kKnown), std::end(kKnown),
                         [&](const char* k) { return key == k; }) ==
            std::end(kKnown))
            throw ConfigError("config: unknown key \"" + key + "\"");
    }

    ExperimentConfig c;
    try {
        c.schema_version = j.value("schema_version", 1);
        if (c.schema_version != 1)
            throw ConfigError("config: unsupported schema_version");
        if (!j.contains("experiment"))
            throw ConfigError("config: missing \"experiment\"");
        const std::string e = j.at("experiment");
        const auto* it = std::find(std::begin(kExperimentNames),
                                   std::end(kExperimentNames), e);
        bool found = false;
        for (int i = 0; i < 8; ++i)
            if (e == kExperimentNames[i]) {
                c.experiment = static_cast<ExperimentKind>(i);
                found = true;
            }
        (void)it;
        if (!found) throw ConfigError("config: unknown experiment \"" + e + "\"");
        const std::string lat = j.value("lattice", "square");
        if (lat == "square")
            c.lattice = LatticeKind::Square;
        else if (lat == "triangular")
            c.lattice = LatticeKind::Triangular;
        else
            throw ConfigError("config: lattice must be square or triangular");
        c.n_values = j.value("n_values", std::vector<std::int64_t>{});
        c.samples = j.value("samples", std::int64_t{1});
        if (j.contains("z_points")) {
            for (const auto& p : j.at("z_points")) {
                if (!p.is_array() || p.size() != 2)
                    throw ConfigError("config: z_points entries must be [re, im]");
                c.z_points.push_back({p[0].get<double>(), p[1].get<double>()});
            }
        }
        c.c0 = j.value("c0", 1.0);
        c.bm_resolution = j.value("bm_resolution", std::int64_t{100000});
        c.epsilon = j.value("epsilon", std::vector<double>{});
        c.k_values = j.value("k_values", std::vector<int>{});
        c.z_samples = j.value("z_samples", std::int64_t{32400});
        c.refine_depth = j.value("refine_depth", 12);
        c.dehn_dimension = j.value("dehn_dimension", 2);
        c.seed = j.value("seed", std::uint64_t{0});
        c.workers = j.value("workers", 1);
        c.output_dir = j.value("output_dir", ".");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad field type: ") + e.what());
    }

    if (c.samples < 1) throw ConfigError("config: samples must be >= 1");
    if (!std::is_sorted(c.n_values.begin(), c.n_values.end()) ||
        std::adjacent_find(c.n_values.begin(), c.n_values.end()) !=
            c.n_values.end())
        throw ConfigError("config: n_values must be strictly ascending");
    for (std::int64_t n : c.n_values)
        if (n < 1) throw ConfigError("config: n_values must be positive");
    for (double e : c.epsilon)
        if (!(e > 0.0)) throw ConfigError("config: epsilon must be positive");
    if (c.workers < 1) throw ConfigError("config: workers must be >= 1");

    // Experiments whose z lives on the lattice need z in D.
    if (c.experiment == ExperimentKind::Belisle ||
        c.experiment == ExperimentKind::ExcursionCensus) {
        if (c.z_points.empty())
            throw ConfigError("config: this experiment needs z_points");
        for (const Vec2& z : c.z_points) {
            try {
                (void)build_frame(z, c.lattice);
            } catch (const DegeneratePointError&) {
                throw ConfigError("config: z_point (" + fmt(z.x) + ", " +
                                  fmt(z.y) + ") is not in D");
            }
        }
    }
    if (c.experiment != ExperimentKind::Werner &&
        c.experiment != ExperimentKind::Spitzer &&
        c.experiment != ExperimentKind::DehnAvg && c.n_values.empty())
        throw ConfigError("config: n_values must not be empty");
    if (c.experiment == ExperimentKind::DehnAvg) {
        if (c.n_values.empty())
            throw ConfigError("config: n_values must not be empty");
        for (std::int64_t n : c.n_values)
            if (n % 2 != 0)
                throw ConfigError("config: dehn_avg needs even n_values");
    }
    if (c.experiment == ExperimentKind::Spitzer &&
        (c.epsilon.empty() || c.z_points.empty()))
        throw ConfigError("config: spitzer needs epsilon and z_points");
    if (c.experiment == ExperimentKind::PointwiseIndex && c.z_points.empty())
        throw ConfigError("config: pointwise_index needs z_points");
    if (c.experiment == ExperimentKind::Werner && c.k_values.empty())
        c.k_values = {5, 6, 7, 8, 9, 10};
    if (c.dehn_dimension < 2)
        throw ConfigError("config: dehn_dimension must be >= 2");
    return c;
}

std::string ExperimentConfig::to_json() const {
    return config_to_json_obj(*this).dump(2);
}

std::string ExperimentConfig::content_hash() const {
    json j = config_to_json_obj(*this);
    j.erase("workers");
    j.erase("output_dir");
    return hex64(fnv1a64(j.dump()));
}

std::int64_t open_walk_index(WalkPath path, Vec2 z) {
    ClosedLoop loop;
    loop.chord_from = path.vertices.back();
    loop.chord_to = path.vertices.front();
    loop.path = std::move(path);
    const PointIndex pi = point_index(loop, z);
    if (!pi.on_chord) return pi.twice / 2;
    // On the chord the closed-loop convention is theta/2pi - 1/2; the
    // open-walk closest integer is round(theta/2pi).
    return std::llround(pi.value() + 0.5);
}

double open_walk_angle(WalkPath path, Vec2 z) {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    const Vec2 endp = embed(path.lattice, path.vertices.back());
    const Vec2 startp = embed(path.lattice, path.vertices.front());
    ClosedLoop loop;
    loop.chord_from = path.vertices.back();
    loop.chord_to = path.vertices.front();
    loop.path = std::move(path);
    const PointIndex pi = point_index(loop, z);
    if (pi.on_chord) return kTwoPi * (pi.value() + 0.5);
    // Closed-loop angle minus the chord's subtended contribution.
    const double ax = endp.x - z.x, ay = endp.y - z.y;
    const double bx = startp.x - z.x, by = startp.y - z.y;
    const double alpha = std::atan2(ax * by - ay * bx, ax * bx + ay * by);
    return kTwoPi * static_cast<double>(pi.twice / 2) - alpha;
}

LinearFit scaling_fit(std::span<const double> n_values,
                      std::span<const double> mean_over_n) {
    std::vector<double> x(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i)
        x[i] = std::log(std::log(n_values[i]));
    return ols_fit(x, mean_over_n);
}

namespace {

// --- per-experiment drivers ---------------------------------------

void run_scaling(const ExperimentConfig& c, RunResult& r) {
    const std::size_t cells = c.n_values.size();
    std::vector<double> buf;
    run_tasks(cells, c.samples, 1, c.workers,
              [&](std::size_t cell, std::int64_t s, double* out) {
                  WalkPath p = gen_walk(c.lattice, c.n_values[cell],
                                        derive_seed(c.seed, cell, s));
                  out[0] =
                      total_winding(index_field(close_loop(std::move(p)))).value;
              },
              buf);
    Agg a;
    a.aggregate(cells, c.samples, 1, buf);
    r.header = {"n", "samples", "mean_total_winding", "var", "ci_lo", "ci_hi"};
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const Welford& w = a.acc[cell][0];
        r.rows.push_back({fmt_i(c.n_values[cell]), fmt_i(w.count), fmt(w.mean),
                          fmt(w.variance()), fmt(w.mean - w.ci_halfwidth()),
                          fmt(w.mean + w.ci_halfwidth())});
        r.raw.emplace_back();
    }
}

void run_pointwise(const ExperimentConfig& c, RunResult& r) {
    const std::size_t nz = c.z_points.size();
    const std::size_t cells = c.n_values.size() * nz;
    std::vector<double> buf;
    run_tasks(cells, c.samples, 1, c.workers,
              [&](std::size_t cell, std::int64_t s, double* out) {
                  const std::int64_t n = c.n_values[cell / nz];
                  const Vec2 z = c.z_points[cell % nz];
                  const double scale =
                      std::sqrt(static_cast<double>(n) * step_variance(c.lattice));
                  const Vec2 zl = nudge_off_lattice(
                      c.lattice, {z.x * scale, z.y * scale});
                  WalkPath p =
                      gen_walk(c.lattice, n, derive_seed(c.seed, cell, s));
                  out[0] = std::abs(
                      static_cast<double>(open_walk_index(std::move(p), zl)));
              },
              buf);
    Agg a;
    a.aggregate(cells, c.samples, 1, buf);
    r.header = {"n", "z_re", "z_im", "mean_abs_index", "target_p_integral",
                "ratio_to_lnlnn"};
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const std::int64_t n = c.n_values[cell / nz];
        const Vec2 z = c.z_points[cell % nz];
        const Welford& w = a.acc[cell][0];
        r.rows.push_back({fmt_i(n), fmt(z.x), fmt(z.y), fmt(w.mean),
                          fmt(p_integral_target(z)), fmt(w.mean / lnln(n))});
        r.raw.emplace_back();
    }
}

void run_belisle(const ExperimentConfig& c, RunResult& r) {
    const std::size_t nz = c.z_points.size();
    const std::size_t cells = c.n_values.size() * nz;
    std::vector<double> buf;
    run_tasks(cells, c.samples, 1, c.workers,
              [&](std::size_t cell, std::int64_t s, double* out) {
                  const std::int64_t n = c.n_values[cell / nz];
                  const Vec2 z = c.z_points[cell % nz];
                  WalkPath p =
                      gen_walk(c.lattice, n, derive_seed(c.seed, cell, s));
                  // Spitzer-normalized winding angle, 2 theta / ln n.
                  out[0] = 2.0 * open_walk_angle(std::move(p), z) /
                           std::log(static_cast<double>(n));
              },
              buf);
    r.header = {"n", "z_re", "z_im", "samples", "ks_statistic"};
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const std::int64_t n = c.n_values[cell / nz];
        const Vec2 z = c.z_points[cell % nz];
        std::vector<double> vals(
            buf.begin() + static_cast<std::ptrdiff_t>(
                              cell * static_cast<std::size_t>(c.samples)),
            buf.begin() + static_cast<std::ptrdiff_t>(
                              (cell + 1) * static_cast<std::size_t>(c.samples)));
        const double ks = ks_statistic(vals, sech_cdf);
        r.rows.push_back(
            {fmt_i(n), fmt(z.x), fmt(z.y), fmt_i(c.samples), fmt(ks)});
        r.raw.push_back(std::move(vals));
    }
}

void run_werner(const ExperimentConfig& c, RunResult& r) {
    const auto nk = static_cast<int>(c.k_values.size());
    std::vector<double> buf;
    run_tasks(1, c.samples, nk, c.workers,
              [&](std::size_t, std::int64_t s, double* out) {
                  BMPath p = gen_bm(c.bm_resolution, derive_seed(c.seed, 0, s));
                  const BMPath one[] = {std::move(p)};
                  auto est = werner_area_from_paths(
                      std::span<const BMPath>(one, 1), c.k_values, c.z_samples,
                      derive_seed(c.seed ^ 0xA11CE5ULL, 0, s), c.refine_depth);
                  for (int i = 0; i < nk; ++i) out[i] = est[static_cast<std::size_t>(i)].mean;
              },
              buf);
    Agg a;
    a.aggregate(1, c.samples, nk, buf);
    r.header = {"k", "paths", "m", "mean", "ci_lo", "ci_hi"};
    for (int i = 0; i < nk; ++i) {
        const Welford& w = a.acc[0][static_cast<std::size_t>(i)];
        r.rows.push_back({fmt_i(c.k_values[static_cast<std::size_t>(i)]),
                          fmt_i(w.count), fmt_i(c.bm_resolution), fmt(w.mean),
                          fmt(w.mean - w.ci_halfwidth()),
                          fmt(w.mean + w.ci_halfwidth())});
        r.raw.emplace_back();
    }
}

void run_spitzer(const ExperimentConfig& c, RunResult& r) {
    const std::size_t nz = c.z_points.size();
    const std::size_t cells = c.epsilon.size() * nz;
    std::vector<double> buf;
    run_tasks(cells, c.samples, 1, c.workers,
              [&](std::size_t cell, std::int64_t s, double* out) {
                  const double eps = c.epsilon[cell / nz];
                  const Vec2 z = c.z_points[cell % nz];
                  BMPath p =
                      gen_bm(c.bm_resolution, derive_seed(c.seed, cell, s));
                  out[0] = sausage_contains(p, eps, z, c.refine_depth) ? 1.0 : 0.0;
              },
              buf);
    Agg a;
    a.aggregate(cells, c.samples, 1, buf);
    r.header = {"epsilon", "z_re", "z_im", "paths", "p_hat", "log_scaled",
                "target", "ci_lo", "ci_hi"};
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const double eps = c.epsilon[cell / nz];
        const Vec2 z = c.z_points[cell % nz];
        const Welford& w = a.acc[cell][0];
        const double l = std::abs(std::log(eps));
        const double target =
            expint_e1(0.5 * (z.x * z.x + z.y * z.y)) / 2.0;
        r.rows.push_back({fmt(eps), fmt(z.x), fmt(z.y), fmt_i(w.count),
                          fmt(w.mean), fmt(l * w.mean), fmt(target),
                          fmt(l * (w.mean - w.ci_halfwidth())),
                          fmt(l * (w.mean + w.ci_halfwidth()))});
        r.raw.emplace_back();
    }
}

void run_census(const ExperimentConfig& c, RunResult& r) {
    const std::size_t cells = c.n_values.size();
    const Vec2 z = c.z_points.front();
    const DiagonalFrame frame = build_frame(z, c.lattice);
    std::vector<double> buf;
    run_tasks(cells, c.samples, 5, c.workers,
              [&](std::size_t cell, std::int64_t s, double* out) {
                  const std::int64_t n = c.n_values[cell];
                  WalkPath p =
                      gen_walk(c.lattice, n, derive_seed(c.seed, cell, s));
                  ExcursionSet set = decompose(p, frame, false);
                  set = classify(std::move(set),
                                 make_scale_params(n, c.lattice, c.c0), p);
                  std::int64_t np = 0, nm = 0;
                  for (const Excursion& e : set.excursions) {
                      if (e.weight > 0) ++np;
                      else if (e.weight < 0) ++nm;
                  }
                  out[0] = static_cast<double>(set.n_small);
                  out[1] = static_cast<double>(set.n_medium);
                  out[2] = static_cast<double>(set.n_large);
                  out[3] = static_cast<double>(np);
                  out[4] = static_cast<double>(nm);
              },
              buf);
    Agg a;
    a.aggregate(cells, c.samples, 5, buf);
    r.header = {"n",           "samples",     "mean_small", "mean_medium",
                "mean_large",  "mean_weight", "weight_se",  "pooled_excursions"};
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const auto& acc = a.acc[cell];
        const double sp = acc[3].mean * static_cast<double>(acc[3].count);
        const double sm = acc[4].mean * static_cast<double>(acc[4].count);
        const double tot = sp + sm;
        const double mean_w = tot > 0 ? 0.5 * (sp - sm) / tot : 0.0;
        const double se = tot > 0 ? 0.5 / std::sqrt(tot) : 0.0;
        r.rows.push_back({fmt_i(c.n_values[cell]), fmt_i(acc[0].count),
                          fmt(acc[0].mean), fmt(acc[1].mean), fmt(acc[2].mean),
                          fmt(mean_w), fmt(se), fmt(tot)});
        r.raw.emplace_back();
    }
}

void run_dehn_rnd(const ExperimentConfig& c, RunResult& r) {
    const std::size_t cells = c.n_values.size();
    std::vector<double> buf;
    run_tasks(cells, c.samples, 1, c.workers,
              [&](std::size_t cell, std::int64_t s, double* out) {
                  const Word w = random_word(c.dehn_dimension, c.n_values[cell],
                                             derive_seed(c.seed, cell, s));
                  out[0] = rnd_dehn_lower(w).bound;
              },
              buf);
    Agg a;
    a.aggregate(cells, c.samples, 1, buf);
    r.header = {"n", "d", "samples", "mean_bound", "ci_low", "ci_high", "seed"};
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const Welford& w = a.acc[cell][0];
        r.rows.push_back({fmt_i(c.n_values[cell]), fmt_i(c.dehn_dimension),
                          fmt_i(w.count), fmt(w.mean),
                          fmt(w.mean - w.ci_halfwidth()),
                          fmt(w.mean + w.ci_halfwidth()),
                          fmt_i(static_cast<std::int64_t>(c.seed))});
        r.raw.emplace_back();
    }
}

void run_dehn_avg(const ExperimentConfig& c, RunResult& r) {
    r.header = {"n", "d", "samples", "mean_bound", "ci_low", "ci_high", "seed"};
    for (std::size_t cell = 0; cell < c.n_values.size(); ++cell) {
        const DehnAverage a = avg_dehn_lower(
            c.n_values[cell], c.samples,
            RngStream::mix64(c.seed + RngStream::kGamma * (cell + 1)));
        r.rows.push_back({fmt_i(a.n), "2", fmt_i(a.samples), fmt(a.mean),
                          fmt(a.ci_lo), fmt(a.ci_hi),
                          fmt_i(static_cast<std::int64_t>(c.seed))});
        r.raw.emplace_back();
    }
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult r;
    r.config_hash = config.content_hash();
    r.version = kVersion;
    switch (config.experiment) {
        case ExperimentKind::TotalWindingScaling: run_scaling(config, r); break;
        case ExperimentKind::PointwiseIndex: run_pointwise(config, r); break;
        case ExperimentKind::Belisle: run_belisle(config, r); break;
        case ExperimentKind::Werner: run_werner(config, r); break;
        case ExperimentKind::Spitzer: run_spitzer(config, r); break;
        case ExperimentKind::ExcursionCensus: run_census(config, r); break;
        case ExperimentKind::DehnRnd: run_dehn_rnd(config, r); break;
        case ExperimentKind::DehnAvg: run_dehn_avg(config, r); break;
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    return r;
}

std::string to_csv(const RunResult& result) {
    std::string out = "# config_hash=" + result.config_hash +
                      " version=" + result.version + "\n";
    for (std::size_t i = 0; i < result.header.size(); ++i) {
        if (i) out += ',';
        out += result.header[i];
    }
    out += '\n';
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const RunResult& result, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp);
        f << to_csv(result);
        if (!f) throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename to " + path + " failed: " + ec.message());
}

std::string emit_outputs(const ExperimentConfig& config,
                         const RunResult& result) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec)
        throw IoError("cannot create " + config.output_dir + ": " + ec.message());
    const std::string base =
        config.output_dir + "/" + experiment_name(config.experiment);
    const std::string csv_path = base + ".csv";
    emit_csv(result, csv_path);

    std::vector<std::string> outputs{csv_path};
    if (config.experiment == ExperimentKind::TotalWindingScaling &&
        result.rows.size() >= 2) {
        PlotSeries emp{"mean/n", {}, false, "#1f77b4"};
        PlotSeries ref{"lnln(n)/2pi", {}, false, "#d62728"};
        for (const auto& row : result.rows) {
            const double n = std::stod(row[0]);
            const double mean = std::stod(row[2]);
            const double x = std::log(std::log(n));
            emp.points.push_back({x, mean / n});
            ref.points.push_back({x, x / (2.0 * 3.14159265358979323846)});
        }
        const std::string svg_path = base + ".svg";
        write_svg({emp, ref}, svg_path, "total winding scaling", "ln ln n",
                  "E[total winding]/n");
        outputs.push_back(svg_path);
    }

    json manifest;
    manifest["config"] = json::parse(config.to_json());
    manifest["config_hash"] = result.config_hash;
    manifest["version"] = result.version;
    manifest["wall_ms"] = result.wall_ms;
    manifest["outputs"] = outputs;
    const std::string mpath = config.output_dir + "/manifest.json";
    const std::string tmp = mpath + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp);
        f << manifest.dump(2) << "\n";
        if (!f) throw IoError("write failed for " + tmp);
    }
    fs::rename(tmp, mpath, ec);
    if (ec) throw IoError("rename to " + mpath + " failed: " + ec.message());
    return csv_path;
}

BelisleResult belisle_test(std::int64_t n, Vec2 z, std::int64_t samples,
                           std::uint64_t seed, int workers) {
    ExperimentConfig c;
    c.experiment = ExperimentKind::Belisle;
    c.n_values = {n};
    c.z_points = {z};
    c.samples = samples;
    c.seed = seed;
    c.workers = workers;
    RunResult r;
    r.config_hash = c.content_hash();
    r.version = kVersion;
    run_belisle(c, r);
    BelisleResult b;
    b.samples = samples;
    b.ks = std::stod(r.rows[0][4]);
    std::vector<double> vals = r.raw[0];
    std::sort(vals.begin(), vals.end());
    for (int q = 1; q <= 9; ++q)
        b.quantiles.push_back(
            vals[static_cast<std::size_t>(
                (static_cast<double>(q) / 10.0) *
                static_cast<double>(vals.size() - 1))]);
    return b;
}

}  // namespace wind
