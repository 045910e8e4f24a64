// loopwind: winding-number fields of closed lattice walks, excursion
// decompositions, Brownian comparison estimators, and the experiment
// harness.  Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include "wind/brownian.hpp"
#include "wind/dehn.hpp"
#include "wind/excursions.hpp"
#include "wind/expint.hpp"
#include "wind/harness.hpp"
#include "wind/lattice_walk.hpp"
#include "wind/winding_core.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace wind;

LatticeKind parse_lattice(const std::string& s) {
    if (s == "square") return LatticeKind::Square;
    if (s == "triangular") return LatticeKind::Triangular;
    throw ConfigError("lattice must be square or triangular");
}

void write_out(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + out);
    f << text << "\n";
    if (!f) throw IoError("write failed for " + out);
}

std::string walk_to_json(const WalkPath& p) {
    nlohmann::json j;
    j["lattice"] = p.lattice == LatticeKind::Square ? "square" : "triangular";
    j["n"] = p.n;
    j["seed"] = p.seed;
    auto& v = j["vertices"] = nlohmann::json::array();
    for (const IVec2& q : p.vertices) v.push_back({q.x, q.y});
    return j.dump();
}

int run_cli(int argc, char** argv) {
    CLI::App app{"winding numbers of closed lattice random walks"};
    app.require_subcommand(1);

    std::string lattice = "square";
    std::int64_t n = 1000;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string out;

    auto add_common = [&](CLI::App* sub, bool with_n = true) {
        sub->add_option("--lattice", lattice)
            ->check(CLI::IsMember({"square", "triangular"}));
        if (with_n) sub->add_option("--n", n, "walk length");
        sub->add_option("--seed", seed);
        sub->add_option("--out", out, "output file (- for stdout)");
    };

    auto* sim = app.add_subcommand("simulate", "generate a walk (JSON)");
    add_common(sim);

    auto* fld = app.add_subcommand("index-field",
                                   "exact winding-number field (JSON)");
    add_common(fld);

    auto* tw = app.add_subcommand("total-winding",
                                  "total winding number of one loop");
    add_common(tw);

    auto* exc = app.add_subcommand("excursions",
                                   "excursion decomposition around z (JSON)");
    add_common(exc);
    double zx = 0.25, zy = 0.375, c0 = 1.0;
    exc->add_option("--zx", zx);
    exc->add_option("--zy", zy);
    exc->add_option("--c0", c0);

    auto* expm = app.add_subcommand("experiment", "run a config-driven experiment");
    std::string config_path;
    expm->add_option("config", config_path, "JSON config file")->required();
    std::optional<std::uint64_t> seed_override;
    std::optional<int> workers_override;
    std::optional<std::string> outdir_override;
    expm->add_option("--seed", seed_override, "override config seed");
    expm->add_option("--workers", workers_override, "override worker count");
    expm->add_option("--out", outdir_override, "override output directory");

    auto* bel = app.add_subcommand("belisle", "index law vs hyperbolic secant");
    std::int64_t samples = 1000;
    bel->add_option("--n", n);
    bel->add_option("--samples", samples);
    bel->add_option("--seed", seed);
    bel->add_option("--workers", workers);
    bel->add_option("--zx", zx);
    bel->add_option("--zy", zy);
    bel->add_option("--out", out);

    auto* wer = app.add_subcommand("werner", "k^2-area estimates");
    std::int64_t paths = 100, m = 100000, z_samples = 32400;
    int kmin = 5, kmax = 10;
    wer->add_option("--paths", paths);
    wer->add_option("--m", m);
    wer->add_option("--k-min", kmin);
    wer->add_option("--k-max", kmax);
    wer->add_option("--z-samples", z_samples);
    int wer_refine = 80;
    wer->add_option("--refine-depth", wer_refine);
    wer->add_option("--seed", seed);
    wer->add_option("--workers", workers);
    wer->add_option("--out", out);

    auto* spz = app.add_subcommand("spitzer", "Wiener sausage hit rate");
    double eps = 1e-3;
    int refine = 12;
    spz->add_option("--paths", paths);
    spz->add_option("--m", m)->default_val(std::int64_t{5000});
    spz->add_option("--eps", eps);
    spz->add_option("--zx", zx)->default_val(1.0);
    spz->add_option("--zy", zy)->default_val(0.0);
    spz->add_option("--refine-depth", refine);
    spz->add_option("--seed", seed);
    spz->add_option("--workers", workers);
    spz->add_option("--out", out);

    auto* deh = app.add_subcommand("dehn", "Dehn-function lower bounds");
    std::string mode = "rnd";
    int dim = 2;
    deh->add_option("--mode", mode)->check(CLI::IsMember({"rnd", "avg"}));
    deh->add_option("--n", n);
    deh->add_option("--d", dim);
    deh->add_option("--samples", samples);
    deh->add_option("--seed", seed);
    deh->add_option("--workers", workers);
    deh->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad flags are configuration errors
    }
    const LatticeKind lat = parse_lattice(lattice);

    if (sim->parsed()) {
        write_out(walk_to_json(gen_walk(lat, n, seed)), out);
    } else if (fld->parsed()) {
        const auto field = index_field(close_loop(gen_walk(lat, n, seed)));
        write_out(index_field_to_json(field), out);
    } else if (tw->parsed()) {
        const auto field = index_field(close_loop(gen_walk(lat, n, seed)));
        const TotalWinding t = total_winding(field);
        std::ostringstream s;
        s << "n=" << n << " seed=" << seed << " total_winding=" << t.value
          << " exact_basis=" << t.exact_basis;
        write_out(s.str(), out);
    } else if (exc->parsed()) {
        const WalkPath p = gen_walk(lat, n, seed);
        const DiagonalFrame frame = build_frame({zx, zy}, lat);
        ExcursionSet set = decompose(p, frame);
        set = classify(std::move(set), make_scale_params(n, lat, c0), p);
        write_out(excursion_set_to_json(set), out);
    } else if (expm->parsed()) {
        std::ifstream f(config_path);
        if (!f) throw IoError("cannot read " + config_path);
        std::stringstream ss;
        ss << f.rdbuf();
        ExperimentConfig cfg = ExperimentConfig::from_json(ss.str());
        if (seed_override) cfg.seed = *seed_override;
        if (workers_override) cfg.workers = *workers_override;
        if (outdir_override) cfg.output_dir = *outdir_override;
        const RunResult res = run(cfg);
        const std::string csv = emit_outputs(cfg, res);
        std::cout << "wrote " << csv << " (config " << res.config_hash << ", "
                  << res.wall_ms << " ms)\n";
    } else if (bel->parsed()) {
        const BelisleResult b = belisle_test(n, {zx, zy}, samples, seed, workers);
        std::ostringstream s;
        s << "n=" << n << " samples=" << b.samples << " ks=" << b.ks
          << " deciles=";
        for (double q : b.quantiles) s << q << " ";
        write_out(s.str(), out);
    } else if (wer->parsed()) {
        ExperimentConfig cfg;
        cfg.experiment = ExperimentKind::Werner;
        cfg.samples = paths;
        cfg.bm_resolution = m;
        cfg.z_samples = z_samples;
        cfg.refine_depth = wer_refine;
        for (int k = kmin; k <= kmax; ++k) cfg.k_values.push_back(k);
        cfg.seed = seed;
        cfg.workers = workers;
        const RunResult res = run(cfg);
        write_out(to_csv(res), out);
    } else if (spz->parsed()) {
        ExperimentConfig cfg;
        cfg.experiment = ExperimentKind::Spitzer;
        cfg.samples = paths;
        cfg.bm_resolution = m;
        cfg.epsilon = {eps};
        cfg.z_points = {{zx, zy}};
        cfg.refine_depth = refine;
        cfg.seed = seed;
        cfg.workers = workers;
        const RunResult res = run(cfg);
        write_out(to_csv(res), out);
    } else if (deh->parsed()) {
        ExperimentConfig cfg;
        cfg.experiment =
            mode == "avg" ? ExperimentKind::DehnAvg : ExperimentKind::DehnRnd;
        cfg.n_values = {n};
        cfg.samples = samples;
        cfg.dehn_dimension = dim;
        cfg.seed = seed;
        cfg.workers = workers;
        const RunResult res = run(cfg);
        write_out(to_csv(res), out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const wind::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const wind::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
