#include "wind/excursions.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wind {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_integral(double v) { return v == std::floor(v); }

}  // namespace

DiagonalFrame build_frame(Vec2 z, LatticeKind lattice) {
    DiagonalFrame f;
    f.lattice = lattice;
    f.z = z;
    if (lattice == LatticeKind::Square) {
        if (is_integral(z.x) || is_integral(z.y)) throw DegeneratePointError{};
        f.z_basis = z;
        f.cell_x = static_cast<std::int64_t>(std::floor(z.x));
        f.cell_y = static_cast<std::int64_t>(std::floor(z.y));
        f.z_hat = {static_cast<double>(f.cell_x) + 0.5,
                   static_cast<double>(f.cell_y) + 0.5};
        f.diag_c = f.cell_x - f.cell_y;
        return f;
    }
    // Triangular: locate the containing triangle in basis coordinates.
    constexpr double kHalfSqrt3 = 0.86602540378443864676;
    const double by = z.y / kHalfSqrt3;
    const double bx = z.x - 0.5 * by;
    f.z_basis = {bx, by};
    const auto a = static_cast<std::int64_t>(std::floor(bx));
    const auto b = static_cast<std::int64_t>(std::floor(by));
    const double fx = bx - static_cast<double>(a);
    const double fy = by - static_cast<double>(b);
    if (fx == 0.0 || fy == 0.0 || fx + fy == 1.0) throw DegeneratePointError{};
    f.cell_x = a;
    f.cell_y = b;
    if (fx + fy < 1.0) {
        f.sub = 0;  // up triangle; s is its bottom edge
        f.s_a = IVec2{a, b};
        f.s_b = IVec2{a + 1, b};
        f.line_y = b;
    } else {
        f.sub = 1;  // down triangle; s is its top edge
        f.s_a = IVec2{a, b + 1};
        f.s_b = IVec2{a + 1, b + 1};
        f.line_y = b + 1;
    }
    f.z_hat = {static_cast<double>(f.s_a.x) + 0.5, static_cast<double>(f.line_y)};
    return f;
}

ExcursionSet decompose(const WalkPath& path, const DiagonalFrame& frame,
                       bool compute_theta) {
    if (path.lattice != frame.lattice)
        throw std::invalid_argument("decompose: path and frame lattices differ");
    ExcursionSet set;
    set.frame = frame;
    const auto& v = path.vertices;
    const std::size_t np = v.size();

    // Side of each vertex: square: +1 on Delta+, -1 on Delta-, 0 off the
    // line.  Triangular: sign of the half-plane, 0 on the line.
    auto side = [&](std::size_t t) -> int {
        const IVec2 p = v[t];
        if (frame.lattice == LatticeKind::Square) {
            if (p.x - p.y != frame.diag_c) return 0;
            return p.x >= frame.cell_x + 1 ? 1 : -1;
        }
        if (p.y == frame.line_y) return 0;
        return p.y > frame.line_y ? 1 : -1;
    };

    // Alternating hitting times e_i.
    std::vector<std::int64_t> hits;
    int want = 0;
    for (std::size_t t = 0; t < np; ++t) {
        const int s = side(t);
        if (s == 0) continue;
        if (want == 0 || s == want) {
            hits.push_back(static_cast<std::int64_t>(t));
            want = -s;
        }
    }

    // Full-walk winding angle around z (Euclidean embedding).
    if (compute_theta) {
        Vec2 prev = embed(path.lattice, v[0]);
        double acc = 0.0;
        for (std::size_t t = 1; t < np; ++t) {
            const Vec2 cur = embed(path.lattice, v[t]);
            const double ax = prev.x - frame.z.x, ay = prev.y - frame.z.y;
            const double bx = cur.x - frame.z.x, by = cur.y - frame.z.y;
            acc += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
            prev = cur;
        }
        set.theta_over_2pi = acc / kTwoPi;
    }

    // Triangular: prefix count of traversals of the reference edge s.
    std::vector<std::int32_t> trav;
    if (frame.lattice == LatticeKind::Triangular) {
        trav.resize(np, 0);
        for (std::size_t t = 1; t < np; ++t) {
            const bool hit = (v[t - 1] == frame.s_a && v[t] == frame.s_b) ||
                             (v[t - 1] == frame.s_b && v[t] == frame.s_a);
            trav[t] = trav[t - 1] + (hit ? 1 : 0);
        }
        set.s_traversals = trav[np - 1];
    }

    // Weight of one excursion.  The winding angle of an excursion
    // around the cell center is exactly +-pi (the walk cannot cross the
    // diagonal line away from its vertices), so the weight is a pure
    // direction and can be read off the arrival step exactly.
    auto weight_of = [&](std::int64_t t_end_i) -> double {
        const auto te = static_cast<std::size_t>(t_end_i);
        const IVec2 p = v[te];       // arrival vertex, on the far half-line/plane
        const IVec2 q = v[te - 1];   // penultimate vertex
        if (frame.lattice == LatticeKind::Square) {
            // end half-line sign times the side of q w.r.t. the diagonal
            const int endsign = p.x >= frame.cell_x + 1 ? 1 : -1;
            const int qside = (q.x - q.y) > frame.diag_c ? 1 : -1;
            return 0.5 * endsign * qside;
        }
        // Triangular: the unique crossing step is q -> p (q on the
        // supporting line).  Counterclockwise around z iff z lies left
        // of the directed step; all z in the triangle agree.
        const double dx = static_cast<double>(p.x - q.x);
        const double dy = static_cast<double>(p.y - q.y);
        const double cr = dx * (frame.z_basis.y - static_cast<double>(q.y)) -
                          dy * (frame.z_basis.x - static_cast<double>(q.x));
        return cr > 0 ? 0.5 : -0.5;
    };

    double wsum = 0.0;
    for (std::size_t i = 0; i + 1 < hits.size(); ++i) {
        Excursion e;
        e.t_start = hits[i];
        e.t_end = hits[i + 1];
        bool traverses_s = false;
        if (!trav.empty())
            traverses_s = trav[static_cast<std::size_t>(e.t_end)] >
                          trav[static_cast<std::size_t>(e.t_start)];
        e.weight = traverses_s ? 0.0 : weight_of(e.t_end);
        wsum += e.weight;
        set.excursions.push_back(e);
    }
    set.weight_sum = wsum;
    if (compute_theta) set.residual = std::abs(set.theta_over_2pi - wsum);
    return set;
}

ExcursionSet classify(ExcursionSet set, const ScaleParams& params,
                      const WalkPath& path) {
    const double r = params.r_n();
    const auto& v = path.vertices;
    const std::size_t np = v.size();
    const Vec2 z = set.frame.z;

    auto dist = [&](std::size_t t) {
        const Vec2 p = embed(path.lattice, v[t]);
        return std::hypot(p.x - z.x, p.y - z.y);
    };

    // Far-zone time set rebuilt from the walk: sigma_i = first entry
    // into B(z, 2r) after tau_{i-1}, tau_i = first exit from B(z, 4r).
    // T = union [tau_i, sigma_{i+1}).
    std::vector<std::pair<std::int64_t, std::int64_t>> far_intervals;
    std::int64_t crossings = 0;
    {
        std::size_t t = 0;
        std::int64_t tau = 0;
        while (t < np) {
            // seek sigma: first time strictly inside B(z, 2r)
            std::size_t s = t;
            while (s < np && dist(s) >= 2.0 * r) ++s;
            far_intervals.push_back({tau, s == np ? static_cast<std::int64_t>(np)
                                                  : static_cast<std::int64_t>(s)});
            if (s == np) break;
            // seek tau: first time strictly outside B(z, 4r)
            std::size_t u = s;
            while (u < np && dist(u) <= 4.0 * r) ++u;
            if (u == np) break;
            tau = static_cast<std::int64_t>(u);
            ++crossings;
            t = u;
        }
    }
    set.crossings = crossings;

    const double r8 = 8.0 * r;
    set.n_small = set.n_medium = set.n_large = 0;
    set.n_medium_far = set.n_medium_near = 0;
    for (Excursion& e : set.excursions) {
        const double d0 = dist(static_cast<std::size_t>(e.t_start));
        if (d0 <= r) {
            e.cls = ExcClass::Small;
            ++set.n_small;
            continue;
        }
        bool large = false;
        for (const auto& [lo, hi] : far_intervals) {
            if (lo <= e.t_start && e.t_end < hi) {
                large = true;
                break;
            }
            if (lo > e.t_start) break;
        }
        if (large) {
            e.cls = ExcClass::Large;
            ++set.n_large;
        } else {
            e.cls = ExcClass::Medium;
            ++set.n_medium;
            if (d0 > r8)
                ++set.n_medium_far;
            else
                ++set.n_medium_near;
        }
    }
    return set;
}

namespace {

double binom_two_sided_p(std::int64_t plus, std::int64_t minus) {
    const std::int64_t n = plus + minus;
    if (n == 0) return 1.0;
    const auto k = static_cast<double>(std::max(plus, minus));
    if (n <= 64) {
        // exact: P[|X - n/2| >= |k - n/2|] under Binomial(n, 1/2)
        const double half = static_cast<double>(n) / 2.0;
        const double dev = k - half;
        double p = 0.0;
        double logc = 0.0;  // log C(n, 0)
        for (std::int64_t j = 0; j <= n; ++j) {
            if (std::abs(static_cast<double>(j) - half) >= dev - 1e-12)
                p += std::exp(logc - static_cast<double>(n) * std::log(2.0));
            logc += std::log(static_cast<double>(n - j)) -
                    std::log(static_cast<double>(j + 1));
        }
        return std::min(1.0, p);
    }
    const double zstat = (2.0 * k - static_cast<double>(n) - 1.0) /
                         std::sqrt(static_cast<double>(n));
    return std::erfc(std::max(0.0, zstat) / std::sqrt(2.0));
}

}  // namespace

WeightSymmetry weight_symmetry_stats(std::span<const ExcursionSet> samples) {
    WeightSymmetry w;
    for (const ExcursionSet& s : samples) {
        for (const Excursion& e : s.excursions) {
            if (e.weight > 0) {
                ++w.n_plus;
                ++w.per_class_plus[static_cast<int>(e.cls)];
            } else if (e.weight < 0) {
                ++w.n_minus;
                ++w.per_class_minus[static_cast<int>(e.cls)];
            }
        }
    }
    const std::int64_t n = w.n_plus + w.n_minus;
    if (n > 0) {
        w.mean_weight = 0.5 * static_cast<double>(w.n_plus - w.n_minus) /
                        static_cast<double>(n);
        w.std_error = 0.5 / std::sqrt(static_cast<double>(n));
        w.p_value = binom_two_sided_p(w.n_plus, w.n_minus);
    }
    return w;
}

std::string excursion_set_to_json(const ExcursionSet& set) {
    nlohmann::json j;
    j["z"] = {set.frame.z.x, set.frame.z.y};
    j["z_hat"] = {set.frame.z_hat.x, set.frame.z_hat.y};
    auto& exc = j["excursions"] = nlohmann::json::array();
    static const char* kCls[] = {"unclassified", "small", "medium", "large"};
    for (const Excursion& e : set.excursions)
        exc.push_back({e.t_start, e.t_end, e.weight, kCls[static_cast<int>(e.cls)]});
    j["residual"] = set.residual;
    j["crossings"] = set.crossings;
    if (set.frame.lattice == LatticeKind::Triangular)
        j["s_traversals"] = set.s_traversals;
    return j.dump();
}

}  // namespace wind
