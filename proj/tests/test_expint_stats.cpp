#include "wind/expint.hpp"
#include "wind/rng.hpp"
#include "wind/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace wind;

namespace {

// Adaptive Simpson quadrature, used as an independent oracle below.
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
           simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    const double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(m), f(b), tol, 40);
}

}  // namespace

TEST_CASE("exponential integral reference values") {
    // Frozen high-precision references (Abramowitz & Stegun table values
    // refined with 50-digit arithmetic).
    CHECK(expint_e1(0.1) == doctest::Approx(1.8229239584193906).epsilon(1e-10));
    CHECK(expint_e1(0.5) == doctest::Approx(0.5597735947761608).epsilon(1e-10));
    CHECK(expint_e1(1.0) == doctest::Approx(0.21938393439552028).epsilon(1e-10));
    CHECK(expint_e1(2.0) == doctest::Approx(0.04890051070806112).epsilon(1e-10));
    CHECK(expint_e1(5.0) == doctest::Approx(0.001148295591275326).epsilon(1e-10));
    CHECK(expint_e1(10.0) == doctest::Approx(4.156968929685325e-6).epsilon(1e-10));
    CHECK(expint_e1(800.0) == 0.0);  // underflow regime
    CHECK_THROWS_AS(expint_e1(0.0), std::domain_error);
    CHECK_THROWS_AS(expint_e1(-1.0), std::domain_error);
}

TEST_CASE("heat-kernel time integral matches direct quadrature") {
    constexpr double kPi = 3.14159265358979323846;
    for (double r : {0.5, 1.0, 1.7, 2.4}) {
        const Vec2 z{r * 0.6, r * 0.8};
        const double r2 = r * r;
        // Substitute s = exp(u) to tame the s -> 0 endpoint.
        const auto f = [&](double u) {
            return std::exp(-r2 / (2.0 * std::exp(u))) / (2.0 * kPi);
        };
        const double oracle = integrate(f, -60.0, 0.0, 1e-12) / kPi;
        CHECK(p_integral_target(z) == doctest::Approx(oracle).epsilon(1e-8));
    }
    CHECK(p_integral_target({1.0, 0.0}) == doctest::Approx(0.028358).epsilon(1e-4));
    CHECK_THROWS_AS(p_integral_target({0.0, 0.0}), std::domain_error);
}

TEST_CASE("welford matches two-pass statistics") {
    RngStream r(17);
    std::vector<double> xs(100000);
    Welford w;
    for (double& x : xs) {
        x = r.gaussian() * 3.0 + 5.0;
        w.add(x);
    }
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = ss / static_cast<double>(xs.size() - 1);
    CHECK(w.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(w.variance() == doctest::Approx(var).epsilon(1e-10));
    CHECK(w.ci_halfwidth() ==
          doctest::Approx(1.959963984540054 *
                          std::sqrt(var / static_cast<double>(xs.size()))));
}

TEST_CASE("welford merge equals sequential accumulation") {
    RngStream r(23);
    Welford all, lo, hi;
    for (int i = 0; i < 40000; ++i) {
        const double x = r.uniform01() * 7 - 2;
        all.add(x);
        (i % 3 == 0 ? lo : hi).add(x);
    }
    Welford merged = lo;
    merged.merge(hi);
    CHECK(merged.count == all.count);
    CHECK(merged.mean == doctest::Approx(all.mean).epsilon(1e-12));
    CHECK(merged.variance() == doctest::Approx(all.variance()).epsilon(1e-10));
    Welford empty;
    merged.merge(empty);
    CHECK(merged.count == all.count);
}

TEST_CASE("least squares recovers exact linear data") {
    std::vector<double> x, y;
    const double b = 1.0 / (2.0 * 3.14159265358979323846);
    for (int i = 0; i < 20; ++i) {
        x.push_back(std::log(std::log(1024.0 * (i + 2))));
        y.push_back(0.3 + b * x.back());
    }
    const LinearFit fit = ols_fit(x, y);
    CHECK(fit.a == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(fit.b == doctest::Approx(b).epsilon(1e-10));
    CHECK(fit.rss < 1e-18);
    REQUIRE(fit.residuals.size() == x.size());

    // Constant data: slope zero.
    std::fill(y.begin(), y.end(), 4.5);
    const LinearFit flat = ols_fit(x, y);
    CHECK(flat.b == doctest::Approx(0.0));
    CHECK(flat.a == doctest::Approx(4.5));

    CHECK_THROWS(ols_fit(std::vector<double>{1.0, 2.0},
                         std::vector<double>{1.0, 2.0}));
    std::vector<double> same(5, 2.0), ys(5, 1.0);
    CHECK_THROWS(ols_fit(same, ys));
}

TEST_CASE("kolmogorov-smirnov statistic") {
    // Point mass at the median of the sech law: D = 1/2.
    std::vector<double> point(100, 0.0);
    CHECK(ks_statistic(point, sech_cdf) == doctest::Approx(0.5).epsilon(1e-9));

    // A perfect quantile grid has vanishing discrepancy.
    std::vector<double> grid;
    const int m = 2000;
    for (int i = 0; i < m; ++i) {
        const double u = (i + 0.5) / m;
        // Invert the sech CDF: x = (2/pi) ln tan(pi u / 2).
        grid.push_back(2.0 / 3.14159265358979323846 *
                       std::log(std::tan(1.5707963267948966 * u)));
    }
    CHECK(ks_statistic(grid, sech_cdf) < 1.0 / m + 1e-9);
}

TEST_CASE("sech cdf properties") {
    CHECK(sech_cdf(0.0) == doctest::Approx(0.5));
    for (double x : {0.3, 1.0, 2.5})
        CHECK(sech_cdf(x) + sech_cdf(-x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sech_cdf(50.0) == doctest::Approx(1.0));
    CHECK(sech_cdf(-50.0) == doctest::Approx(0.0));
}
