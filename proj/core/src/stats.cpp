#include "wind/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wind {

double Welford::ci_halfwidth() const {
    if (count < 2) return 0.0;
    constexpr double kZ95 = 1.959963984540054;
    return kZ95 * std::sqrt(variance() / static_cast<double>(count));
}

LinearFit ols_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("ols_fit: size mismatch");
    if (x.size() < 3) throw std::invalid_argument("ols_fit: need >= 3 points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("ols_fit: degenerate x");
    LinearFit f;
    f.b = sxy / sxx;
    f.a = my - f.b * mx;
    f.residuals.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        f.residuals[i] = y[i] - (f.a + f.b * x[i]);
        f.rss += f.residuals[i] * f.residuals[i];
    }
    return f;
}

double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::vector<double> s(sample.begin(), sample.end());
    std::sort(s.begin(), s.end());
    const auto n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double sech_cdf(double x) {
    constexpr double kPi = 3.14159265358979323846264338327950;
    if (x > 100.0) return 1.0;
    return (2.0 / kPi) * std::atan(std::exp(0.5 * kPi * x));
}

}  // namespace wind
