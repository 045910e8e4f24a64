#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace wind {

// Streaming mean/variance (Welford), mergeable.
struct Welford {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }
    void merge(const Welford& o) {
        if (o.count == 0) return;
        if (count == 0) { *this = o; return; }
        const double d = o.mean - mean;
        const auto n = static_cast<double>(count), m = static_cast<double>(o.count);
        mean += d * m / (n + m);
        m2 += o.m2 + d * d * n * m / (n + m);
        count += o.count;
    }
    double variance() const {  // sample variance
        return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    }
    // Half-width of the normal-approximation 95% CI of the mean.
    double ci_halfwidth() const;
};

// Ordinary least squares y = a + b x.
struct LinearFit {
    double a = 0.0;
    double b = 0.0;
    double rss = 0.0;  // residual sum of squares
    std::vector<double> residuals;
};
LinearFit ols_fit(std::span<const double> x, std::span<const double> y);

// Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
// The sample is copied and sorted internally.
double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf);

// CDF of the hyperbolic secant law: F(x) = (2/pi) arctan(exp(pi x / 2)).
double sech_cdf(double x);

}  // namespace wind
