#include "wind/expint.hpp"

#include <cmath>
#include <limits>

namespace wind {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
double e1_series(double x) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 64; ++k) {
        term *= -x / k;
        const double add = -term / k;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// E1(x) = exp(-x) / (x + 1/(1 + 1/(x + 2/(1 + 2/(x + ...))))),
// evaluated by modified Lentz.
double e1_contfrac(double x) {
    constexpr double kTiny = 1e-300;
    double f = kTiny;
    double c = f;
    double d = 0.0;
    // b_0 = x, then alternating b = 1, x and a_j = ceil(j/2)
    double b = x;
    double a = 1.0;
    for (int j = 0; j < 400; ++j) {
        d = b + a * d;
        if (d == 0.0) d = kTiny;
        c = b + a / c;
        if (c == 0.0) c = kTiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
        const int k = j / 2 + 1;
        a = static_cast<double>(k);
        b = (j % 2 == 0) ? 1.0 : x;
    }
    return std::exp(-x) * f;
}

}  // namespace

double expint_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("expint_e1: requires x > 0");
    if (x > 700.0) return 0.0;  // below double underflow of exp(-x)/x
    return x <= 1.0 ? e1_series(x) : e1_contfrac(x);
}

double p_integral_target(Vec2 z) {
    const double r2 = z.x * z.x + z.y * z.y;
    if (r2 == 0.0) throw std::domain_error("p_integral_target: divergent at z = 0");
    constexpr double kPi = 3.14159265358979323846264338327950;
    return expint_e1(0.5 * r2) / (2.0 * kPi * kPi);
}

}  // namespace wind
