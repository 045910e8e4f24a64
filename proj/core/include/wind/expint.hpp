#pragma once

#include "wind/geometry.hpp"

#include <stdexcept>

namespace wind {

// Exponential integral E1(x) for x > 0, relative error < 1e-10.
// Power series for small arguments, continued fraction for large.
double expint_e1(double x);

// (1/pi) * integral_0^1 p_s(0, z) ds with the planar heat kernel
// p_s(0, z) = exp(-|z|^2 / 2s) / (2 pi s).  Equals E1(|z|^2/2) / (2 pi^2).
// Throws std::domain_error at z = 0 (divergent).
double p_integral_target(Vec2 z);

}  // namespace wind
