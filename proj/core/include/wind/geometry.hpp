#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace wind {

using Rat = boost::multiprecision::cpp_rational;

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct IVec2 {
    std::int64_t x = 0, y = 0;
    friend bool operator==(const IVec2&, const IVec2&) = default;
};

struct RatVec2 {
    Rat x, y;
};

inline Rat cross(const RatVec2& o, const RatVec2& a, const RatVec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Signed area of a simple polygon, exact.
inline Rat shoelace(const std::vector<RatVec2>& poly) {
    Rat s = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    return s / 2;
}

inline Rat shoelace_int(const std::vector<IVec2>& poly) {
    boost::multiprecision::cpp_int s = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        s += boost::multiprecision::cpp_int(a.x) * b.y -
             boost::multiprecision::cpp_int(b.x) * a.y;
    }
    return Rat(s, 2);
}

// Area centroid of a convex polygon with nonzero area.
inline RatVec2 polygon_centroid(const std::vector<RatVec2>& poly) {
    Rat a6 = 0, cx = 0, cy = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        Rat w = p.x * q.y - q.x * p.y;
        a6 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    // a6 = 6 * signed area / 3 ... precisely: centroid = sum / (3 * a6) with a6 = 2A.
    return RatVec2{cx / (3 * a6), cy / (3 * a6)};
}

// Split a convex polygon by the oriented line through a -> b.
// Returns {left-or-on part, right-or-on part}; either may be empty or
// degenerate (area 0) when the line misses the interior.
struct ClipResult {
    std::vector<RatVec2> pos;  // side with cross > 0 (left of a->b)
    std::vector<RatVec2> neg;
};

ClipResult clip_convex_by_line(const std::vector<RatVec2>& poly,
                               const RatVec2& a, const RatVec2& b);

}  // namespace wind
