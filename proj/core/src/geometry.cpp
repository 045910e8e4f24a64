#include "wind/geometry.hpp"

namespace wind {

ClipResult clip_convex_by_line(const std::vector<RatVec2>& poly,
                               const RatVec2& a, const RatVec2& b) {
    ClipResult out;
    const std::size_t n = poly.size();
    if (n < 3) return out;

    std::vector<int> side(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat c = cross(a, b, poly[i]);
        side[i] = c > 0 ? 1 : (c < 0 ? -1 : 0);
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const auto& p = poly[i];
        const auto& q = poly[j];
        if (side[i] >= 0) out.pos.push_back(p);
        if (side[i] <= 0) out.neg.push_back(p);
        if (side[i] * side[j] < 0) {
            // Edge strictly crosses the line; intersection is rational.
            // Solve cross(a, b, p + t (q - p)) = 0.
            Rat cp = cross(a, b, p);
            Rat cq = cross(a, b, q);
            Rat t = cp / (cp - cq);
            RatVec2 x{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
            out.pos.push_back(x);
            out.neg.push_back(x);
        }
    }
    // Degenerate slivers (all vertices on the line, or fewer than 3
    // distinct points) are reported as-is; callers check area.
    return out;
}

}  // namespace wind
