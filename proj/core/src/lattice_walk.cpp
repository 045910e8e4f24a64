#include "wind/lattice_walk.hpp"

#include <cmath>

namespace wind {

double ScaleParams::r_n() const {
    return c0 * std::log(static_cast<double>(n));
}

WalkPath gen_walk(LatticeKind lattice, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_walk: n must be >= 1");
    WalkPath w;
    w.lattice = lattice;
    w.seed = seed;
    w.n = n;
    w.vertices.resize(static_cast<std::size_t>(n) + 1);
    w.vertices[0] = IVec2{0, 0};
    const auto steps = step_set(lattice);
    RngStream rng(seed);
    IVec2 pos{0, 0};
    for (std::int64_t i = 0; i < n; ++i) {
        const IVec2 s = steps[rng.uniform_below(steps.size())];
        pos.x += s.x;
        pos.y += s.y;
        w.vertices[static_cast<std::size_t>(i) + 1] = pos;
    }
    return w;
}

ClosedLoop close_loop(WalkPath path) {
    ClosedLoop loop;
    loop.chord_from = path.vertices.back();
    loop.chord_to = path.vertices.front();
    loop.path = std::move(path);
    return loop;
}

ScaleParams make_scale_params(std::int64_t n, LatticeKind lattice, double c0) {
    ScaleParams p;
    p.n = n;
    p.kappa = step_variance(lattice);
    p.c0 = c0;
    return p;
}

}  // namespace wind
