#include "wind/dehn.hpp"

#include "wind/lattice_walk.hpp"
#include "wind/rng.hpp"
#include "wind/stats.hpp"
#include "wind/winding_core.hpp"

#include <cmath>
#include <cstdlib>

namespace wind {

namespace {

double total_winding_of_vertices(std::vector<IVec2> vertices) {
    if (vertices.size() < 4) return 0.0;  // no enclosed area possible
    WalkPath p;
    p.lattice = LatticeKind::Square;
    p.n = static_cast<std::int64_t>(vertices.size()) - 1;
    p.vertices = std::move(vertices);
    return total_winding(index_field(close_loop(std::move(p)))).value;
}

}  // namespace

std::vector<std::int64_t> Word::endpoint() const {
    std::vector<std::int64_t> e(static_cast<std::size_t>(d), 0);
    for (int l : letters) {
        if (l == 0) continue;
        const int axis = std::abs(l) - 1;
        e[static_cast<std::size_t>(axis)] += l > 0 ? 1 : -1;
    }
    return e;
}

ClosingWord min_word(const std::vector<std::int64_t>& x) {
    ClosingWord c;
    c.x = x;
    c.v.d = static_cast<int>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int letter = x[i] > 0 ? -(static_cast<int>(i) + 1)
                                    : static_cast<int>(i) + 1;
        for (std::int64_t k = 0; k < std::llabs(x[i]); ++k)
            c.v.letters.push_back(letter);
    }
    return c;
}

Word random_word(int d, std::int64_t n, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("random_word: d >= 2 required");
    Word w;
    w.d = d;
    w.letters.reserve(static_cast<std::size_t>(n));
    RngStream r(seed);
    for (std::int64_t i = 0; i < n; ++i) {
        const auto g = static_cast<int>(r.uniform_below(2 * static_cast<std::uint64_t>(d)));
        const int axis = g / 2 + 1;
        w.letters.push_back(g % 2 == 0 ? axis : -axis);
    }
    return w;
}

DehnBound rnd_dehn_lower(const Word& w) {
    if (w.d < 2) throw std::invalid_argument("rnd_dehn_lower: d >= 2 required");
    const ClosingWord closing = min_word(w.endpoint());

    // Project w . v onto the first two coordinates, contracting
    // zero-displacement steps.
    std::vector<IVec2> verts{{0, 0}};
    auto push_letter = [&](int l) {
        if (l == 0) return;
        const int axis = std::abs(l);
        if (axis > 2) return;
        IVec2 p = verts.back();
        const std::int64_t s = l > 0 ? 1 : -1;
        if (axis == 1) p.x += s; else p.y += s;
        verts.push_back(p);
    };
    for (int l : w.letters) push_letter(l);
    for (int l : closing.v.letters) push_letter(l);

    DehnBound b;
    b.closing_length = closing.v.length();
    b.total_winding = total_winding_of_vertices(std::move(verts));
    const auto lv = static_cast<double>(b.closing_length);
    b.bound = std::max(0.0, b.total_winding - 4.0 * lv * lv);
    return b;
}

DehnAverage avg_dehn_lower(std::int64_t n, std::int64_t samples,
                           std::uint64_t seed) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("avg_dehn_lower: n must be even and >= 2");
    DehnAverage a;
    a.n = n;
    Welford w;

    if (n <= 8) {
        // Exact conditional mean by enumeration of all 4^n walks.
        const auto total = static_cast<std::uint64_t>(1) << (2 * n);
        const auto steps = step_set(LatticeKind::Square);
        std::vector<IVec2> verts(static_cast<std::size_t>(n) + 1);
        for (std::uint64_t code = 0; code < total; ++code) {
            verts[0] = {0, 0};
            std::uint64_t c = code;
            for (std::int64_t k = 0; k < n; ++k) {
                const IVec2 s = steps[c & 3];
                c >>= 2;
                verts[static_cast<std::size_t>(k + 1)] = {
                    verts[static_cast<std::size_t>(k)].x + s.x,
                    verts[static_cast<std::size_t>(k)].y + s.y};
            }
            if (!(verts.back() == IVec2{0, 0})) continue;
            w.add(total_winding_of_vertices(verts));
        }
    } else {
        std::uint64_t attempt = 0;
        while (w.count < samples) {
            const std::uint64_t s =
                RngStream::mix64(seed ^ (attempt * RngStream::kGamma + 0x1DE7ULL));
            ++attempt;
            WalkPath p = gen_walk(LatticeKind::Square, n, s);
            if (!(p.vertices.back() == IVec2{0, 0})) continue;
            w.add(total_winding(index_field(close_loop(std::move(p)))).value);
        }
    }
    a.samples = w.count;
    a.mean = w.mean;
    a.ci_lo = w.mean - w.ci_halfwidth();
    a.ci_hi = w.mean + w.ci_halfwidth();
    return a;
}

}  // namespace wind
