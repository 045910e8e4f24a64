#include "wind/lattice_walk.hpp"
#include "wind/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace wind;

TEST_CASE("rng streams are deterministic and distinct") {
    RngStream a(42, 0), b(42, 0), c(42, 1), d(7, 0);
    bool same = true, diff1 = false, diff2 = false;
    for (int i = 0; i < 64; ++i) {
        const auto x = a.next_u64();
        same = same && x == b.next_u64();
        diff1 = diff1 || x != c.next_u64();
        diff2 = diff2 || x != d.next_u64();
    }
    CHECK(same);
    CHECK(diff1);
    CHECK(diff2);
}

TEST_CASE("uniform01 range and gaussian moments") {
    RngStream r(1);
    double sum = 0, sum2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double g = r.gaussian();
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sum2 / n - 1.0) < 0.02);
}

TEST_CASE("uniform_below stays in range and is roughly uniform") {
    RngStream r(9);
    std::map<std::uint64_t, int> counts;
    const int n = 60000;
    for (int i = 0; i < n; ++i) ++counts[r.uniform_below(6)];
    REQUIRE(counts.size() == 6);
    for (const auto& [k, c] : counts) {
        REQUIRE(k < 6);
        CHECK(std::abs(c - n / 6) < 5 * std::sqrt(static_cast<double>(n) / 6));
    }
}

TEST_CASE("walk structure and seed determinism") {
    for (LatticeKind lat : {LatticeKind::Square, LatticeKind::Triangular}) {
        const WalkPath p = gen_walk(lat, 500, 11);
        REQUIRE(p.vertices.size() == 501);
        CHECK(p.vertices.front() == IVec2{0, 0});
        const auto steps = step_set(lat);
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
            const IVec2 d{p.vertices[i + 1].x - p.vertices[i].x,
                          p.vertices[i + 1].y - p.vertices[i].y};
            bool ok = false;
            for (const IVec2& s : steps) ok = ok || s == d;
            REQUIRE(ok);
        }
        const WalkPath q = gen_walk(lat, 500, 11);
        CHECK(p.vertices == q.vertices);
        const WalkPath r = gen_walk(lat, 500, 12);
        CHECK(p.vertices != r.vertices);
    }
    CHECK_THROWS(gen_walk(LatticeKind::Square, 0, 1));
}

TEST_CASE("step chi-square uniformity") {
    for (LatticeKind lat : {LatticeKind::Square, LatticeKind::Triangular}) {
        const auto steps = step_set(lat);
        const WalkPath p = gen_walk(lat, 60000, 5);
        std::map<std::pair<std::int64_t, std::int64_t>, int> counts;
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
            ++counts[{p.vertices[i + 1].x - p.vertices[i].x,
                      p.vertices[i + 1].y - p.vertices[i].y}];
        REQUIRE(counts.size() == steps.size());
        const double expect = 60000.0 / static_cast<double>(steps.size());
        double chi2 = 0;
        for (const auto& [k, c] : counts)
            chi2 += (c - expect) * (c - expect) / expect;
        // df = 3 or 5; 25 is far beyond the 0.001 quantile of either.
        CHECK(chi2 < 25.0);
    }
}

TEST_CASE("triangular step variance matches the embedded step set") {
    const auto steps = step_set(LatticeKind::Triangular);
    double vx = 0, vy = 0;
    for (const IVec2& s : steps) {
        const Vec2 e = embed(LatticeKind::Triangular, s);
        CHECK(std::abs(e.x * e.x + e.y * e.y - 1.0) < 1e-12);  // unit steps
        vx += e.x * e.x;
        vy += e.y * e.y;
    }
    vx /= static_cast<double>(steps.size());
    vy /= static_cast<double>(steps.size());
    CHECK(std::abs(vx - step_variance(LatticeKind::Triangular)) < 1e-12);
    CHECK(std::abs(vy - step_variance(LatticeKind::Triangular)) < 1e-12);
}

TEST_CASE("scale params") {
    const ScaleParams sp = make_scale_params(1024, LatticeKind::Square, 2.0);
    CHECK(sp.r_n() == doctest::Approx(2.0 * std::log(1024.0)));
    CHECK(sp.kappa == doctest::Approx(0.5));
}
