#include "wind/geometry.hpp"

#include <doctest.h>

using namespace wind;

namespace {

std::vector<RatVec2> unit_square() {
    return {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
}

}  // namespace

TEST_CASE("shoelace areas") {
    CHECK(shoelace(unit_square()) == Rat(1));
    auto cw = unit_square();
    std::reverse(cw.begin(), cw.end());
    CHECK(shoelace(cw) == Rat(-1));
    const std::vector<IVec2> tri{{0, 0}, {4, 0}, {0, 3}};
    CHECK(shoelace_int(tri) == Rat(6));
}

TEST_CASE("polygon centroid is exact") {
    const RatVec2 c = polygon_centroid(unit_square());
    CHECK(c.x == Rat(1, 2));
    CHECK(c.y == Rat(1, 2));
    // Off-center triangle.
    const std::vector<RatVec2> tri{
        {Rat(0), Rat(0)}, {Rat(3), Rat(0)}, {Rat(0), Rat(3)}};
    const RatVec2 t = polygon_centroid(tri);
    CHECK(t.x == Rat(1));
    CHECK(t.y == Rat(1));
}

TEST_CASE("clip by diagonal splits the square into equal halves") {
    const auto parts = clip_convex_by_line(unit_square(), {Rat(0), Rat(0)},
                                           {Rat(1), Rat(1)});
    CHECK(shoelace(parts.pos) == Rat(1, 2));
    CHECK(shoelace(parts.neg) == Rat(1, 2));
    // Areas recombine exactly.
    CHECK(shoelace(parts.pos) + shoelace(parts.neg) == shoelace(unit_square()));
}

TEST_CASE("clip by a line missing the square leaves one side whole") {
    const auto parts = clip_convex_by_line(unit_square(), {Rat(5), Rat(0)},
                                           {Rat(5), Rat(1)});
    CHECK(shoelace(parts.pos) == Rat(1));  // square lies left of x = 5 upward
    CHECK((parts.neg.size() < 3 || shoelace(parts.neg) == Rat(0)));
}

TEST_CASE("clip at generic rational line keeps exact areas") {
    const auto parts = clip_convex_by_line(
        unit_square(), {Rat(1, 3), Rat(0)}, {Rat(1, 3), Rat(1)});
    CHECK(shoelace(parts.pos) == Rat(1, 3));  // left of the upward line
    CHECK(shoelace(parts.neg) == Rat(2, 3));
}
