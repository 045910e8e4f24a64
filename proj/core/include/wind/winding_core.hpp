#pragma once

#include "wind/geometry.hpp"
#include "wind/lattice_walk.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wind {

struct PointOnCurveError : std::domain_error {
    PointOnCurveError() : std::domain_error("point on curve") {}
};

// Signed winding angle of an open or closed polyline around z, in
// radians.  Each segment contributes its exact subtended angle in
// (-pi, pi); for a closed polyline the sum is 2*pi times the index.
double winding_angle(std::span<const Vec2> polyline, Vec2 z);

// Index of z with respect to a closed lattice loop.  Off the chord the
// value is the integer winding number (counterclockwise positive).  If
// z lies on the open chord segment the convention value
// theta/(2*pi) - 1/2 is returned and on_chord is set.
struct PointIndex {
    // Value times 2, so the chord convention is representable exactly.
    std::int64_t twice = 0;
    bool on_chord = false;
    double value() const { return static_cast<double>(twice) / 2.0; }
};
PointIndex point_index(const ClosedLoop& loop, Vec2 z);

// Cell of a lattice: for Square, the unit square with lower-left
// corner (x, y) and sub == 0.  For Triangular (integer basis coords),
// sub == 0 is the up triangle {(x,y),(x+1,y),(x,y+1)} and sub == 1 the
// down triangle {(x+1,y),(x,y+1),(x+1,y+1)}.
struct CellId {
    std::int64_t x = 0, y = 0;
    std::uint8_t sub = 0;
    friend bool operator==(const CellId&, const CellId&) = default;
    friend auto operator<=>(const CellId&, const CellId&) = default;
};

struct SplitCell {
    CellId cell;
    std::vector<RatVec2> poly;  // sub-polygon, basis coordinates
    Rat area;                   // exact, basis units
    std::int64_t index = 0;
};

// Exact winding-number field of a closed lattice loop.  Whole cells
// are stored as per-row runs of equal index; cells cut by the chord
// are listed in split_cells instead (their runs are removed).  All
// unlisted cells have index 0.
class IndexField {
public:
    struct Run {
        std::int64_t x_begin = 0;  // first cell x
        std::int64_t x_end = 0;    // one past last cell x
        std::int64_t index = 0;
    };
    struct Row {
        std::int64_t y = 0;
        std::uint8_t sub = 0;  // triangular: 0 = up triangles, 1 = down
        std::vector<Run> runs;
    };

    LatticeKind lattice = LatticeKind::Square;
    std::vector<Row> rows;
    std::vector<SplitCell> split_cells;
    Rat signed_area;  // shoelace area of the loop polygon, basis units

    // Euclidean area of one whole cell and the basis -> Euclidean area
    // scale factor (1 for square, sqrt(3)/2 for triangular).
    double area_scale() const;
    Rat cell_area_basis() const;  // 1 for square, 1/2 for triangular

    std::int64_t index_of_cell(const CellId& c) const;
    void for_each_cell(const std::function<void(const CellId&, std::int64_t)>& f) const;
};

IndexField index_field(const ClosedLoop& loop);

struct TotalWinding {
    Rat exact_basis;  // sum |index| * area in basis units
    double value = 0.0;  // Euclidean units
};
TotalWinding total_winding(const IndexField& field);

// Deterministic Riemann-sum oracle: |point_index| over a regular grid
// of the given pitch, offset off all lattice lines.  Sample points
// within guard_radius (default 0.75 * pitch) of the loop are excluded
// and their area reported, which bounds the disagreement with the
// exact field.
struct SampledWinding {
    double value = 0.0;          // Euclidean units
    double excluded_area = 0.0;  // Euclidean units
    std::int64_t max_abs_index = 0;
    std::int64_t samples = 0;
};
SampledWinding total_winding_sampled(const ClosedLoop& loop, double pitch,
                                     double guard_radius = -1.0);

// Exact area per nonzero index value, basis units.
struct IndexHistogram {
    std::map<std::int64_t, Rat> area_basis;
    double area_scale = 1.0;
    double area(std::int64_t k) const;
};
IndexHistogram index_histogram(const IndexField& field);

// JSON form documented in the README:
// {lattice, cells: [[cx, cy(, sub), index] ...], split_cells: [...],
//  signed_area}.
std::string index_field_to_json(const IndexField& field);

}  // namespace wind
