#include "wind/winding_core.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>

namespace wind {

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676;

std::int64_t rat_floor(const Rat& r) {
    using boost::multiprecision::cpp_int;
    cpp_int num = numerator(r);
    cpp_int den = denominator(r);  // > 0
    cpp_int q = num / den;
    if (num < 0 && q * den != num) --q;
    return q.convert_to<std::int64_t>();
}

bool rat_is_integer(const Rat& r) { return denominator(r) == 1; }

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// Euclidean plane point -> lattice basis coordinates.
Vec2 to_basis(LatticeKind k, Vec2 z) {
    if (k == LatticeKind::Square) return z;
    const double b = z.y / kSqrt3Half;
    return {z.x - 0.5 * b, b};
}

}  // namespace

double winding_angle(std::span<const Vec2> polyline, Vec2 z) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const double ax = polyline[i].x - z.x;
        const double ay = polyline[i].y - z.y;
        const double bx = polyline[i + 1].x - z.x;
        const double by = polyline[i + 1].y - z.y;
        const double cr = ax * by - ay * bx;
        const double dt = ax * bx + ay * by;
        if (cr == 0.0 && dt <= 0.0) throw PointOnCurveError{};
        total += std::atan2(cr, dt);
    }
    return total;
}

namespace {

// Winding angle of the embedded open walk around z (Euclidean coords),
// used only on the rare chord-convention path.
double walk_angle_euclid(const WalkPath& path, Vec2 z) {
    double total = 0.0;
    Vec2 prev = embed(path.lattice, path.vertices[0]);
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        const Vec2 cur = embed(path.lattice, path.vertices[i]);
        const double ax = prev.x - z.x, ay = prev.y - z.y;
        const double bx = cur.x - z.x, by = cur.y - z.y;
        const double cr = ax * by - ay * bx;
        const double dt = ax * bx + ay * by;
        if (cr == 0.0 && dt <= 0.0) throw PointOnCurveError{};
        total += std::atan2(cr, dt);
        prev = cur;
    }
    return total;
}

}  // namespace

PointIndex point_index(const ClosedLoop& loop, Vec2 z) {
    const LatticeKind lat = loop.path.lattice;
    const Vec2 zb = to_basis(lat, z);
    const auto& v = loop.path.vertices;

    std::int64_t w = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double py = static_cast<double>(v[i].y);
        const double qy = static_cast<double>(v[i + 1].y);
        const double px = static_cast<double>(v[i].x);
        const double qx = static_cast<double>(v[i + 1].x);
        if (py == qy) {
            if (zb.y == py && zb.x >= std::min(px, qx) && zb.x <= std::max(px, qx))
                throw PointOnCurveError{};
            continue;
        }
        const double lo = std::min(py, qy), hi = std::max(py, qy);
        if (zb.y <= lo || zb.y >= hi) {
            // Exactly at a vertex height: the walk's vertices are at
            // integer heights, so z on a vertex is the only edge case.
            if ((zb.y == py && zb.x == px) || (zb.y == qy && zb.x == qx))
                throw PointOnCurveError{};
            continue;
        }
        const double x = px + (zb.y - py) * (qx - px) / (qy - py);
        if (x == zb.x) throw PointOnCurveError{};
        if (x > zb.x) w += (qy > py) ? 1 : -1;
    }

    if (!loop.chord_degenerate()) {
        const auto A = loop.chord_from;
        const auto B = loop.chord_to;
        const double ax = static_cast<double>(A.x), ay = static_cast<double>(A.y);
        const double bx = static_cast<double>(B.x), by = static_cast<double>(B.y);
        const double cr = (bx - ax) * (zb.y - ay) - (by - ay) * (zb.x - ax);
        const bool in_box = zb.x >= std::min(ax, bx) && zb.x <= std::max(ax, bx) &&
                            zb.y >= std::min(ay, by) && zb.y <= std::max(ay, by);
        if (cr == 0.0 && in_box) {
            // On the open chord (endpoints are walk vertices, caught above).
            const double theta = walk_angle_euclid(loop.path, z);
            const double half = theta / 3.14159265358979323846;  // theta / pi
            const auto odd = static_cast<std::int64_t>(std::llround(half));
            // theta/(2 pi) = odd/2, convention subtracts 1/2.
            PointIndex r;
            r.twice = odd - 1;
            r.on_chord = true;
            return r;
        }
        if (ay != by && zb.y > std::min(ay, by) && zb.y < std::max(ay, by)) {
            const double x = ax + (zb.y - ay) * (bx - ax) / (by - ay);
            if (x > zb.x) w += (by > ay) ? 1 : -1;
        }
    }

    PointIndex r;
    r.twice = 2 * w;
    r.on_chord = false;
    return r;
}

// ---------------------------------------------------------------------------
// Exact field construction
// ---------------------------------------------------------------------------

namespace {

struct RowEdge {
    std::int32_t a;     // base cell x
    std::int8_t type;   // 0 vertical (x = a), 1 diagonal (x = a + (y+1) - ys)
    std::int8_t sign;   // +1 upward, -1 downward
};

struct FieldBuilder {
    LatticeKind lattice;
    std::int64_t ymin = 0, ymax = 0;  // strip rows [ymin, ymax)
    std::vector<std::vector<RowEdge>> rows;
    IVec2 A{}, B{};  // chord, basis coords
    bool has_chord = false;

    std::vector<RowEdge>& row(std::int64_t y) {
        return rows[static_cast<std::size_t>(y - ymin)];
    }
    const std::vector<RowEdge>& row(std::int64_t y) const {
        return rows[static_cast<std::size_t>(y - ymin)];
    }

    // Exact winding index at a rational point strictly inside a cell of
    // strip row floor(p.y): signed ray crossings to the right.
    std::int64_t index_at(const RatVec2& p) const {
        const std::int64_t b = rat_floor(p.y);
        std::int64_t w = 0;
        if (b >= ymin && b < ymax) {
            for (const RowEdge& e : row(b)) {
                if (e.type == 0) {
                    if (Rat(e.a) > p.x) w += e.sign;
                } else {
                    // diagonal from (a, b+1) to (a+1, b): x = a + (b+1) - y
                    if (Rat(e.a + b + 1) - p.y > p.x) w += e.sign;
                }
            }
        }
        if (has_chord && A.y != B.y) {
            const auto [lo, hi] = std::minmax(A.y, B.y);
            if (Rat(lo) < p.y && p.y < Rat(hi)) {
                // x = Ax + (y - Ay) * dx / dy
                const Rat x = Rat(A.x) + (p.y - A.y) * Rat(B.x - A.x) / Rat(B.y - A.y);
                if (x > p.x) w += (B.y > A.y) ? 1 : -1;
            }
        }
        return w;
    }
};

FieldBuilder make_builder(const ClosedLoop& loop) {
    FieldBuilder fb;
    fb.lattice = loop.path.lattice;
    const auto& v = loop.path.vertices;
    std::int64_t ylo = v[0].y, yhi = v[0].y;
    for (const auto& p : v) {
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
    fb.ymin = ylo;
    fb.ymax = std::max(yhi, ylo + 1);
    fb.rows.resize(static_cast<std::size_t>(fb.ymax - fb.ymin));
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const IVec2 p = v[i], q = v[i + 1];
        if (p.y == q.y) continue;
        const bool up = q.y > p.y;
        const std::int64_t b = std::min(p.y, q.y);
        RowEdge e;
        e.sign = up ? 1 : -1;
        if (p.x == q.x) {
            e.type = 0;
            e.a = static_cast<std::int32_t>(p.x);
        } else {
            // triangular diagonal step: connects (a, b+1) and (a+1, b)
            e.type = 1;
            e.a = static_cast<std::int32_t>(std::min(p.x, q.x));
        }
        fb.row(b).push_back(e);
    }
    fb.has_chord = !loop.chord_degenerate();
    fb.A = loop.chord_from;
    fb.B = loop.chord_to;
    return fb;
}

// Polygon of a cell, CCW, integer basis coordinates.
std::vector<RatVec2> cell_polygon(LatticeKind lat, const CellId& c) {
    const Rat x(c.x), y(c.y);
    if (lat == LatticeKind::Square)
        return {{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}};
    if (c.sub == 0) return {{x, y}, {x + 1, y}, {x, y + 1}};
    return {{x + 1, y}, {x + 1, y + 1}, {x, y + 1}};
}

// Does the open segment A->B pass through the interior of the convex
// CCW polygon?  Exact.
bool segment_crosses_interior(const std::vector<RatVec2>& poly,
                              const RatVec2& a, const RatVec2& b) {
    Rat tmin = 0, tmax = 1;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        const Rat c0 = cross(p, q, a);
        const Rat c1 = cross(p, q, b);
        if (c0 == 0 && c1 == 0) return false;  // collinear with an edge line
        const Rat d = c1 - c0;
        if (d == 0) {
            if (c0 < 0) return false;
            continue;
        }
        const Rat t = -c0 / d;
        if (d > 0) {
            if (t > tmin) tmin = t;
        } else {
            if (t < tmax) tmax = t;
        }
        if (tmin >= tmax) return false;
    }
    return true;
}

// Candidate cells cut by the chord, by walking strips.
std::vector<CellId> chord_cells(const FieldBuilder& fb) {
    std::vector<CellId> out;
    if (!fb.has_chord) return out;
    const IVec2 A = fb.A, B = fb.B;
    const std::int64_t dy = B.y - A.y;
    const RatVec2 ra{Rat(A.x), Rat(A.y)};
    const RatVec2 rb{Rat(B.x), Rat(B.y)};

    auto test_strip = [&](std::int64_t b, const Rat& x0, const Rat& x1) {
        const std::int64_t alo = rat_floor(std::min(x0, x1)) - 1;
        const std::int64_t ahi = rat_floor(std::max(x0, x1)) + 1;
        for (std::int64_t a = alo; a <= ahi; ++a) {
            const int subs = fb.lattice == LatticeKind::Square ? 1 : 2;
            for (int s = 0; s < subs; ++s) {
                CellId c{a, b, static_cast<std::uint8_t>(s)};
                if (segment_crosses_interior(cell_polygon(fb.lattice, c), ra, rb))
                    out.push_back(c);
            }
        }
    };

    if (dy == 0) {
        if (A.x == B.x) return out;
        // Horizontal chord lies on a lattice line; cuts no cell interior
        // on the square lattice.  On the triangular lattice (basis) it
        // also runs along lattice edges.
        return out;
    }
    const auto [ylo, yhi] = std::minmax(A.y, B.y);
    for (std::int64_t b = ylo; b < yhi; ++b) {
        // x positions where the chord meets y = b and y = b + 1
        const Rat x0 = Rat(A.x) + (Rat(b) - A.y) * Rat(B.x - A.x) / Rat(dy);
        const Rat x1 = Rat(A.x) + (Rat(b + 1) - A.y) * Rat(B.x - A.x) / Rat(dy);
        test_strip(b, x0, x1);
    }
    return out;
}

struct SweepPos {
    bool is_rat = false;
    std::int64_t p6 = 0;  // position in sixths
    Rat pr;               // used when is_rat
    std::int64_t sign = 0;
};

// Emit runs of constant nonzero index for one sweep height.
// `off6` is the centroid offset (in sixths) of the cells tested at
// this height; split cells in `split_x` (sorted) are skipped.
void emit_runs(std::vector<SweepPos>& pos, std::int64_t off6,
               const std::vector<std::int64_t>& split_x,
               std::vector<IndexField::Run>& out) {
    if (pos.empty()) return;
    std::sort(pos.begin(), pos.end(), [](const SweepPos& a, const SweepPos& b) {
        if (!a.is_rat && !b.is_rat) return a.p6 < b.p6;
        const Rat pa = a.is_rat ? a.pr : Rat(a.p6);
        const Rat pb = b.is_rat ? b.pr : Rat(b.p6);
        return pa < pb;
    });

    // suffix sums
    std::vector<std::int64_t> suffix(pos.size() + 1, 0);
    for (std::size_t i = pos.size(); i-- > 0;)
        suffix[i] = suffix[i + 1] + pos[i].sign;
    assert(suffix[0] == 0 && "closed loop: per-row crossings must cancel");

    auto push = [&](std::int64_t cmin, std::int64_t cmax, std::int64_t idx) {
        if (idx == 0 || cmin > cmax) return;
        // carve out split cells
        std::int64_t cur = cmin;
        auto it = std::lower_bound(split_x.begin(), split_x.end(), cmin);
        for (; it != split_x.end() && *it <= cmax; ++it) {
            if (*it > cur) out.push_back({cur, *it, idx});
            cur = *it + 1;
        }
        if (cur <= cmax) out.push_back({cur, cmax + 1, idx});
    };

    for (std::size_t k = 1; k < pos.size(); ++k) {
        const std::int64_t idx = suffix[k];
        // cells c with pos[k-1] < 6c + off6 < pos[k]
        std::int64_t cmin, cmax;
        if (!pos[k - 1].is_rat) {
            cmin = floordiv(pos[k - 1].p6 - off6, 6) + 1;
        } else {
            cmin = rat_floor((pos[k - 1].pr - off6) / 6) + 1;
        }
        if (!pos[k].is_rat) {
            const std::int64_t d = pos[k].p6 - off6;
            cmax = (d % 6 == 0) ? d / 6 - 1 : floordiv(d, 6);
        } else {
            const Rat q = (pos[k].pr - off6) / 6;
            cmax = rat_is_integer(q) ? rat_floor(q) - 1 : rat_floor(q);
        }
        push(cmin, cmax, idx);
    }
}

}  // namespace

IndexField index_field(const ClosedLoop& loop) {
    FieldBuilder fb = make_builder(loop);
    IndexField field;
    field.lattice = fb.lattice;

    // Split cells first (so runs can skip them).
    const RatVec2 ra{Rat(fb.A.x), Rat(fb.A.y)};
    const RatVec2 rb{Rat(fb.B.x), Rat(fb.B.y)};
    std::vector<CellId> cut = chord_cells(fb);
    std::sort(cut.begin(), cut.end());
    cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
    for (const CellId& c : cut) {
        auto poly = cell_polygon(fb.lattice, c);
        ClipResult parts = clip_convex_by_line(poly, ra, rb);
        for (auto* part : {&parts.pos, &parts.neg}) {
            if (part->size() < 3) continue;
            Rat area = shoelace(*part);
            if (area <= 0) continue;
            SplitCell sc;
            sc.cell = c;
            sc.poly = *part;
            sc.area = area;
            sc.index = fb.index_at(polygon_centroid(*part));
            field.split_cells.push_back(std::move(sc));
        }
    }

    // Per-(row, sub) sorted list of split cell x's.
    auto split_xs = [&](std::int64_t y, std::uint8_t sub) {
        std::vector<std::int64_t> xs;
        for (const CellId& c : cut)
            if (c.y == y && c.sub == sub) xs.push_back(c.x);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        return xs;
    };

    const bool square = fb.lattice == LatticeKind::Square;
    const std::int64_t cdy = fb.B.y - fb.A.y;
    for (std::int64_t b = fb.ymin; b < fb.ymax; ++b) {
        const auto& edges = fb.row(b);
        const int nheights = square ? 1 : 2;
        for (int h = 0; h < nheights; ++h) {
            // Sweep height b + f: square f = 1/2; triangular f = 1/3
            // tests up triangles (sub 0), f = 2/3 down triangles (sub 1).
            const std::int64_t off6 = square ? 3 : (h == 0 ? 2 : 4);
            std::vector<SweepPos> pos;
            pos.reserve(edges.size() + 1);
            for (const RowEdge& e : edges) {
                SweepPos p;
                p.sign = e.sign;
                if (e.type == 0) {
                    p.p6 = 6 * static_cast<std::int64_t>(e.a);
                } else {
                    // x = a + 1 - f
                    p.p6 = 6 * static_cast<std::int64_t>(e.a) + (h == 0 ? 4 : 2);
                }
                pos.push_back(p);
            }
            if (fb.has_chord && cdy != 0) {
                const auto [lo, hi] = std::minmax(fb.A.y, fb.B.y);
                if (lo <= b && b < hi) {
                    const Rat f = square ? Rat(1, 2) : (h == 0 ? Rat(1, 3) : Rat(2, 3));
                    const Rat y = Rat(b) + f;
                    SweepPos p;
                    p.is_rat = true;
                    p.pr = 6 * (Rat(fb.A.x) + (y - fb.A.y) * Rat(fb.B.x - fb.A.x) / Rat(cdy));
                    p.sign = cdy > 0 ? 1 : -1;
                    pos.push_back(p);
                }
            }
            if (pos.empty()) continue;
            IndexField::Row row;
            row.y = b;
            row.sub = static_cast<std::uint8_t>(square ? 0 : h);
            emit_runs(pos, off6, split_xs(b, row.sub), row.runs);
            if (!row.runs.empty()) field.rows.push_back(std::move(row));
        }
    }

    field.signed_area = shoelace_int(loop.path.vertices);
    return field;
}

double IndexField::area_scale() const {
    return lattice == LatticeKind::Square ? 1.0 : kSqrt3Half;
}

Rat IndexField::cell_area_basis() const {
    return lattice == LatticeKind::Square ? Rat(1) : Rat(1, 2);
}

std::int64_t IndexField::index_of_cell(const CellId& c) const {
    for (const SplitCell& sc : split_cells)
        if (sc.cell == c)
            throw std::domain_error("index_of_cell: cell is split by the chord");
    auto it = std::lower_bound(rows.begin(), rows.end(), c,
                               [](const Row& r, const CellId& cc) {
                                   return std::pair(r.y, r.sub) < std::pair(cc.y, cc.sub);
                               });
    if (it == rows.end() || it->y != c.y || it->sub != c.sub) return 0;
    for (const Run& run : it->runs)
        if (run.x_begin <= c.x && c.x < run.x_end) return run.index;
    return 0;
}

void IndexField::for_each_cell(
    const std::function<void(const CellId&, std::int64_t)>& f) const {
    for (const Row& row : rows)
        for (const Run& run : row.runs)
            for (std::int64_t x = run.x_begin; x < run.x_end; ++x)
                f(CellId{x, row.y, row.sub}, run.index);
}

TotalWinding total_winding(const IndexField& field) {
    Rat total = 0;
    const Rat cell = field.cell_area_basis();
    for (const auto& row : field.rows)
        for (const auto& run : row.runs)
            total += Rat(std::llabs(run.index)) * (run.x_end - run.x_begin) * cell;
    for (const SplitCell& sc : field.split_cells)
        total += Rat(std::llabs(sc.index)) * sc.area;
    TotalWinding tw;
    tw.value = total.convert_to<double>() * field.area_scale();
    tw.exact_basis = std::move(total);
    return tw;
}

SampledWinding total_winding_sampled(const ClosedLoop& loop, double pitch,
                                     double guard_radius) {
    if (!(pitch > 0)) throw std::invalid_argument("total_winding_sampled: pitch <= 0");
    if (guard_radius < 0) guard_radius = 0.75 * pitch;

    // Euclidean polyline of the closed loop.
    std::vector<Vec2> pts;
    pts.reserve(loop.path.vertices.size() + 1);
    for (const auto& v : loop.path.vertices) pts.push_back(embed(loop.path.lattice, v));
    pts.push_back(pts.front());  // closing chord

    double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
    for (const auto& p : pts) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }

    const double g2 = guard_radius * guard_radius;
    const double x0 = std::floor(minx) - 1.0;
    const double y0 = std::floor(miny) - 1.0;
    const auto nx = static_cast<std::int64_t>(std::ceil((maxx + 1.0 - x0) / pitch));
    const auto ny = static_cast<std::int64_t>(std::ceil((maxy + 1.0 - y0) / pitch));

    // Per-row scanline: the signed crossings of the row line to the
    // right of a sample sum to the winding index, and the guard test
    // only touches samples inside each segment's inflated bounding box.
    SampledWinding sw;
    std::int64_t excluded = 0;
    double sum = 0.0;
    std::vector<std::uint8_t> guard(static_cast<std::size_t>(nx));
    std::vector<std::pair<double, int>> crossings;
    const std::size_t nseg = pts.size() - 1;
    for (std::int64_t iy = 0; iy < ny; ++iy) {
        const double zy = y0 + (static_cast<double>(iy) + 0.5) * pitch;
        sw.samples += nx;
        std::fill(guard.begin(), guard.end(), std::uint8_t{0});
        crossings.clear();
        for (std::size_t i = 0; i < nseg; ++i) {
            const Vec2 a = pts[i], b = pts[i + 1];
            if ((a.y <= zy) != (b.y <= zy)) {
                const double t = (zy - a.y) / (b.y - a.y);
                crossings.emplace_back(a.x + t * (b.x - a.x),
                                       b.y > a.y ? 1 : -1);
            }
            if (zy < std::min(a.y, b.y) - guard_radius ||
                zy > std::max(a.y, b.y) + guard_radius)
                continue;
            const double xlo = std::min(a.x, b.x) - guard_radius;
            const double xhi = std::max(a.x, b.x) + guard_radius;
            const auto ix0 = std::max<std::int64_t>(
                0,
                static_cast<std::int64_t>(std::floor((xlo - x0) / pitch - 0.5)));
            const auto ix1 = std::min<std::int64_t>(
                nx - 1,
                static_cast<std::int64_t>(std::ceil((xhi - x0) / pitch - 0.5)));
            const double vx = b.x - a.x, vy = b.y - a.y;
            const double vv = vx * vx + vy * vy;
            for (std::int64_t ix = ix0; ix <= ix1; ++ix) {
                if (guard[static_cast<std::size_t>(ix)]) continue;
                const double zx = x0 + (static_cast<double>(ix) + 0.5) * pitch;
                const double wx = zx - a.x, wy = zy - a.y;
                double t = vv > 0 ? (wx * vx + wy * vy) / vv : 0.0;
                t = std::clamp(t, 0.0, 1.0);
                const double dx = wx - t * vx, dy = wy - t * vy;
                if (dx * dx + dy * dy <= g2)
                    guard[static_cast<std::size_t>(ix)] = 1;
            }
        }
        std::sort(crossings.begin(), crossings.end(),
                  [](const auto& l, const auto& r) { return l.first > r.first; });
        std::int64_t idx = 0;
        std::size_t c = 0;
        for (std::int64_t ix = nx - 1; ix >= 0; --ix) {
            const double zx = x0 + (static_cast<double>(ix) + 0.5) * pitch;
            while (c < crossings.size() && crossings[c].first > zx)
                idx += crossings[c++].second;
            if (guard[static_cast<std::size_t>(ix)]) {
                ++excluded;
                continue;
            }
            const std::int64_t k = std::llabs(idx);
            sum += static_cast<double>(k);
            sw.max_abs_index = std::max(sw.max_abs_index, k);
        }
    }
    sw.value = sum * pitch * pitch;
    sw.excluded_area = static_cast<double>(excluded) * pitch * pitch;
    return sw;
}

IndexHistogram index_histogram(const IndexField& field) {
    IndexHistogram h;
    h.area_scale = field.area_scale();
    const Rat cell = field.cell_area_basis();
    for (const auto& row : field.rows)
        for (const auto& run : row.runs)
            if (run.index != 0)
                h.area_basis[run.index] += Rat(run.x_end - run.x_begin) * cell;
    for (const SplitCell& sc : field.split_cells)
        if (sc.index != 0) h.area_basis[sc.index] += sc.area;
    return h;
}

double IndexHistogram::area(std::int64_t k) const {
    auto it = area_basis.find(k);
    if (it == area_basis.end()) return 0.0;
    return it->second.convert_to<double>() * area_scale;
}

std::string index_field_to_json(const IndexField& field) {
    nlohmann::json j;
    j["lattice"] = field.lattice == LatticeKind::Square ? "square" : "triangular";
    auto& cells = j["cells"] = nlohmann::json::array();
    field.for_each_cell([&](const CellId& c, std::int64_t idx) {
        if (field.lattice == LatticeKind::Square)
            cells.push_back({c.x, c.y, idx});
        else
            cells.push_back({c.x, c.y, c.sub, idx});
    });
    auto& splits = j["split_cells"] = nlohmann::json::array();
    for (const SplitCell& sc : field.split_cells) {
        nlohmann::json e;
        if (field.lattice == LatticeKind::Square)
            e["cell"] = {sc.cell.x, sc.cell.y};
        else
            e["cell"] = {sc.cell.x, sc.cell.y, sc.cell.sub};
        auto& verts = e["poly"] = nlohmann::json::array();
        for (const auto& p : sc.poly)
            verts.push_back({p.x.str(), p.y.str()});
        e["area"] = sc.area.str();
        e["index"] = sc.index;
        splits.push_back(std::move(e));
    }
    j["signed_area"] = field.signed_area.str();
    return j.dump();
}

}  // namespace wind
