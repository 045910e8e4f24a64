#include "wind/brownian.hpp"

#include "wind/rng.hpp"
#include "wind/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wind {

namespace {

constexpr std::uint64_t kRefineTag = 0xB4A9C3D25E17F08BULL;
constexpr std::uint64_t kWernerTag = 0x6C8E944BF1A2D37DULL;
constexpr std::uint64_t kDeepTag = 0x71D67FFFEDA60000ULL;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double dist2_point_seg(Vec2 z, Vec2 a, Vec2 b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0)
        t = std::clamp(((z.x - a.x) * dx + (z.y - a.y) * dy) / len2, 0.0, 1.0);
    const double px = a.x + t * dx - z.x, py = a.y + t * dy - z.y;
    return px * px + py * py;
}

// Midpoint of the conditional Brownian bridge between a and b over
// duration dt, deterministic per (path seed, segment, tree node).
Vec2 bridge_midpoint(Vec2 a, Vec2 b, double dt, std::uint64_t path_seed,
                     std::int64_t seg, std::uint32_t node) {
    RngStream r(path_seed ^ kRefineTag,
                (static_cast<std::uint64_t>(seg) << 14) | node);
    double g0, g1;
    r.gaussian_pair(g0, g1);
    const double s = 0.5 * std::sqrt(dt);
    return {0.5 * (a.x + b.x) + s * g0, 0.5 * (a.y + b.y) + s * g1};
}

double subtended(Vec2 a, Vec2 b, Vec2 z) {
    const double ax = a.x - z.x, ay = a.y - z.y;
    const double bx = b.x - z.x, by = b.y - z.y;
    const double cr = ax * by - ay * bx;
    const double dt = ax * bx + ay * by;
    if (cr == 0.0 && dt <= 0.0) throw ResampleSignal{};
    return std::atan2(cr, dt);
}

}  // namespace

BMPath gen_bm(std::int64_t m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("gen_bm: m >= 1 required");
    BMPath p;
    p.m = m;
    p.kind = BMKind::Motion;
    p.seed = seed;
    p.samples.resize(static_cast<std::size_t>(m) + 1);
    p.samples[0] = {0.0, 0.0};
    RngStream r(seed, 0);
    const double s = std::sqrt(1.0 / static_cast<double>(m));
    for (std::int64_t k = 1; k <= m; ++k) {
        double g0, g1;
        r.gaussian_pair(g0, g1);
        p.samples[static_cast<std::size_t>(k)] = {
            p.samples[static_cast<std::size_t>(k - 1)].x + s * g0,
            p.samples[static_cast<std::size_t>(k - 1)].y + s * g1};
    }
    return p;
}

BMPath gen_bridge(std::int64_t m, std::uint64_t seed) {
    BMPath p = gen_bm(m, seed);
    p.kind = BMKind::Bridge;
    const Vec2 end = p.samples.back();
    for (std::int64_t k = 0; k <= m; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(m);
        auto& v = p.samples[static_cast<std::size_t>(k)];
        v.x -= t * end.x;
        v.y -= t * end.y;
    }
    p.samples.back() = {0.0, 0.0};  // exact
    return p;
}

WindingResult bm_winding_angle(const BMPath& path, Vec2 z,
                               int max_refine_depth) {
    WindingResult res;
    const double dt0 = 1.0 / static_cast<double>(path.m);

    // Explicit stack per segment: (a, b, dt, node, depth).
    struct Node {
        Vec2 a, b;
        double dt;
        std::uint32_t node;
        int depth;
    };
    std::vector<Node> stack;
    for (std::size_t s = 0; s + 1 < path.samples.size(); ++s) {
        stack.push_back({path.samples[s], path.samples[s + 1], dt0, 0u, 0});
        while (!stack.empty()) {
            const Node nd = stack.back();
            stack.pop_back();
            const double dx = nd.b.x - nd.a.x, dy = nd.b.y - nd.a.y;
            const double len2 = dx * dx + dy * dy;
            if (nd.depth < max_refine_depth &&
                dist2_point_seg(z, nd.a, nd.b) < len2) {
                const Vec2 mid = bridge_midpoint(
                    nd.a, nd.b, nd.dt, path.seed,
                    static_cast<std::int64_t>(s), nd.node);
                ++res.refinements;
                stack.push_back({mid, nd.b, nd.dt * 0.5, 2 * nd.node + 2,
                                 nd.depth + 1});
                stack.push_back({nd.a, mid, nd.dt * 0.5, 2 * nd.node + 1,
                                 nd.depth + 1});
            } else {
                res.angle += subtended(nd.a, nd.b, z);
            }
        }
    }
    return res;
}

ClockValue z_epsilon(const BMPath& path, Vec2 z, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("z_epsilon: epsilon > 0");
    const double e2 = epsilon * epsilon;
    double sum = 0.0;
    for (std::int64_t k = 0; k < path.m; ++k) {
        const Vec2& p = path.samples[static_cast<std::size_t>(k)];
        const double d2 = (p.x - z.x) * (p.x - z.x) + (p.y - z.y) * (p.y - z.y);
        if (d2 >= e2) sum += 1.0 / d2;
    }
    ClockValue c;
    c.z = z;
    c.epsilon = epsilon;
    c.value = std::sqrt(sum / static_cast<double>(path.m));
    return c;
}

bool sausage_contains(const BMPath& path, double epsilon, Vec2 z,
                      int max_refine_depth) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("sausage_contains: epsilon > 0");
    const double dt0 = 1.0 / static_cast<double>(path.m);
    const double e2 = epsilon * epsilon;

    struct Node {
        Vec2 a, b;
        double dt;
        std::uint32_t node;
        int depth;
    };
    std::vector<Node> stack;
    for (std::size_t s = 0; s + 1 < path.samples.size(); ++s) {
        stack.push_back({path.samples[s], path.samples[s + 1], dt0, 0u, 0});
        while (!stack.empty()) {
            const Node nd = stack.back();
            stack.pop_back();
            const double d2 = dist2_point_seg(z, nd.a, nd.b);
            if (d2 <= e2) return true;
            // A bridge excursion beyond 3 sqrt(dt) of its chord is
            // negligible (exp(-18)); otherwise resolve by subdivision.
            const double margin = epsilon + 3.0 * std::sqrt(nd.dt);
            if (nd.depth < max_refine_depth && d2 < margin * margin) {
                const Vec2 mid = bridge_midpoint(
                    nd.a, nd.b, nd.dt, path.seed,
                    static_cast<std::int64_t>(s), nd.node);
                stack.push_back({mid, nd.b, nd.dt * 0.5, 2 * nd.node + 2,
                                 nd.depth + 1});
                stack.push_back({nd.a, mid, nd.dt * 0.5, 2 * nd.node + 1,
                                 nd.depth + 1});
            }
        }
    }
    return false;
}

std::optional<double> hitting_time(const BMPath& path, Vec2 z, double r) {
    const double r2 = r * r;
    for (std::int64_t k = 0; k <= path.m; ++k) {
        const Vec2& p = path.samples[static_cast<std::size_t>(k)];
        const double d2 = (p.x - z.x) * (p.x - z.x) + (p.y - z.y) * (p.y - z.y);
        if (d2 <= r2)
            return static_cast<double>(k) / static_cast<double>(path.m);
    }
    return std::nullopt;
}

namespace {

// Ray-crossing winding index for a fixed closed polyline, with a y-bin
// acceleration structure so each query touches only segments near the
// query's horizontal level.
class PolylineIndex {
public:
    explicit PolylineIndex(std::span<const Vec2> pts) : pts_(pts) {
        double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
        for (const Vec2& p : pts_) {
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        const auto nseg = static_cast<std::int64_t>(pts_.size());  // with wrap
        nbins_ = std::max<std::int64_t>(64, nseg / 8);
        y0_ = ymin;
        h_ = (ymax - ymin) / static_cast<double>(nbins_);
        if (h_ <= 0.0) h_ = 1.0;
        bins_.resize(static_cast<std::size_t>(nbins_));
        for (std::int64_t s = 0; s < nseg; ++s) {
            const Vec2& a = pts_[static_cast<std::size_t>(s)];
            const Vec2& b = pts_[static_cast<std::size_t>((s + 1) % nseg)];
            const auto lo = std::max<std::int64_t>(0, bin_of(std::min(a.y, b.y)));
            const auto hi = std::min(nbins_ - 1, bin_of(std::max(a.y, b.y)));
            for (std::int64_t i = lo; i <= hi; ++i)
                bins_[static_cast<std::size_t>(i)].push_back(
                    static_cast<std::int32_t>(s));
        }
    }

    std::int64_t index_at(Vec2 z) const {
        const std::int64_t b = bin_of(z.y);
        if (b < 0 || b >= nbins_) return 0;
        std::int64_t w = 0;
        const auto nseg = static_cast<std::int64_t>(pts_.size());
        for (std::int32_t s : bins_[static_cast<std::size_t>(b)]) {
            const Vec2& p = pts_[static_cast<std::size_t>(s)];
            const Vec2& q = pts_[static_cast<std::size_t>((s + 1) % nseg)];
            if ((p.y > z.y) == (q.y > z.y)) continue;
            const double xint =
                p.x + (z.y - p.y) * (q.x - p.x) / (q.y - p.y);
            if (xint > z.x) w += q.y > p.y ? 1 : -1;
        }
        return w;
    }

private:
    std::int64_t bin_of(double y) const {
        const auto b = static_cast<std::int64_t>(std::floor((y - y0_) / h_));
        return std::clamp<std::int64_t>(b, -1, nbins_);
    }

    std::span<const Vec2> pts_;
    std::int64_t nbins_ = 0;
    double y0_ = 0.0, h_ = 1.0;
    std::vector<std::vector<std::int32_t>> bins_;
};

// High-winding bins live exponentially close to the curve, far below
// the sampling resolution, so near-path queries refine the triggered
// segments by bridge midpoints keyed by a hash chain (unbounded depth,
// unlike the heap indexing of bm_winding_angle).  Refinement bottoms
// out when double precision stops resolving the midpoint displacement.
std::uint64_t chain_child(std::uint64_t key, int which) {
    return RngStream::mix64(key ^ (which == 0 ? 0xC2B2AE3D27D4EB4FULL
                                              : 0x165667B19E3779F9ULL));
}

double deep_seg_angle(Vec2 a0, Vec2 b0, double dt0, std::uint64_t root_key,
                      Vec2 z, int max_depth) {
    struct Node {
        Vec2 a, b;
        double dt;
        std::uint64_t key;
        int depth;
    };
    double angle = 0.0;
    std::vector<Node> stack{{a0, b0, dt0, root_key, 0}};
    while (!stack.empty()) {
        const Node nd = stack.back();
        stack.pop_back();
        const double dx = nd.b.x - nd.a.x, dy = nd.b.y - nd.a.y;
        const double len2 = dx * dx + dy * dy;
        // Trigger with 3x slack over both the chord length and the
        // bridge deviation scale: a child bridge can still swing toward
        // z from well outside the chord's own length, and clipping that
        // tail loses a constant fraction of the winding at every scale.
        const double reach = 3.0 * (std::sqrt(len2) + std::sqrt(nd.dt));
        if (nd.depth < max_depth &&
            dist2_point_seg(z, nd.a, nd.b) < reach * reach) {
            double g0, g1;
            RngStream(nd.key, 0).gaussian_pair(g0, g1);
            const double s = 0.5 * std::sqrt(nd.dt);
            const Vec2 mid{0.5 * (nd.a.x + nd.b.x) + s * g0,
                           0.5 * (nd.a.y + nd.b.y) + s * g1};
            // Underflow floor: once the midpoint collapses onto an
            // endpoint the subdivision is no longer productive.
            if ((mid.x == nd.a.x && mid.y == nd.a.y) ||
                (mid.x == nd.b.x && mid.y == nd.b.y)) {
                angle += subtended(nd.a, nd.b, z);
                continue;
            }
            stack.push_back({mid, nd.b, nd.dt * 0.5, chain_child(nd.key, 1),
                             nd.depth + 1});
            stack.push_back({nd.a, mid, nd.dt * 0.5, chain_child(nd.key, 0),
                             nd.depth + 1});
        } else {
            angle += subtended(nd.a, nd.b, z);
        }
    }
    return angle;
}

// Uniform grid over inflated segment bounding boxes; a query cell's
// list is a superset of every segment whose refinement trigger region
// (distance < own length) contains the query point.
class SegGrid {
public:
    // dt0 feeds the same 3 * (length + sqrt(dt)) trigger reach used by
    // deep_seg_angle; the grid must cover it.
    SegGrid(std::span<const Vec2> pts, std::int64_t nseg, double dt0)
        : dt0_(dt0) {
        double maxreach = 0.0;
        segs_ = nseg;
        x0_ = pts[0].x;
        y0_ = pts[0].y;
        double x1 = x0_, y1 = y0_;
        for (std::int64_t s = 0; s <= nseg; ++s) {
            const Vec2& p = pts[static_cast<std::size_t>(s)];
            x0_ = std::min(x0_, p.x); x1 = std::max(x1, p.x);
            y0_ = std::min(y0_, p.y); y1 = std::max(y1, p.y);
        }
        for (std::int64_t s = 0; s < nseg; ++s)
            maxreach = std::max(maxreach, reach_of(pts, s));
        h_ = std::max(maxreach, 1e-12);
        x0_ -= h_; y0_ -= h_;
        nx_ = static_cast<std::int64_t>((x1 - x0_) / h_) + 2;
        ny_ = static_cast<std::int64_t>((y1 - y0_) / h_) + 2;
        cells_.resize(static_cast<std::size_t>(nx_ * ny_));
        for (std::int64_t s = 0; s < nseg; ++s) {
            const Vec2& a = pts[static_cast<std::size_t>(s)];
            const Vec2& b = pts[static_cast<std::size_t>(s + 1)];
            const double len = reach_of(pts, s);
            const std::int64_t ix0 = clampx(std::min(a.x, b.x) - len);
            const std::int64_t ix1 = clampx(std::max(a.x, b.x) + len);
            const std::int64_t iy0 = clampy(std::min(a.y, b.y) - len);
            const std::int64_t iy1 = clampy(std::max(a.y, b.y) + len);
            for (std::int64_t iy = iy0; iy <= iy1; ++iy)
                for (std::int64_t ix = ix0; ix <= ix1; ++ix)
                    cells_[static_cast<std::size_t>(iy * nx_ + ix)].push_back(
                        static_cast<std::int32_t>(s));
        }
    }

    const std::vector<std::int32_t>& near(Vec2 z) const {
        static const std::vector<std::int32_t> kEmpty;
        const std::int64_t ix = static_cast<std::int64_t>((z.x - x0_) / h_);
        const std::int64_t iy = static_cast<std::int64_t>((z.y - y0_) / h_);
        if (ix < 0 || ix >= nx_ || iy < 0 || iy >= ny_) return kEmpty;
        return cells_[static_cast<std::size_t>(iy * nx_ + ix)];
    }

    double reach_of(std::span<const Vec2> pts, std::int64_t s) const {
        const Vec2& a = pts[static_cast<std::size_t>(s)];
        const Vec2& b = pts[static_cast<std::size_t>(s + 1)];
        return 3.0 * (std::hypot(b.x - a.x, b.y - a.y) + std::sqrt(dt0_));
    }

private:
    std::int64_t clampx(double x) const {
        return std::clamp<std::int64_t>(
            static_cast<std::int64_t>((x - x0_) / h_), 0, nx_ - 1);
    }
    std::int64_t clampy(double y) const {
        return std::clamp<std::int64_t>(
            static_cast<std::int64_t>((y - y0_) / h_), 0, ny_ - 1);
    }
    std::int64_t segs_ = 0, nx_ = 0, ny_ = 0;
    double x0_ = 0, y0_ = 0, h_ = 1, dt0_ = 0;
    std::vector<std::vector<std::int32_t>> cells_;
};

}  // namespace

std::vector<WernerEstimate> werner_area_from_paths(
    std::span<const BMPath> paths, std::span<const int> k_values,
    std::int64_t z_samples_per_path, std::uint64_t seed, int refine_depth) {
    if (k_values.empty()) return {};
    const int kmin = *std::min_element(k_values.begin(), k_values.end());
    const int kmax = *std::max_element(k_values.begin(), k_values.end());
    if (kmin < 1) throw std::invalid_argument("werner: k >= 1 required");

    std::vector<Welford> acc(static_cast<std::size_t>(kmax - kmin + 1));
    const auto g =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                      std::sqrt(static_cast<double>(
                                          z_samples_per_path))));

    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
        const BMPath& path = paths[pi];
        const std::span<const Vec2> pts(path.samples);
        // Drop a duplicated closing vertex; PolylineIndex wraps itself.
        const bool dup = pts.size() > 1 &&
                         pts.front().x == pts.back().x &&
                         pts.front().y == pts.back().y;
        const std::span<const Vec2> ring = dup ? pts.first(pts.size() - 1) : pts;
        PolylineIndex idx(ring);
        // Real path segments (consecutive sample pairs; excludes the
        // closing chord) are the only refinable ones.
        const auto nreal = static_cast<std::int64_t>(pts.size()) - 1;
        const double dt0 = 1.0 / static_cast<double>(path.m);
        std::optional<SegGrid> grid;
        if (refine_depth > 0) grid.emplace(pts, nreal, dt0);

        // Enclosing disc.
        double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
        for (const Vec2& p : pts) {
            xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
        }
        const Vec2 c{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
        double r2max = 0.0;
        for (const Vec2& p : pts)
            r2max = std::max(r2max,
                             (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y));
        const double R = std::sqrt(r2max) + 0.05;
        const double cell = 2.0 * R / static_cast<double>(g);

        std::vector<std::int64_t> hist(acc.size(), 0);
        RngStream zr(seed ^ kWernerTag, pi);
        const Vec2 endp = pts.back();
        const Vec2 startp = pts.front();
        const bool chord = !dup;
        for (std::int64_t i = 0; i < g; ++i)
            for (std::int64_t j = 0; j < g; ++j) {
                const Vec2 z{c.x - R + (static_cast<double>(i) + zr.uniform01()) * cell,
                             c.y - R + (static_cast<double>(j) + zr.uniform01()) * cell};
                try {
                    const std::int64_t w = idx.index_at(z);
                    // Bridge-refined angle corrections for segments whose
                    // trigger region contains z.
                    double corr = 0.0;
                    bool near = false;
                    if (grid) {
                        for (std::int32_t s : grid->near(z)) {
                            const Vec2& a = pts[static_cast<std::size_t>(s)];
                            const Vec2& b = pts[static_cast<std::size_t>(s) + 1];
                            const double reach =
                                3.0 * (std::hypot(b.x - a.x, b.y - a.y) +
                                       std::sqrt(dt0));
                            if (dist2_point_seg(z, a, b) >= reach * reach)
                                continue;
                            near = true;
                            const std::uint64_t key = RngStream::mix64(
                                path.seed ^ kDeepTag ^
                                (static_cast<std::uint64_t>(s) *
                                 RngStream::kGamma));
                            corr += deep_seg_angle(a, b, dt0, key, z,
                                                   refine_depth) -
                                    subtended(a, b, z);
                        }
                    }
                    if (!near) {
                        if (w < kmin || w > kmax + 1) continue;
                        std::int64_t bin = w;
                        if (chord) {
                            // Delta Theta of the open path = 2 pi w - alpha
                            // with alpha the chord's subtended angle; the
                            // floor drops by one exactly when alpha > 0.
                            const double alpha = subtended(endp, startp, z);
                            if (alpha > 0.0) --bin;
                        }
                        if (bin >= kmin && bin <= kmax)
                            ++hist[static_cast<std::size_t>(bin - kmin)];
                        continue;
                    }
                    double theta = kTwoPi * static_cast<double>(w) + corr;
                    if (chord) theta -= subtended(endp, startp, z);
                    const auto bin = static_cast<std::int64_t>(
                        std::floor(theta / kTwoPi));
                    if (bin >= kmin && bin <= kmax)
                        ++hist[static_cast<std::size_t>(bin - kmin)];
                } catch (const ResampleSignal&) {
                    // z collided with the sampled curve: boundary, skip.
                }
            }
        const double box = (2.0 * R) * (2.0 * R);
        for (std::size_t b = 0; b < acc.size(); ++b) {
            const auto k = static_cast<double>(kmin + static_cast<int>(b));
            acc[b].add(k * k * box * static_cast<double>(hist[b]) /
                       static_cast<double>(g * g));
        }
    }

    std::vector<WernerEstimate> out;
    for (int k : k_values) {
        const Welford& w = acc[static_cast<std::size_t>(k - kmin)];
        WernerEstimate e;
        e.k = k;
        e.mean = w.mean;
        e.ci_lo = w.mean - w.ci_halfwidth();
        e.ci_hi = w.mean + w.ci_halfwidth();
        e.paths = w.count;
        out.push_back(e);
    }
    return out;
}

std::vector<WernerEstimate> werner_area_estimate(
    std::span<const int> k_values, std::int64_t paths, std::int64_t m,
    std::uint64_t seed, std::int64_t z_samples_per_path, int refine_depth) {
    if (k_values.empty()) return {};
    const int kmin = *std::min_element(k_values.begin(), k_values.end());
    const int kmax = *std::max_element(k_values.begin(), k_values.end());
    if (kmin < 1) throw std::invalid_argument("werner: k >= 1 required");
    std::vector<Welford> acc(static_cast<std::size_t>(kmax - kmin + 1));
    for (std::int64_t i = 0; i < paths; ++i) {
        const std::uint64_t ps =
            RngStream::mix64(seed ^ (static_cast<std::uint64_t>(i) *
                                         RngStream::kGamma +
                                     0xD1B54A32D192ED03ULL));
        BMPath p = gen_bm(m, ps);
        const BMPath one[] = {std::move(p)};
        auto part = werner_area_from_paths(
            std::span<const BMPath>(one, 1), k_values, z_samples_per_path,
            seed + static_cast<std::uint64_t>(i), refine_depth);
        for (const auto& e : part)
            acc[static_cast<std::size_t>(e.k - kmin)].add(e.mean);
    }
    std::vector<WernerEstimate> out;
    for (int k : k_values) {
        const Welford& w = acc[static_cast<std::size_t>(k - kmin)];
        out.push_back({k, w.mean, w.mean - w.ci_halfwidth(),
                       w.mean + w.ci_halfwidth(), w.count});
    }
    return out;
}

}  // namespace wind
