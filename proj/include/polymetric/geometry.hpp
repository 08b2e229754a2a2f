#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polymetric/rootfind.hpp"

namespace polymetric {

using Point = std::complex<double>;

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

/// The rectangle [-k,k] x [-1,1].
struct Rectangle {
    double k;
    explicit Rectangle(double half_width) : k(half_width) {
        if (!(k > 0.0)) throw std::domain_error("Rectangle: half-width must be positive");
    }
    std::array<Point, 4> vertices() const {
        return {Point(-k, -1.0), Point(k, -1.0), Point(k, 1.0), Point(-k, 1.0)};
    }
};

/// Counterclockwise, strictly convex polygon.
struct ConvexPolygon {
    std::vector<Point> vertices;

    explicit ConvexPolygon(std::vector<Point> verts) : vertices(std::move(verts)) {
        const std::size_t n = vertices.size();
        if (n < 3) throw std::domain_error("ConvexPolygon: need at least 3 vertices");
        for (std::size_t i = 0; i < n; ++i) {
            const Point e0 = vertices[(i + 1) % n] - vertices[i];
            const Point e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            if (std::abs(e0) == 0.0)
                throw std::domain_error("ConvexPolygon: repeated vertex");
            if (!(cross(e0, e1) > 1e-12))
                throw std::domain_error("ConvexPolygon: vertices must turn strictly counterclockwise");
        }
    }

    explicit ConvexPolygon(const Rectangle& r)
        : ConvexPolygon([&r] {
              const auto v = r.vertices();
              return std::vector<Point>(v.begin(), v.end());
          }()) {}
};

struct BoundaryContact {
    double distance = 0.0;
    std::vector<Point> contacts;
};

struct PlanarGraph {
    std::vector<Point> nodes;
    std::vector<std::pair<int, int>> edges;
};

namespace detail {

// Signed inward distance of p from the line of edge (a,b); positive inside
// a counterclockwise polygon.
inline double inward_line_distance(Point a, Point b, Point p) {
    return cross(b - a, p - a) / std::abs(b - a);
}

inline double min_inward_distance(const Point* v, std::size_t n, Point p) {
    double least = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        least = std::min(least, inward_line_distance(v[i], v[(i + 1) % n], p));
    return least;
}

inline void require_interior(const Point* v, std::size_t n, Point p, const char* who) {
    if (!(min_inward_distance(v, n, p) > 1e-12))
        throw std::domain_error(std::string(who) + ": point not strictly inside the domain");
}

// Nearest point of segment [a,b] to p.
inline Point closest_on_segment(Point a, Point b, Point p) {
    const Point d = b - a;
    const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
    return a + t * d;
}

inline BoundaryContact boundary_contact_impl(const Point* v, std::size_t n, Point p) {
    require_interior(v, n, p, "boundary_distance");
    std::array<Point, 16> feet_small;
    std::vector<Point> feet_big;
    Point* feet = feet_small.data();
    if (n > feet_small.size()) {
        feet_big.resize(n);
        feet = feet_big.data();
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        feet[i] = closest_on_segment(v[i], v[(i + 1) % n], p);
        best = std::min(best, std::abs(p - feet[i]));
    }
    BoundaryContact out;
    out.distance = best;
    const double tol = 1e-9 * (1.0 + best);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(p - feet[i]) - best > tol) continue;
        bool dup = false;
        for (const Point& q : out.contacts)
            if (std::abs(q - feet[i]) < 1e-12 * (1.0 + best)) { dup = true; break; }
        if (!dup) out.contacts.push_back(feet[i]);
    }
    return out;
}

struct EdgePathMin {
    double value;
    Point z;
};

// Minimum of |x-z| + |z-y| over z on segment [a,b], by reflecting x across
// the edge line.  Interior x,y lie on the same side, so the straight segment
// from the reflection to y crosses the line; if the crossing leaves the
// segment, convexity puts the constrained minimum at the clamped point.
inline EdgePathMin edge_path_min(Point a, Point b, Point x, Point y) {
    const Point d = b - a;
    const double len = std::abs(d);
    const Point n = Point(-d.imag(), d.real()) / len;  // inward unit normal
    const double hx = dot(n, x - a);
    const double hy = dot(n, y - a);
    const Point xr = x - 2.0 * hx * n;
    Point z;
    if (hx + hy > 0.0) {
        const double u = hx / (hx + hy);
        z = xr + u * (y - xr);
    } else {
        z = closest_on_segment(a, b, y);  // both points essentially on the line
    }
    const double t = dot(z - a, d) / (len * len);
    if (t >= 0.0 && t <= 1.0 && hx + hy > 0.0)
        return EdgePathMin{std::abs(xr - y), z};
    z = a + std::clamp(t, 0.0, 1.0) * d;
    return EdgePathMin{std::abs(x - z) + std::abs(z - y), z};
}

}  // namespace detail

/// Distance from an interior point to the boundary, with every boundary
/// point attaining it (up to the tie tolerance 1e-9*(1+distance)).
inline BoundaryContact boundary_distance(const ConvexPolygon& P, Point p) {
    return detail::boundary_contact_impl(P.vertices.data(), P.vertices.size(), p);
}

inline BoundaryContact boundary_distance(const Rectangle& R, Point p) {
    const auto v = R.vertices();
    return detail::boundary_contact_impl(v.data(), v.size(), p);
}

struct SMetricResult {
    double s = 0.0;   // triangular ratio metric value, in [0,1]
    Point z_min;      // boundary point attaining the infimum
    int edge = -1;    // index of the attaining edge
};

namespace detail {

inline SMetricResult s_metric_impl(const Point* v, std::size_t n, Point x, Point y) {
    require_interior(v, n, x, "s_metric");
    require_interior(v, n, y, "s_metric");
    if (x == y) {
        const BoundaryContact bc = boundary_contact_impl(v, n, x);
        return SMetricResult{0.0, bc.contacts.front(), -1};
    }
    // evaluation must be exactly symmetric in (x, y)
    if (std::make_pair(y.real(), y.imag()) < std::make_pair(x.real(), x.imag()))
        std::swap(x, y);
    double best = std::numeric_limits<double>::infinity();
    Point zbest;
    int ebest = -1;
    for (std::size_t i = 0; i < n; ++i) {
        const EdgePathMin em = edge_path_min(v[i], v[(i + 1) % n], x, y);
        if (em.value < best) {
            best = em.value;
            zbest = em.z;
            ebest = static_cast<int>(i);
        }
    }
    return SMetricResult{std::abs(x - y) / best, zbest, ebest};
}

}  // namespace detail

/// Triangular ratio metric s(x,y) = |x-y| / inf_z (|x-z| + |z-y|), the
/// infimum over boundary points, together with the minimizing point.
inline SMetricResult s_metric(const ConvexPolygon& P, Point x, Point y) {
    return detail::s_metric_impl(P.vertices.data(), P.vertices.size(), x, y);
}

inline SMetricResult s_metric(const Rectangle& R, Point x, Point y) {
    const auto v = R.vertices();
    return detail::s_metric_impl(v.data(), v.size(), x, y);
}

namespace detail {

// Brute-force verification path for the s-metric: uniform boundary samples,
// then golden-section refinement inside each edge around its best sample.
inline double s_metric_oracle_impl(const Point* v, std::size_t n, Point x, Point y, int samples) {
    require_interior(v, n, x, "s_metric_oracle");
    require_interior(v, n, y, "s_metric_oracle");
    if (x == y) return 0.0;
    double perimeter = 0.0;
    for (std::size_t i = 0; i < n; ++i) perimeter += std::abs(v[(i + 1) % n] - v[i]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i], b = v[(i + 1) % n];
        const double len = std::abs(b - a);
        const int m = std::max(2, static_cast<int>(std::lround(samples * len / perimeter)));
        auto path = [&](double t) {
            const Point z = a + t * (b - a);
            return std::abs(x - z) + std::abs(z - y);
        };
        double edge_best = std::numeric_limits<double>::infinity();
        int at = 0;
        for (int j = 0; j <= m; ++j) {
            const double val = path(double(j) / m);
            if (val < edge_best) {
                edge_best = val;
                at = j;
            }
        }
        const double lo = double(std::max(0, at - 1)) / m;
        const double hi = double(std::min(m, at + 1)) / m;
        const MaxResult r = golden_min(path, lo, hi, 1e-13);
        best = std::min(best, std::min(edge_best, r.value));
    }
    return std::abs(x - y) / best;
}

}  // namespace detail

inline double s_metric_oracle(const ConvexPolygon& P, Point x, Point y, int samples) {
    return detail::s_metric_oracle_impl(P.vertices.data(), P.vertices.size(), x, y, samples);
}

inline double s_metric_oracle(const Rectangle& R, Point x, Point y, int samples) {
    const auto v = R.vertices();
    return detail::s_metric_oracle_impl(v.data(), v.size(), x, y, samples);
}

/// Grid of nearest-side labels for the paths |x-z| + |z-y|, plus the
/// trapezoid-orientation predicate sign(Re x^2 - Im x^2 - (k^2-1)).
/// Sides are indexed 0 bottom, 1 right, 2 top, 3 left.
struct SideRegionGrid {
    int grid = 0;
    double k = 0.0;
    Point x;
    int orientation = 0;           // -1: lower/upper regions are trapezoids
    std::vector<int> labels;       // row-major, grid*grid cell centers
    Point cell_center(int ix, int iy) const {
        return Point(-k + (ix + 0.5) * 2.0 * k / grid, -1.0 + (iy + 0.5) * 2.0 / grid);
    }
};

inline SideRegionGrid rect_nearest_side_regions(const Rectangle& R, Point x, int grid) {
    const auto v = R.vertices();
    detail::require_interior(v.data(), v.size(), x, "rect_nearest_side_regions");
    if (grid < 2) throw std::domain_error("rect_nearest_side_regions: grid too small");
    SideRegionGrid out;
    out.grid = grid;
    out.k = R.k;
    out.x = x;
    const double pred = x.real() * x.real() - x.imag() * x.imag() - (R.k * R.k - 1.0);
    out.orientation = pred < 0.0 ? -1 : (pred > 0.0 ? 1 : 0);
    out.labels.resize(static_cast<std::size_t>(grid) * grid);
    for (int iy = 0; iy < grid; ++iy)
        for (int ix = 0; ix < grid; ++ix) {
            const Point y = out.cell_center(ix, iy);
            double best = std::numeric_limits<double>::infinity();
            int label = -1;
            for (int e = 0; e < 4; ++e) {
                const auto em = detail::edge_path_min(v[e], v[(e + 1) % 4], x, y);
                if (em.value < best) {
                    best = em.value;
                    label = e;
                }
            }
            out.labels[static_cast<std::size_t>(iy) * grid + ix] = label;
        }
    return out;
}

/// One straight separator of the nearest-side decomposition for a fixed x:
/// the locus where the optimal paths via side_a and side_b tie.
struct SeparatorSegment {
    Point from;
    Point to;
    int side_a;
    int side_b;
};

/// The separators of the four nearest-side regions: one segment from each
/// rectangle corner to a triple point, plus the segment joining the two
/// triple points (the parallel side shared by the two trapezoids).  Each
/// separator is the perpendicular bisector of two reflections of x, so the
/// triple points are circumcenters of reflection triples.
inline std::vector<SeparatorSegment> region_separators(const Rectangle& R, Point x) {
    const auto v = R.vertices();
    detail::require_interior(v.data(), v.size(), x, "region_separators");
    std::array<Point, 4> refl;
    for (int e = 0; e < 4; ++e) {
        const Point d = v[(e + 1) % 4] - v[e];
        const Point n = Point(-d.imag(), d.real()) / std::abs(d);
        refl[e] = x - 2.0 * dot(n, x - v[e]) * n;
    }
    auto circumcenter = [](Point a, Point b, Point c) {
        const Point r0 = 2.0 * (b - a), r1 = 2.0 * (c - b);
        const double b0 = std::norm(b) - std::norm(a);
        const double b1 = std::norm(c) - std::norm(b);
        const double det = cross(r0, r1);
        return Point((b0 * r1.imag() - b1 * r0.imag()) / det,
                     (b1 * r0.real() - b0 * r1.real()) / det);
    };
    const double pred = x.real() * x.real() - x.imag() * x.imag() - (R.k * R.k - 1.0);
    Point p1, p2;
    int mid_a, mid_b;
    if (pred <= 0.0) {  // lower/upper regions are trapezoids
        p1 = circumcenter(refl[0], refl[1], refl[2]);
        p2 = circumcenter(refl[0], refl[3], refl[2]);
        mid_a = 0;
        mid_b = 2;
    } else {
        p1 = circumcenter(refl[3], refl[0], refl[1]);
        p2 = circumcenter(refl[3], refl[2], refl[1]);
        mid_a = 1;
        mid_b = 3;
    }
    const Point apex_of_corner[4] = {p1, pred <= 0.0 ? p1 : p2, p2, pred <= 0.0 ? p2 : p1};
    std::vector<SeparatorSegment> out;
    for (int j = 0; j < 4; ++j)
        out.push_back(SeparatorSegment{v[(j + 1) % 4], apex_of_corner[j], j, (j + 1) % 4});
    if (std::abs(p1 - p2) > 1e-12)
        out.push_back(SeparatorSegment{p1, p2, mid_a, mid_b});
    return out;
}

/// The five segments decomposing a rectangle by nearest side: the central
/// segment [-(k-1), k-1] plus the four corner bisectors.  For k = 1 the
/// central segment degenerates to the origin.
inline PlanarGraph sigma_segments(const Rectangle& R) {
    if (!(R.k >= 1.0)) throw std::domain_error("sigma_segments: requires k >= 1 (normalize first)");
    PlanarGraph g;
    const double a = R.k - 1.0;
    if (a > 0.0) {
        g.nodes = {Point(-a, 0.0), Point(a, 0.0), Point(-R.k, -1.0), Point(-R.k, 1.0),
                   Point(R.k, -1.0), Point(R.k, 1.0)};
        g.edges = {{0, 1}, {2, 0}, {3, 0}, {4, 1}, {5, 1}};
    } else {
        g.nodes = {Point(0.0, 0.0), Point(-R.k, -1.0), Point(-R.k, 1.0), Point(R.k, -1.0),
                   Point(R.k, 1.0)};
        g.edges = {{1, 0}, {2, 0}, {3, 0}, {4, 0}};
    }
    return g;
}

namespace detail {

struct MedialNode {
    Point p;
    double dist;
    std::set<int> active;  // edges whose distance ties the minimum
};

inline std::vector<MedialNode> medial_nodes(const ConvexPolygon& P) {
    const auto& v = P.vertices;
    const int n = static_cast<int>(v.size());
    auto sdist = [&](int e, Point q) {
        return inward_line_distance(v[e], v[(e + 1) % n], q);
    };
    std::vector<MedialNode> nodes;
    auto add_node = [&](Point q) {
        const double dmin = min_inward_distance(v.data(), v.size(), q);
        if (dmin < -1e-12) return;
        MedialNode node{q, std::max(dmin, 0.0), {}};
        const double tol = 1e-9 * (1.0 + node.dist);
        for (int e = 0; e < n; ++e)
            if (sdist(e, q) - dmin <= tol) node.active.insert(e);
        if (node.active.size() < 2) return;
        for (auto& existing : nodes)
            if (std::abs(existing.p - q) < 1e-9 * (1.0 + node.dist)) {
                existing.active.insert(node.active.begin(), node.active.end());
                return;
            }
        nodes.push_back(std::move(node));
    };
    for (int i = 0; i < n; ++i) add_node(v[i]);  // corner leaves, distance 0
    // triple-equidistant candidates: s_i = s_j = s_l solved as a 2x2 system
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = j + 1; l < n; ++l) {
                auto normal = [&](int e) {
                    const Point d = v[(e + 1) % n] - v[e];
                    return Point(-d.imag(), d.real()) / std::abs(d);
                };
                const Point mi = normal(i), mj = normal(j), ml = normal(l);
                const double ci = -dot(mi, v[i]), cj = -dot(mj, v[j]), cl = -dot(ml, v[l]);
                const Point r0 = mi - mj, r1 = mj - ml;
                const double det = cross(r0, r1);
                if (std::abs(det) < 1e-12) continue;
                const double b0 = cj - ci, b1 = cl - cj;
                const double qx = (b0 * r1.imag() - b1 * r0.imag()) / det;
                const double qy = (b1 * r0.real() - b0 * r1.real()) / det;
                add_node(Point(qx, qy));
            }
    return nodes;
}

inline PlanarGraph medial_graph_impl(const ConvexPolygon& P, bool prune_boundary) {
    const auto& v = P.vertices;
    const int n = static_cast<int>(v.size());
    std::vector<MedialNode> nodes = medial_nodes(P);
    PlanarGraph g;
    std::vector<int> index(nodes.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (prune_boundary && nodes[i].dist <= 1e-12) continue;
        index[i] = static_cast<int>(g.nodes.size());
        g.nodes.push_back(nodes[i].p);
    }
    auto tied = [&](Point q, int e) {
        const double dmin = min_inward_distance(v.data(), v.size(), q);
        return inward_line_distance(v[e], v[(e + 1) % n], q) - dmin <= 1e-9 * (1.0 + dmin);
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<std::size_t> on_pair;
            for (std::size_t a = 0; a < nodes.size(); ++a)
                if (nodes[a].active.count(i) && nodes[a].active.count(j)) on_pair.push_back(a);
            if (on_pair.size() < 2) continue;
            auto normal = [&](int e) {
                const Point d = v[(e + 1) % n] - v[e];
                return Point(-d.imag(), d.real()) / std::abs(d);
            };
            Point dir = normal(i) - normal(j);
            dir = Point(-dir.imag(), dir.real());
            std::sort(on_pair.begin(), on_pair.end(), [&](std::size_t a, std::size_t b) {
                return dot(dir, nodes[a].p) < dot(dir, nodes[b].p);
            });
            for (std::size_t a = 0; a + 1 < on_pair.size(); ++a) {
                const std::size_t u = on_pair[a], w = on_pair[a + 1];
                const Point mid = 0.5 * (nodes[u].p + nodes[w].p);
                if (std::abs(nodes[u].p - nodes[w].p) < 1e-12) continue;
                if (!tied(mid, i) || !tied(mid, j)) continue;
                if (index[u] < 0 || index[w] < 0) continue;
                g.edges.emplace_back(index[u], index[w]);
            }
        }
    return g;
}

}  // namespace detail

/// Full medial axis of a strictly convex polygon (bisector tree including
/// the corner leaves).
inline PlanarGraph medial_axis(const ConvexPolygon& P) {
    return detail::medial_graph_impl(P, false);
}

/// Gr(P): the medial axis with boundary nodes and edges meeting the boundary
/// removed.  For an inscribed-circle polygon this is the single center node.
inline PlanarGraph medial_graph(const ConvexPolygon& P) {
    return detail::medial_graph_impl(P, true);
}

/// Circle of radius r in the s-metric, traced along `directions` rays from x.
struct SCircle {
    Point center;
    double radius = 0.0;
    std::vector<Point> points;
    std::vector<int> edge_label;        // attaining side per emitted point
    std::vector<int> omitted_rays;      // rays where r was unattainable
    std::vector<int> nonmonotone_rays;  // rays failing the 64-sample monotone pre-scan
};

inline SCircle s_circle(const Rectangle& R, Point x, double r, int directions) {
    const auto v = R.vertices();
    detail::require_interior(v.data(), v.size(), x, "s_circle");
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("s_circle: radius must lie in (0,1)");
    if (directions < 3) throw std::domain_error("s_circle: need at least 3 directions");
    SCircle out;
    out.center = x;
    out.radius = r;
    for (int j = 0; j < directions; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / directions;
        const Point dir(std::cos(theta), std::sin(theta));
        // exit parameter of the ray within the rectangle
        double t_exit = std::numeric_limits<double>::infinity();
        if (dir.real() > 0.0) t_exit = std::min(t_exit, (R.k - x.real()) / dir.real());
        if (dir.real() < 0.0) t_exit = std::min(t_exit, (-R.k - x.real()) / dir.real());
        if (dir.imag() > 0.0) t_exit = std::min(t_exit, (1.0 - x.imag()) / dir.imag());
        if (dir.imag() < 0.0) t_exit = std::min(t_exit, (-1.0 - x.imag()) / dir.imag());
        const double t_max = t_exit * (1.0 - 1e-9);
        auto s_val = [&](double t) { return detail::s_metric_impl(v.data(), 4, x, x + t * dir).s; };
        double prev = 0.0;
        bool monotone = true;
        double t_lo = 0.0, t_hi = -1.0;
        for (int i = 1; i <= 64; ++i) {
            const double t = t_max * i / 64.0;
            const double s = s_val(t);
            if (s < prev - 1e-12) monotone = false;
            if (t_hi < 0.0 && s >= r) {
                t_lo = t_max * (i - 1) / 64.0;
                t_hi = t;
            }
            prev = s;
        }
        if (!monotone) out.nonmonotone_rays.push_back(j);
        if (t_hi < 0.0) {
            out.omitted_rays.push_back(j);
            continue;
        }
        for (int it = 0; it < 128; ++it) {
            const double mid = 0.5 * (t_lo + t_hi);
            const double s = s_val(mid);
            if (std::abs(s - r) <= 1e-10 || t_hi - t_lo < 1e-15 * (1.0 + t_max)) {
                t_lo = t_hi = mid;
                break;
            }
            (s < r ? t_lo : t_hi) = mid;
        }
        const double t = 0.5 * (t_lo + t_hi);
        const auto res = detail::s_metric_impl(v.data(), 4, x, x + t * dir);
        out.points.push_back(x + t * dir);
        out.edge_label.push_back(res.edge);
    }
    return out;
}

}  // namespace polymetric
