#include "oscat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscat {

namespace {

double cross(Point o, Point a, Point b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double signed_area(const std::vector<Point>& vs) {
    double twice = 0.0;
    const std::size_t m = vs.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vs[i];
        const Point& b = vs[(i + 1) % m];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * twice;
}

double diameter_bound(const std::vector<Point>& vs) {
    double xmin = vs[0][0], xmax = xmin, ymin = vs[0][1], ymax = ymin;
    for (const Point& v : vs) {
        xmin = std::min(xmin, v[0]);
        xmax = std::max(xmax, v[0]);
        ymin = std::min(ymin, v[1]);
        ymax = std::max(ymax, v[1]);
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

int orientation_sign(Point a, Point b, Point c, double eps) {
    const double v = cross(a, b, c);
    if (v > eps) return 1;
    if (v < -eps) return -1;
    return 0;
}

bool on_segment_closed(Point a, Point b, Point p) {
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

// Proper or improper intersection of closed segments [a,b] and [c,d].
bool segments_intersect(Point a, Point b, Point c, Point d, double eps) {
    const int o1 = orientation_sign(a, b, c, eps);
    const int o2 = orientation_sign(a, b, d, eps);
    const int o3 = orientation_sign(c, d, a, eps);
    const int o4 = orientation_sign(c, d, b, eps);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment_closed(a, b, c)) return true;
    if (o2 == 0 && on_segment_closed(a, b, d)) return true;
    if (o3 == 0 && on_segment_closed(c, d, a)) return true;
    if (o4 == 0 && on_segment_closed(c, d, b)) return true;
    return false;
}

}  // namespace

DomainSpec build_domain(std::vector<Point> vertices) {
    const std::size_t m = vertices.size();
    if (m < 3)
        throw std::invalid_argument("domain polygon needs at least 3 vertices");

    const double diam = diameter_bound(vertices);
    if (!(diam > 0.0))
        throw std::invalid_argument("domain polygon is degenerate (zero extent)");
    const double eps = 1e-12 * diam;

    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % m];
        if (std::hypot(b[0] - a[0], b[1] - a[1]) <= eps)
            throw std::invalid_argument(
                "domain polygon has a repeated consecutive vertex");
    }

    double area = signed_area(vertices);
    if (std::abs(area) <= 1e-12 * diam * diam)
        throw std::invalid_argument("domain polygon has zero area");
    if (area < 0.0) {
        std::reverse(vertices.begin(), vertices.end());
        area = -area;
    }

    // Simplicity: no two non-adjacent edges may touch.
    const double seps = 1e-12 * diam * diam;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const bool adjacent =
                (j == i + 1) || (i == 0 && j == m - 1);
            if (adjacent) continue;
            if (segments_intersect(vertices[i], vertices[(i + 1) % m],
                                   vertices[j], vertices[(j + 1) % m], seps))
                throw std::invalid_argument(
                    "domain polygon is self-intersecting");
        }
    }

    DomainSpec d;
    d.vertices = std::move(vertices);
    return d;
}

DomainSpec builtin_domain(const std::string& name) {
    if (name == "square")
        return build_domain({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    if (name == "lshape")
        return build_domain({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    throw std::invalid_argument("unknown builtin domain: " + name);
}

double DomainSpec::area() const { return signed_area(vertices); }

double DomainSpec::perimeter() const {
    double len = 0.0;
    const std::size_t m = vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % m];
        len += std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    return len;
}

Point DomainSpec::centroid() const {
    // Area-weighted polygon centroid.
    double cx = 0.0, cy = 0.0;
    const std::size_t m = vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % m];
        const double w = a[0] * b[1] - b[0] * a[1];
        cx += (a[0] + b[0]) * w;
        cy += (a[1] + b[1]) * w;
    }
    const double A = area();
    return {cx / (6.0 * A), cy / (6.0 * A)};
}

std::array<double, 4> DomainSpec::bounding_box() const {
    double xmin = vertices[0][0], xmax = xmin;
    double ymin = vertices[0][1], ymax = ymin;
    for (const Point& v : vertices) {
        xmin = std::min(xmin, v[0]);
        xmax = std::max(xmax, v[0]);
        ymin = std::min(ymin, v[1]);
        ymax = std::max(ymax, v[1]);
    }
    return {xmin, ymin, xmax, ymax};
}

bool DomainSpec::contains(double x, double y) const {
    const std::size_t m = vertices.size();

    // Boundary points resolve as outside.
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % m];
        const double c =
            (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
        if (c == 0.0 && on_segment_closed(a, b, {x, y})) return false;
    }

    int winding = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % m];
        if (a[1] <= y) {
            if (b[1] > y && cross(a, b, {x, y}) > 0.0) ++winding;
        } else {
            if (b[1] <= y && cross(a, b, {x, y}) < 0.0) --winding;
        }
    }
    return winding != 0;
}

double GridSpec::masked_area() const {
    long count = 0;
    for (std::uint8_t m : mask) count += (m != 0);
    return static_cast<double>(count) * h * h;
}

std::vector<int> GridSpec::masked_indices() const {
    std::vector<int> idx;
    for (int c = 0; c < cells(); ++c)
        if (mask[c] != 0) idx.push_back(c);
    return idx;
}

bool GridSpec::same_lattice(const GridSpec& other) const {
    return x0 == other.x0 && y0 == other.y0 && h == other.h &&
           nx == other.nx && ny == other.ny;
}

GridPtr rasterize(const DomainSpec& domain, int n, double margin) {
    if (n < 8) throw std::invalid_argument("grid resolution must be >= 8");
    if (!(margin >= 1.0))
        throw std::invalid_argument("grid margin must be >= 1");

    const auto bb = domain.bounding_box();
    const double w = bb[2] - bb[0];
    const double ht = bb[3] - bb[1];
    const double side = margin * std::max(w, ht);
    const double cx = 0.5 * (bb[0] + bb[2]);
    const double cy = 0.5 * (bb[1] + bb[3]);

    auto g = std::make_shared<GridSpec>();
    g->h = side / n;
    g->nx = n;
    g->ny = n;
    g->margin = margin;
    g->x0 = cx - 0.5 * side;
    g->y0 = cy - 0.5 * side;
    g->mask.assign(static_cast<std::size_t>(n) * n, 0);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const cplx c = g->center(i, j);
            g->mask[g->index(i, j)] =
                domain.contains(c.real(), c.imag()) ? 1 : 0;
        }
    }
    return g;
}

BoundaryPtr boundary_quadrature(const DomainSpec& domain,
                                double nodes_per_unit_length) {
    if (!(nodes_per_unit_length > 0.0))
        throw std::invalid_argument("boundary node density must be positive");

    auto bq = std::make_shared<BoundaryQuadrature>();
    const std::size_t m = domain.vertices.size();
    for (std::size_t e = 0; e < m; ++e) {
        const Point& a = domain.vertices[e];
        const Point& b = domain.vertices[(e + 1) % m];
        const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
        const int ne = std::max(
            1, static_cast<int>(std::ceil(len * nodes_per_unit_length)));
        const double dl = len / ne;
        const cplx dir((b[0] - a[0]) / len, (b[1] - a[1]) / len);
        const cplx start(a[0], a[1]);
        for (int q = 0; q < ne; ++q) {
            bq->nodes.push_back(start + dir * ((q + 0.5) * dl));
            bq->weights.push_back(dl);
            bq->tangents.push_back(dir);
        }
    }
    return bq;
}

double BoundaryQuadrature::total_length() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double BoundaryQuadrature::max_spacing() const {
    double s = 0.0;
    for (double w : weights) s = std::max(s, w);
    return s;
}

double sampled_arclength_in_ball(const BoundaryQuadrature& bq, cplx center,
                                 double r) {
    double s = 0.0;
    for (std::size_t j = 0; j < bq.nodes.size(); ++j)
        if (std::abs(bq.nodes[j] - center) < r) s += bq.weights[j];
    return s;
}

namespace {

// Van der Corput radical inverse in base 2: a nested low-discrepancy
// sequence, so enlarging the sample count only appends sample points.
double van_der_corput(unsigned long long i) {
    double v = 0.0, base = 0.5;
    for (++i; i > 0; i >>= 1, base *= 0.5)
        if (i & 1ULL) v += base;
    return v;
}

}  // namespace

double ball_growth_constant(const BoundaryQuadrature& bq, int sample_centers,
                            int sample_radii) {
    if (sample_centers <= 0 || sample_radii <= 0)
        throw std::invalid_argument("sample counts must be positive");
    const std::size_t n = bq.nodes.size();
    if (n == 0) throw std::invalid_argument("empty boundary quadrature");

    double xmin = bq.nodes[0].real(), xmax = xmin;
    double ymin = bq.nodes[0].imag(), ymax = ymin;
    for (const cplx& p : bq.nodes) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double diam = std::hypot(xmax - xmin, ymax - ymin);

    // Radii resolve at least several node spacings, else the node-count
    // arclength estimate would dominate the ratio.
    const double r_min = std::max(8.0 * bq.max_spacing(), 1e-9 * diam);
    const double r_max = std::max(diam, 2.0 * r_min);

    // Centers on the curve plus normal offsets for off-curve coverage.
    static constexpr double kOffset[4] = {0.0, 0.07, -0.07, 0.25};

    double best = 0.0;
    for (int c = 0; c < sample_centers; ++c) {
        const std::size_t idx = std::min(
            n - 1, static_cast<std::size_t>(van_der_corput(c) * n));
        const cplx normal = cplx(0, 1) * bq.tangents[idx];
        const cplx center = bq.nodes[idx] + normal * (kOffset[c % 4] * diam);
        for (int q = 0; q < sample_radii; ++q) {
            const double r =
                r_min * std::pow(r_max / r_min, van_der_corput(q));
            best = std::max(best,
                            sampled_arclength_in_ball(bq, center, r) / r);
        }
    }
    return best;
}

}  // namespace oscat
