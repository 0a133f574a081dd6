#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace oscat {

using cplx = std::complex<double>;
using Point = std::array<double, 2>;

/// Simple polygon with counterclockwise vertex order. Build through
/// build_domain(), which validates and normalizes orientation.
struct DomainSpec {
    std::vector<Point> vertices;

    double area() const;       // shoelace, positive once normalized
    double perimeter() const;
    Point centroid() const;
    std::array<double, 4> bounding_box() const;  // xmin, ymin, xmax, ymax

    // Strict interior test (winding number). Points on an edge count as
    // outside, so the mask rule is deterministic.
    bool contains(double x, double y) const;
};

DomainSpec build_domain(std::vector<Point> vertices);

// "square" (unit square) or "lshape" (L-shaped hexagon, area 3).
DomainSpec builtin_domain(const std::string& name);

/// Uniform grid over the margin-scaled bounding box of a domain.
/// Cells are square; mask marks cells whose center lies inside the polygon.
struct GridSpec {
    double x0 = 0.0, y0 = 0.0;  // lower-left corner of the box
    double h = 1.0;             // spacing
    int nx = 0, ny = 0;
    double margin = 1.0;
    std::vector<std::uint8_t> mask;

    int cells() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
    cplx center(int i, int j) const {
        return {x0 + (i + 0.5) * h, y0 + (j + 0.5) * h};
    }
    bool masked(int i, int j) const { return mask[index(i, j)] != 0; }
    double masked_area() const;
    std::vector<int> masked_indices() const;  // row-major order
    bool same_lattice(const GridSpec& other) const;
};

using GridPtr = std::shared_ptr<const GridSpec>;

/// Rasterize a domain onto an n-wide grid over its margin-scaled bounding
/// box. n counts cells across the wider box side; cells are square.
GridPtr rasterize(const DomainSpec& domain, int n, double margin);

/// Composite midpoint nodes on the polygon boundary, traversed
/// counterclockwise. Weights are arc-length, tangents unit complex.
struct BoundaryQuadrature {
    std::vector<cplx> nodes;
    std::vector<double> weights;
    std::vector<cplx> tangents;

    std::size_t size() const { return nodes.size(); }
    double total_length() const;
    double max_spacing() const;
};

using BoundaryPtr = std::shared_ptr<const BoundaryQuadrature>;

BoundaryPtr boundary_quadrature(const DomainSpec& domain,
                                double nodes_per_unit_length);

/// Arc length of the curve inside the open ball B(center, r), estimated by
/// node-weight counting. Resolution is one node spacing at each arc end.
double sampled_arclength_in_ball(const BoundaryQuadrature& bq, cplx center,
                                 double r);

/// Sampled supremum of arclength(curve ∩ B(x,r)) / r over a nested,
/// deterministic family of centers (on and off the curve) and radii.
/// A finite lower estimate of the curve's linear growth bound.
double ball_growth_constant(const BoundaryQuadrature& bq, int sample_centers,
                            int sample_radii);

}  // namespace oscat
