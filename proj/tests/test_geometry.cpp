#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "oscat/geometry.hpp"

using namespace oscat;

namespace {

const std::vector<Point> kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

}  // namespace

TEST_CASE("build_domain validates input polygons") {
    CHECK_THROWS_AS(build_domain({{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_domain({{0, 0}, {1, 0}, {1, 0}, {0, 1}}),
                    std::invalid_argument);
    // collinear: zero area
    CHECK_THROWS_AS(build_domain({{0, 0}, {1, 1}, {2, 2}}),
                    std::invalid_argument);
    // bowtie: non-adjacent edges cross
    CHECK_THROWS_AS(build_domain({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                    std::invalid_argument);
}

TEST_CASE("unit square: area, perimeter, centroid") {
    DomainSpec d = build_domain(kSquare);
    CHECK(d.area() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.perimeter() == doctest::Approx(4.0).epsilon(1e-15));
    const Point c = d.centroid();
    CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("clockwise input is normalized to counterclockwise") {
    DomainSpec d = build_domain({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(d.area() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(oracle::shoelace_area(d.vertices) > 0.0);
    CHECK(d.contains(0.5, 0.5));
}

TEST_CASE("contains: interior, exterior, and on-edge points") {
    DomainSpec d = build_domain(kSquare);
    CHECK(d.contains(0.25, 0.75));
    CHECK_FALSE(d.contains(1.25, 0.5));
    CHECK_FALSE(d.contains(-0.01, 0.5));
    // edge and vertex points count as outside
    CHECK_FALSE(d.contains(0.0, 0.5));
    CHECK_FALSE(d.contains(0.5, 1.0));
    CHECK_FALSE(d.contains(1.0, 1.0));
}

TEST_CASE("builtin domains") {
    DomainSpec sq = builtin_domain("square");
    CHECK(sq.area() == doctest::Approx(1.0));
    DomainSpec l = builtin_domain("lshape");
    CHECK(l.area() == doctest::Approx(3.0));
    CHECK(l.contains(0.5, 0.5));
    CHECK_FALSE(l.contains(1.5, 1.5));  // the cut corner
    CHECK_THROWS_AS(builtin_domain("pentagon"), std::invalid_argument);
}

TEST_CASE("rasterize preconditions") {
    DomainSpec d = build_domain(kSquare);
    CHECK_THROWS_AS(rasterize(d, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rasterize(d, 64, 0.5), std::invalid_argument);
}

TEST_CASE("rasterize: box shape and masked area") {
    DomainSpec d = build_domain(kSquare);
    GridPtr g = rasterize(d, 64, 1.0);
    CHECK(g->nx == 64);
    CHECK(g->ny == 64);
    CHECK(g->h == doctest::Approx(1.0 / 64).epsilon(1e-15));
    const double a = g->masked_area();
    CHECK(a >= 0.95);
    CHECK(a <= 1.05);

    GridPtr g4 = rasterize(d, 64, 4.0);
    CHECK(g4->h == doctest::Approx(4.0 / 64).epsilon(1e-15));
    // box is centered on the domain
    CHECK(g4->x0 == doctest::Approx(0.5 - 2.0));
    CHECK(g4->y0 == doctest::Approx(0.5 - 2.0));
}

TEST_CASE("rasterized area converges to the polygon area") {
    DomainSpec l = builtin_domain("lshape");
    double prev = -1.0;
    for (int n : {32, 64, 128, 256}) {
        GridPtr g = rasterize(l, n, 1.0);
        const double err = std::abs(g->masked_area() - 3.0);
        // error <= C h with a generous C; h = 2/n here
        CHECK(err <= 8.0 * g->h);
        if (prev >= 0.0) CHECK(err <= prev + 1e-12);
        prev = err;
    }
    GridPtr g = rasterize(l, 128, 1.0);
    CHECK(std::abs(g->masked_area() - 3.0) / 3.0 <= 0.02);
}

TEST_CASE("boundary quadrature: weights, tangents, closure") {
    DomainSpec d = build_domain(kSquare);
    BoundaryPtr bq = boundary_quadrature(d, 100.0);
    CHECK(bq->total_length() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(bq->max_spacing() <= 1.0 / 100.0 + 1e-12);

    cplx closure(0, 0), area2i(0, 0);
    for (std::size_t j = 0; j < bq->size(); ++j) {
        closure += bq->weights[j] * bq->tangents[j];
        area2i += std::conj(bq->nodes[j]) * bq->tangents[j] * bq->weights[j];
    }
    CHECK(std::abs(closure) <= 1e-10);
    // counterclockwise Stokes area identity: contour integral of
    // conj(z) dz = 2i |Omega|
    CHECK(std::abs(area2i - cplx(0, 2.0)) <= 1e-3);
}

TEST_CASE("boundary closure holds on the lshape too") {
    DomainSpec l = builtin_domain("lshape");
    BoundaryPtr bq = boundary_quadrature(l, 37.0);
    cplx closure(0, 0), area2i(0, 0);
    for (std::size_t j = 0; j < bq->size(); ++j) {
        closure += bq->weights[j] * bq->tangents[j];
        area2i += std::conj(bq->nodes[j]) * bq->tangents[j] * bq->weights[j];
    }
    CHECK(std::abs(closure) <= 1e-10);
    CHECK(std::abs(area2i - cplx(0, 6.0)) <= 6e-3);
}

TEST_CASE("ball growth: straight segment gives ratio 2") {
    // long thin rectangle: away from the short ends a ball sees a chord
    // of length 2r on each long side
    DomainSpec strip = build_domain({{0, 0}, {10, 0}, {10, 1e-3}, {0, 1e-3}});
    BoundaryPtr bq = boundary_quadrature(strip, 400.0);
    const double arc = sampled_arclength_in_ball(*bq, cplx(5.0, 0.0), 1.0);
    // both long sides pass through the ball: 2r each
    CHECK(arc / 1.0 == doctest::Approx(4.0).epsilon(0.02));

    // one-sided probe: ball centered off the strip
    const double arc_off =
        sampled_arclength_in_ball(*bq, cplx(5.0, 0.5), 1.0);
    const double chord = 2.0 * std::sqrt(1.0 - 0.25);
    CHECK(arc_off == doctest::Approx(2.0 * chord).epsilon(0.02));
}

TEST_CASE("ball growth: square corner sees one r per incident edge") {
    DomainSpec d = build_domain(kSquare);
    BoundaryPtr bq = boundary_quadrature(d, 1000.0);
    const double r = 0.25;
    const double arc = sampled_arclength_in_ball(*bq, cplx(0, 0), r);
    CHECK(arc / r == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("ball growth constant of the square is moderate and monotone") {
    DomainSpec d = build_domain(kSquare);
    BoundaryPtr bq = boundary_quadrature(d, 300.0);
    const double m_small = ball_growth_constant(*bq, 8, 6);
    const double m_large = ball_growth_constant(*bq, 32, 12);
    CHECK(m_large >= m_small - 1e-12);
    CHECK(m_large >= 2.0 - 0.05);
    CHECK(m_large <= 8.0);
}
