#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "oscat/geometry.hpp"

namespace oscat {

/// Complex scattering parameter. Strictly nonzero where division by the
/// wave number occurs; construction itself allows any value.
struct WaveNumber {
    cplx value{0.0, 0.0};
    WaveNumber() = default;
    WaveNumber(cplx v) : value(v) {}
    WaveNumber(double re, double im) : value(re, im) {}
    double modulus() const { return std::abs(value); }
};

/// Samples of a function at grid cell centers, row-major. mask_restricted
/// records that values vanish outside the grid mask.
struct GridFunction {
    GridPtr grid;
    std::vector<cplx> values;
    bool mask_restricted = false;
};

/// Samples of a function at boundary quadrature nodes.
struct BoundaryFunction {
    BoundaryPtr boundary;
    std::vector<cplx> values;
};

GridFunction make_field(GridPtr grid, cplx fill = cplx(0, 0));

/// Sample f at cell centers. When masked is true, cells outside the mask
/// are set to zero and the result is flagged mask_restricted.
GridFunction sample_field(GridPtr grid, const std::function<cplx(cplx)>& f,
                          bool masked);

/// Zero the values outside the grid mask.
GridFunction restrict_to_mask(const GridFunction& f);

void require_same_grid(const GridFunction& a, const GridFunction& b);

GridFunction add(const GridFunction& a, const GridFunction& b);
GridFunction sub(const GridFunction& a, const GridFunction& b);
GridFunction scale(const GridFunction& a, cplx c);

double max_abs(const GridFunction& f);

/// Neumaier-compensated accumulator: fixed-order sums reproduce bitwise.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct CompensatedCplxSum {
    CompensatedSum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

}  // namespace oscat
