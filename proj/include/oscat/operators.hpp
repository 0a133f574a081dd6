#pragma once

#include "oscat/kernel.hpp"

namespace oscat {

/// Fractional integral with kernel 1/|z-w|.
GridFunction riesz(const GridFunction& f, ConvPath path = ConvPath::fft);

/// Principal-value integral with kernel 1/(z-w)^2.
GridFunction beurling(const GridFunction& f, ConvPath path = ConvPath::fft);

/// Solid integral with kernel 1/(z-w).
GridFunction cauchy(const GridFunction& f, ConvPath path = ConvPath::fft);

/// Solid integral with kernel 1/conj(z-w).
GridFunction conj_cauchy(const GridFunction& f, ConvPath path = ConvPath::fft);

/// Throws when |k| h exceeds theta: the grid cannot resolve the
/// oscillation of the modulating exponential.
void require_resolved_oscillation(WaveNumber k, double h, double theta);

/// Pointwise product with exp(sign * (-k z + conj(k z))), a unimodular
/// factor evaluated as polar(1, -2 sign Im(k z)).
GridFunction modulate(const GridFunction& f, WaveNumber k, int sign);

/// sum_w K(p - z_w) f(w) h^2 at arbitrary points, compensated, row-major
/// term order, parallel over points.
std::vector<cplx> kernel_sum_at_points(KernelId id, const GridFunction& f,
                                       const std::vector<cplx>& points);

/// Boundary nodes with any node closer than h/10 to a cell center pushed
/// h/5 along its tangent. Keeps point-evaluation kernels bounded on the
/// shared lattice. n_moved (optional) receives the perturbation count.
std::vector<cplx> snapped_nodes(const BoundaryQuadrature& bq,
                                const GridSpec& grid, int* n_moved = nullptr);

/// Restriction of the Riesz potential of f to the boundary nodes.
BoundaryFunction trace_riesz(const GridFunction& f, const BoundaryPtr& bq);

/// Adjoint of the trace against the arc-length measure:
/// out(z_c) = sum_j g(p_j) w_j / |z_c - p_j|.
GridFunction trace_adjoint(const BoundaryFunction& g, const GridPtr& grid);

}  // namespace oscat
