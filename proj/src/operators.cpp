#include "oscat/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace oscat {

GridFunction riesz(const GridFunction& f, ConvPath path) {
    return convolve(KernelId::riesz, f, path);
}

GridFunction beurling(const GridFunction& f, ConvPath path) {
    return convolve(KernelId::beurling_pv, f, path);
}

GridFunction cauchy(const GridFunction& f, ConvPath path) {
    return convolve(KernelId::cauchy, f, path);
}

GridFunction conj_cauchy(const GridFunction& f, ConvPath path) {
    return convolve(KernelId::conj_cauchy, f, path);
}

void require_resolved_oscillation(WaveNumber k, double h, double theta) {
    const double kh = k.modulus() * h;
    if (kh > theta) {
        std::ostringstream msg;
        msg << "unresolved oscillation: |k| h = " << kh
            << " exceeds theta = " << theta
            << " (refine the grid or lower |k|)";
        throw std::domain_error(msg.str());
    }
}

GridFunction modulate(const GridFunction& f, WaveNumber k, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("modulation sign must be +1 or -1");
    GridFunction out = f;
    const GridSpec& g = *f.grid;
    const double kr = k.value.real(), ki = k.value.imag();
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const cplx z = g.center(i, j);
            const double im_kz = kr * z.imag() + ki * z.real();
            out.values[g.index(i, j)] *=
                std::polar(1.0, -2.0 * sign * im_kz);
        }
    return out;
}

std::vector<cplx> kernel_sum_at_points(KernelId id, const GridFunction& f,
                                       const std::vector<cplx>& points) {
    const GridSpec& g = *f.grid;
    const double h2 = g.h * g.h;

    // Row-major gather of nonzero sources fixes the summation order.
    std::vector<cplx> src_pos, src_val;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const cplx v = f.values[g.index(i, j)];
            if (v.real() != 0.0 || v.imag() != 0.0) {
                src_pos.push_back(g.center(i, j));
                src_val.push_back(v);
            }
        }

    std::vector<cplx> out(points.size(), cplx(0, 0));
    const long np = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
    for (long p = 0; p < np; ++p) {
        CompensatedCplxSum acc;
        for (std::size_t s = 0; s < src_val.size(); ++s)
            acc.add(kernel_value(id, points[p] - src_pos[s]) * src_val[s]);
        out[p] = acc.value() * h2;
    }
    return out;
}

std::vector<cplx> snapped_nodes(const BoundaryQuadrature& bq,
                                const GridSpec& grid, int* n_moved) {
    std::vector<cplx> nodes = bq.nodes;
    const double h = grid.h;
    int moved = 0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double gx = (nodes[j].real() - grid.x0) / h - 0.5;
        const double gy = (nodes[j].imag() - grid.y0) / h - 0.5;
        const cplx nearest(grid.x0 + (std::round(gx) + 0.5) * h,
                           grid.y0 + (std::round(gy) + 0.5) * h);
        if (std::abs(nodes[j] - nearest) < 0.1 * h) {
            nodes[j] += bq.tangents[j] * (0.2 * h);
            ++moved;
        }
    }
    if (n_moved) *n_moved = moved;
    return nodes;
}

BoundaryFunction trace_riesz(const GridFunction& f, const BoundaryPtr& bq) {
    if (!bq) throw std::invalid_argument("null boundary quadrature");
    BoundaryFunction out;
    out.boundary = bq;
    out.values = kernel_sum_at_points(KernelId::riesz, f,
                                      snapped_nodes(*bq, *f.grid));
    return out;
}

GridFunction trace_adjoint(const BoundaryFunction& g, const GridPtr& grid) {
    if (!g.boundary) throw std::invalid_argument("null boundary quadrature");
    if (!grid) throw std::invalid_argument("null grid");
    const BoundaryQuadrature& bq = *g.boundary;
    const std::vector<cplx> nodes = snapped_nodes(bq, *grid);

    GridFunction out = make_field(grid);
    const GridSpec& gs = *grid;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < gs.ny; ++j)
        for (int i = 0; i < gs.nx; ++i) {
            const cplx z = gs.center(i, j);
            CompensatedCplxSum acc;
            for (std::size_t q = 0; q < nodes.size(); ++q)
                acc.add(g.values[q] * bq.weights[q] /
                        std::abs(z - nodes[q]));
            out.values[gs.index(i, j)] = acc.value();
        }
    return out;
}

}  // namespace oscat
