#include "oscat/scattering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oscat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonzero_k(WaveNumber k) {
    if (k.value == cplx(0, 0))
        throw std::domain_error(
            "wave number k = 0: the assembled identity divides by k");
}

void require_mask_restricted(const GridFunction& u) {
    if (!u.mask_restricted)
        throw std::invalid_argument(
            "input field must be mask-restricted (supported in the domain)");
}

GridFunction masked_modulated_input(const GridFunction& u, WaveNumber k) {
    return restrict_to_mask(modulate(u, k, -1));
}

}  // namespace

GridFunction inner_transform(const GridFunction& u, WaveNumber k,
                             const ScatterOptions& opts) {
    require_mask_restricted(u);
    require_resolved_oscillation(k, u.grid->h, opts.theta);
    return conj_cauchy(masked_modulated_input(u, k), opts.path);
}

GridFunction scattering_direct(const GridFunction& u, WaveNumber k,
                               const ScatterOptions& opts) {
    const GridFunction g = inner_transform(u, k, opts);
    const GridFunction outer = restrict_to_mask(modulate(g, k, +1));
    return scale(cauchy(outer, opts.path), 1.0 / (4.0 * kPi * kPi));
}

GridFunction pv_area_term(const GridFunction& u, WaveNumber k,
                          const ScatterOptions& opts) {
    const GridFunction g = inner_transform(u, k, opts);
    const GridFunction outer = restrict_to_mask(modulate(g, k, +1));
    return scale(beurling(outer, opts.path), cplx(0, -2.0));
}

GridFunction potential_term(const GridFunction& u,
                            const ScatterOptions& opts) {
    return scale(cauchy(restrict_to_mask(u), opts.path),
                 cplx(0, -2.0 * kPi));
}

GridFunction boundary_term(const GridFunction& u, WaveNumber k,
                           const BoundaryPtr& bq,
                           const ScatterOptions& opts) {
    if (!bq) throw std::invalid_argument("null boundary quadrature");
    require_resolved_oscillation(k, u.grid->h, opts.theta);

    const std::vector<cplx> nodes = snapped_nodes(*bq, *u.grid);
    const std::vector<cplx> g_at_nodes = kernel_sum_at_points(
        KernelId::conj_cauchy, masked_modulated_input(u, k), nodes);

    // Per-node contour coefficients exp(-k p + conj(k p)) G(p) conj(tau) w.
    const double kr = k.value.real(), ki = k.value.imag();
    std::vector<cplx> coeff(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double im_kp = kr * nodes[j].imag() + ki * nodes[j].real();
        coeff[j] = std::polar(1.0, -2.0 * im_kp) * g_at_nodes[j] *
                   std::conj(bq->tangents[j]) * bq->weights[j];
    }

    GridFunction out = make_field(u.grid);
    const GridSpec& g = *u.grid;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const cplx z = g.center(i, j);
            CompensatedCplxSum acc;
            for (std::size_t q = 0; q < coeff.size(); ++q)
                acc.add(coeff[q] / (z - nodes[q]));
            out.values[g.index(i, j)] = -acc.value();
        }
    return out;
}

Decomposition decompose(const GridFunction& u, WaveNumber k,
                        const BoundaryPtr& bq, const ScatterOptions& opts) {
    require_nonzero_k(k);
    Decomposition d;
    d.k = k;
    d.pv_area = pv_area_term(u, k, opts);
    d.potential = potential_term(u, opts);
    d.boundary = boundary_term(u, k, bq, opts);
    const cplx denom = cplx(0, -8.0 * kPi * kPi) * k.value;
    d.assembled =
        scale(add(add(d.pv_area, d.potential), d.boundary), 1.0 / denom);
    return d;
}

double identity_residual(const GridFunction& u, WaveNumber k,
                         const BoundaryPtr& bq, const ScatterOptions& opts) {
    require_nonzero_k(k);
    const GridFunction direct = scattering_direct(u, k, opts);
    const Decomposition dec = decompose(u, k, bq, opts);

    const GridSpec& g = *u.grid;
    CompensatedSum num2, den2;
    for (int c = 0; c < g.cells(); ++c) {
        if (!g.mask[c]) continue;
        num2.add(std::norm(direct.values[c] - dec.assembled.values[c]));
        den2.add(std::norm(direct.values[c]));
    }
    const double num = std::sqrt(num2.value());
    const double den = std::sqrt(den2.value());
    if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
    return num / den;
}

IdentityReport verify_identity(const DomainSpec& domain,
                               const std::function<cplx(cplx)>& u_fn,
                               WaveNumber k, const std::vector<int>& sizes,
                               const StudyOptions& opts) {
    if (sizes.empty()) throw std::invalid_argument("empty size ladder");
    IdentityReport report;
    report.sizes = sizes;
    ScatterOptions sopts;
    sopts.theta = opts.theta;
    sopts.path = opts.path;
    for (int n : sizes) {
        const GridPtr grid = rasterize(domain, n, opts.margin);
        const GridFunction u = sample_field(grid, u_fn, true);
        const BoundaryPtr bq = boundary_quadrature(
            domain, opts.boundary_nodes_per_h / grid->h);
        report.residuals.push_back(identity_residual(u, k, bq, sopts));
    }
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const double ratio = report.residuals[l] / report.residuals[l + 1];
        const double step =
            std::log2(static_cast<double>(sizes[l + 1]) / sizes[l]);
        report.orders.push_back(std::log2(ratio) / step);
    }
    return report;
}

}  // namespace oscat
