// Release gate: nine end-to-end checks with frozen thresholds, one
// PASS/FAIL line each. Exit status is nonzero if any check fails.
// Thresholds were calibrated once (docs/calibration.md) and are pinned
// here; they certify reproducible behavior, not sharp constants.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "oscat/analysis.hpp"
#include "oscat/scattering.hpp"

namespace {

using namespace oscat;

constexpr double kPi = std::numbers::pi;

struct Gate {
    int failures = 0;

    void report(int id, const std::string& label, bool ok,
                const std::string& detail) {
        std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id,
                    label.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

std::function<cplx(cplx)> gaussian_at(cplx c, double w, double phase = 0.0) {
    return [c, w, phase](cplx z) {
        return std::polar(std::exp(-std::norm(z - c) / (2.0 * w * w)),
                          phase);
    };
}

// max |AB u|-to-|u| norm ratio over a seeded trial family
double sampled_ab_ratio(const DomainSpec& dom, const GridPtr& grid, cplx k,
                        double p, double eps, int trials, unsigned seed) {
    TrialFamily fam(dom);
    const WaveNumber wn(k);
    return norm_ratio_sample(
        [&](const GridFunction& u) {
            const double nu = lp_norm(u, p, Region::mask_only).value;
            if (nu == 0.0) return 0.0;
            const GridFunction ab = scattering_direct(u, wn);
            const double na = eps > 0.0
                                  ? weighted_lp_norm(ab, p, eps).value
                                  : lp_norm(ab, p, Region::full_box).value;
            return na / nu;
        },
        fam, grid, trials, seed);
}

// -------------------------------------------------------------- criteria

void criterion_identity_ladder(Gate& gate) {
    const DomainSpec dom = builtin_domain("square");
    const auto u_fn =
        gaussian_at(cplx(0.5, 0.5), 0.08 * std::numbers::sqrt2);
    const IdentityReport rep = verify_identity(
        dom, u_fn, WaveNumber(cplx(2, 1)), {64, 128, 256}, StudyOptions{});

    const auto& r = rep.residuals;
    const bool monotone = r[0] > r[1] && r[1] > r[2];
    const double aggregate = std::log2(r[0] / r[2]) / 2.0;
    gate.report(1, "contour identity residuals on the grid ladder",
                monotone && aggregate >= 1.0 && r.back() <= 0.02,
                fmt("residuals %.3g / %.3g / %.3g, aggregate order %.3f",
                    r[0], r[1], r[2], aggregate));
}

void criterion_brute_force(Gate& gate) {
    const DomainSpec dom = builtin_domain("square");
    const GridPtr grid = rasterize(dom, 64, 4.0);
    const GridFunction u = sample_field(
        grid, gaussian_at(cplx(0.5, 0.5), 0.08 * std::numbers::sqrt2),
        true);
    const cplx k(2, 1);

    std::vector<cplx> points;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            points.push_back(grid->center(grid->nx * (2 * a + 1) / 8,
                                          grid->ny * (2 * b + 1) / 8));
    const std::vector<cplx> want =
        oracle::brute_force_ab(u, k, points);

    double rel = 0.0;
    for (ConvPath path : {ConvPath::fft, ConvPath::direct}) {
        ScatterOptions opts;
        opts.path = path;
        const GridFunction ab =
            scattering_direct(u, WaveNumber(k), opts);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const int gi = static_cast<int>(
                std::lround((points[i].real() - grid->x0) / grid->h - 0.5));
            const int gj = static_cast<int>(
                std::lround((points[i].imag() - grid->y0) / grid->h - 0.5));
            num = std::max(num, std::abs(ab.values[grid->index(gi, gj)] -
                                         want[i]));
            den = std::max(den, std::abs(want[i]));
        }
        rel = std::max(rel, num / den);
    }
    gate.report(2, "factored transform matches the literal double sum",
                rel <= 1e-10, fmt("max relative gap %.3g at 16 points", rel));
}

void criterion_decay_slope(Gate& gate) {
    const DomainSpec dom = builtin_domain("square");
    const GridPtr grid = rasterize(dom, 512, 4.0);
    const auto bb = dom.bounding_box();
    const double diam = std::hypot(bb[2] - bb[0], bb[3] - bb[1]);
    const Point c = dom.centroid();
    const GridFunction u = sample_field(
        grid, gaussian_at(cplx(c[0], c[1]), 0.12 * diam), true);

    const SweepReport rep =
        decay_sweep(u, {2, 4, 8, 16, 32}, kPi / 4.0, 4.0);
    const bool ok = !rep.degenerate && rep.slope >= -1.3 &&
                    rep.slope <= -0.8;
    gate.report(3, "decay of the L4 ratio in the wave number",
                ok,
                fmt("slope %.3f +- %.3f, bracket [-1.3, -0.8]", rep.slope,
                    rep.slope_halfwidth));
}

void criterion_ratio_stability(Gate& gate) {
    const DomainSpec dom = builtin_domain("square");
    const GridPtr grid = rasterize(dom, 256, 4.0);
    const int trials = 64;

    // decay chain over moduli at seed 0; the first entry doubles as the
    // seed-0 stability sample
    std::vector<double> chain;
    for (double mod : {2.0, 4.0, 8.0, 16.0, 32.0})
        chain.push_back(sampled_ab_ratio(dom, grid,
                                         std::polar(mod, kPi / 4.0), 4.0,
                                         0.0, trials, 0));
    bool decaying = true;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        decaying = decaying && chain[i + 1] <= chain[i] * 1.005;

    double lo = chain[0], hi = chain[0];
    for (unsigned seed = 1; seed <= 4; ++seed) {
        const double r = sampled_ab_ratio(
            dom, grid, std::polar(2.0, kPi / 4.0), 4.0, 0.0, trials, seed);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    const double spread = hi / lo - 1.0;
    const bool finite = std::isfinite(hi) && lo > 0.0;

    gate.report(4, "L4 ratio: finite, seed-stable, decaying in |k|",
                finite && spread <= 0.10 && decaying,
                fmt("seed spread %.2f%%, chain %.3g -> %.3g over |k| 2..32",
                    100.0 * spread, chain.front(), chain.back()));
}

void criterion_weighted_ceiling(Gate& gate) {
    const DomainSpec dom = builtin_domain("square");
    const GridPtr grid = rasterize(dom, 256, 4.0);
    const double ceiling = 0.15;  // frozen from calibration

    double worst = 0.0;
    for (double mod : {2.0, 4.0, 8.0})
        for (unsigned seed = 0; seed <= 4; ++seed)
            worst = std::max(
                worst, sampled_ab_ratio(dom, grid,
                                        std::polar(mod, kPi / 4.0), 1.5,
                                        0.5, 16, seed));

    bool rejects_boundary = false;
    try {
        pair_exponents(1.5, 1.0 / 3.0);
    } catch (const std::invalid_argument&) {
        rejects_boundary = true;
    }
    const double r = pair_exponents(1.5, 0.5).r;
    const bool pairing_ok = std::abs(r - 16.0 / 7.0) <= 1e-14;

    gate.report(5, "weighted ratio ceiling and infeasible weight",
                worst <= ceiling && rejects_boundary && pairing_ok,
                fmt("worst ratio %.3g <= %.2f over 3 moduli x 5 seeds; "
                    "boundary weight %s",
                    worst, ceiling,
                    rejects_boundary ? "rejected" : "NOT rejected"));
}

void criterion_constituent_growth(Gate& gate) {
    const DomainSpec dom = builtin_domain("square");
    const ConstituentReport rep = check_constituents(dom, 128, 0, 16);

    bool ok = true;
    double worst = 0.0;
    std::string worst_key = "-";
    for (const auto& [key, factor] : rep.growth) {
        ok = ok && std::isfinite(factor) && factor <= 1.10;
        if (factor > worst) {
            worst = factor;
            worst_key = key;
        }
    }
    for (const ConstituentRow& row : rep.rows)
        ok = ok && std::isfinite(row.ratio) && row.ratio > 0.0;
    gate.report(6, "constituent ratios grow <= 10% when n doubles", ok,
                fmt("worst growth %.4f (%s) over %zu checks", worst,
                    worst_key.c_str(), rep.growth.size()));
}

void criterion_disk_closed_forms(Gate& gate) {
    std::vector<double> errs;
    bool self_ok = true;
    for (int n : {128, 256}) {
        auto gs = std::make_shared<GridSpec>();
        gs->x0 = gs->y0 = -2.0;
        gs->h = 4.0 / n;
        gs->nx = gs->ny = n;
        gs->margin = 1.0;
        gs->mask.assign(static_cast<std::size_t>(n) * n, 0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (std::abs(gs->center(i, j)) < 1.0)
                    gs->mask[gs->index(i, j)] = 1;
        const GridPtr grid = gs;

        const GridFunction ind =
            restrict_to_mask(make_field(grid, cplx(1, 0)));
        const GridFunction C = cauchy(ind);

        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const cplx z = grid->center(i, j);
                const double r = std::abs(z);
                const cplx got = C.values[grid->index(i, j)];
                if (r <= 0.7)
                    worst = std::max(
                        worst, std::abs(got - kPi * std::conj(z)) / kPi);
                else if (r >= 1.3 && r <= 1.9)
                    worst = std::max(worst, std::abs(got - kPi / z) /
                                                (kPi / r));
            }
        errs.push_back(worst);

        const double want = 4.0 * std::log(1.0 + std::numbers::sqrt2) *
                            grid->h;
        self_ok = self_ok &&
                  std::abs(self_cell_weight(KernelId::riesz, grid->h) -
                           want) <= 1e-12;
    }
    const double h0 = 4.0 / 128;
    const bool bounded = errs[0] <= 0.2 * h0 && errs[1] <= 0.2 * h0 / 2.0;
    const bool first_order = errs[0] >= 1.5 * errs[1];
    gate.report(7, "disk indicator closed forms and corner-cell weight",
                bounded && first_order && self_ok,
                fmt("max relative error %.3g -> %.3g under refinement",
                    errs[0], errs[1]));
}

void criterion_exactness(Gate& gate) {
    const DomainSpec dom = builtin_domain("square");
    const GridPtr grid = rasterize(dom, 64, 2.0);
    const GridFunction f = TrialFamily(dom).make(grid, 11, 1);

    double path_gap = 0.0;
    using Op = GridFunction (*)(const GridFunction&, ConvPath);
    for (Op op : {static_cast<Op>(riesz), static_cast<Op>(beurling),
                  static_cast<Op>(cauchy), static_cast<Op>(conj_cauchy)}) {
        const GridFunction a = op(f, ConvPath::direct);
        const GridFunction b = op(f, ConvPath::fft);
        path_gap = std::max(path_gap, max_abs(sub(a, b)) / max_abs(a));
    }

    const GridFunction m = modulate(f, WaveNumber(cplx(3, 2)), +1);
    double mod_gap = 0.0;
    for (std::size_t i = 0; i < m.values.size(); ++i)
        mod_gap = std::max(mod_gap, std::abs(std::abs(m.values[i]) -
                                             std::abs(f.values[i])));

    const BoundaryPtr bq = boundary_quadrature(dom, 3.0 / grid->h);
    std::mt19937_64 eng(23);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    BoundaryFunction gb;
    gb.boundary = bq;
    gb.values.resize(bq->size());
    for (cplx& v : gb.values) v = cplx(uni(eng), uni(eng));
    const cplx lhs = inner_product_boundary(trace_riesz(f, bq), gb);
    const cplx rhs = inner_product_grid(f, trace_adjoint(gb, grid));
    const double adj_gap = std::abs(lhs - rhs) / std::abs(lhs);

    const bool zero_cells =
        self_cell_weight(KernelId::beurling_pv, grid->h) == 0.0 &&
        self_cell_weight(KernelId::cauchy, grid->h) == 0.0 &&
        self_cell_weight(KernelId::conj_cauchy, grid->h) == 0.0;

    gate.report(8, "exactness identities",
                path_gap <= 1e-10 && mod_gap <= 1e-15 &&
                    adj_gap <= 1e-10 && zero_cells,
                fmt("fft-direct %.3g, modulus drift %.3g, adjoint %.3g",
                    path_gap, mod_gap, adj_gap));
}

void criterion_fundamental_solution(Gate& gate) {
    const DomainSpec dom = builtin_domain("square");
    const auto fn = gaussian_at(cplx(0.5, 0.5), 0.15, 0.4);

    std::vector<double> errors;
    for (int n : {64, 128, 256}) {
        const GridPtr g = rasterize(dom, n, 2.0);
        const GridFunction u = sample_field(g, fn, true);
        const GridFunction G = inner_transform(u, WaveNumber(cplx(0, 0)));
        const double h = g->h;
        double worst = 0.0;
        for (int j = 1; j + 1 < g->ny; ++j)
            for (int i = 1; i + 1 < g->nx; ++i) {
                const cplx z = g->center(i, j);
                if (z.real() < 0.15 || z.real() > 0.85 ||
                    z.imag() < 0.15 || z.imag() > 0.85)
                    continue;
                const cplx dx = (G.values[g->index(i + 1, j)] -
                                 G.values[g->index(i - 1, j)]) /
                                (2 * h);
                const cplx dy = (G.values[g->index(i, j + 1)] -
                                 G.values[g->index(i, j - 1)]) /
                                (2 * h);
                const cplx dz = (dx - cplx(0, 1) * dy) / 2.0;
                worst = std::max(worst, std::abs(dz - kPi * u.values[g->index(
                                                           i, j)]));
            }
        errors.push_back(worst);
    }
    const double o1 = std::log2(errors[0] / errors[1]);
    const double o2 = std::log2(errors[1] / errors[2]);
    gate.report(9, "fundamental-solution recovery at second order",
                o1 >= 1.7 && o2 >= 1.7,
                fmt("interior errors %.3g / %.3g / %.3g, orders %.2f, %.2f",
                    errors[0], errors[1], errors[2], o1, o2));
}

}  // namespace

int main() {
    Gate gate;
    const std::vector<std::pair<int, void (*)(Gate&)>> criteria = {
        {1, criterion_identity_ladder},  {2, criterion_brute_force},
        {3, criterion_decay_slope},      {4, criterion_ratio_stability},
        {5, criterion_weighted_ceiling}, {6, criterion_constituent_growth},
        {7, criterion_disk_closed_forms}, {8, criterion_exactness},
        {9, criterion_fundamental_solution},
    };
    for (const auto& [id, run] : criteria) {
        try {
            run(gate);
        } catch (const std::exception& e) {
            gate.report(id, "criterion raised an exception", false,
                        e.what());
        }
    }
    if (gate.failures == 0) {
        std::printf("all 9 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", gate.failures);
    return 1;
}
