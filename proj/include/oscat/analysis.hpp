#pragma once

#include <string>
#include <utility>

#include "oscat/scattering.hpp"

namespace oscat {

/// Exponent bookkeeping for the estimate chain. p is the statement
/// exponent; p_tilde the companion source exponent on the domain side
/// (1/p = 1/p_tilde - 1/2 in the unweighted branch, the Hoelder companion
/// of r in the weighted branch); r the boundary-trace exponent
/// (1/r = 2/p_tilde - 1 when paired); s the free boundary-measure
/// exponent retained for experiments; eps the weight power.
struct ExponentSet {
    double p = 0;
    double p_tilde = 0;
    double r = 0;
    double s = 0;
    double eps = 0;
    bool weighted = false;
};

/// Unweighted branch, p > 2.
ExponentSet pair_exponents(double p);

/// Weighted branch, 1 < p <= 2, requires eps > 2/p - 1. r > 2 is chosen
/// deterministically: with t = 2/r, the constraints eps > 2/p - t,
/// t > 2/p - 1, t < 1 define an interval (t_lo, 1); we take the point a
/// quarter of the way in, t = t_lo + (1 - t_lo)/4.
ExponentSet pair_exponents(double p, double eps);

enum class Region { full_box, mask_only };

struct NormReport {
    std::string kind;  // "Lp" or "weighted-Lp"
    double p = 2;
    double eps = 0;
    Region region = Region::full_box;
    double margin = 1;  // truncation note: box is margin * bounding box
    double value = 0;
};

/// (sum |f|^p h^2)^(1/p) over the region cells.
NormReport lp_norm(const GridFunction& f, double p,
                   Region region = Region::full_box);

/// lp_norm of (1+|z|^2)^(-eps/2) f. eps = 0 reproduces lp_norm exactly.
NormReport weighted_lp_norm(const GridFunction& f, double p, double eps,
                            Region region = Region::full_box);

/// (sum |g|^p w)^(1/p) over boundary nodes (arc-length measure).
double boundary_lp_norm(const BoundaryFunction& g, double p);

/// sum a conj(b) h^2 over all cells.
cplx inner_product_grid(const GridFunction& a, const GridFunction& b);

/// sum a conj(b) w over boundary nodes.
cplx inner_product_boundary(const BoundaryFunction& a,
                            const BoundaryFunction& b);

bool all_finite(const GridFunction& f);

/// Seeded family of continuum trial inputs supported in the domain:
/// three Gaussian bumps (random center in the polygon, log-uniform width,
/// random phase) then one band-limited plane-wave noise field per block
/// of four indices. Parameters depend only on (seed, index), so the same
/// trial can be sampled onto any grid.
struct TrialFamily {
    DomainSpec domain;

    explicit TrialFamily(DomainSpec d) : domain(std::move(d)) {}
    std::function<cplx(cplx)> make_function(unsigned seed, int index) const;
    GridFunction make(const GridPtr& grid, unsigned seed, int index) const;
};

/// Max over trial inputs of a per-trial ratio functional: a sampled
/// lower bound for an operator norm. Deterministic for fixed seed,
/// independent of thread count.
double norm_ratio_sample(
    const std::function<double(const GridFunction&)>& trial_ratio,
    const TrialFamily& family, const GridPtr& grid, int trials,
    unsigned seed);

struct SweepPoint {
    cplx k;
    double norm_u = 0;
    double norm_ab = 0;
    double ratio = 0;
};

struct SweepReport {
    std::vector<SweepPoint> points;
    double p = 4;
    double slope = 0;
    double slope_halfwidth = 0;  // 2 x standard error of the fit
    bool degenerate = false;     // zero input or zero output: no fit
};

/// Applies the scattering operator at k = modulus * e^{i phase} for each
/// modulus and fits the log-log slope of the norm ratio.
SweepReport decay_sweep(const GridFunction& u,
                        const std::vector<double>& k_moduli, double k_phase,
                        double p, const ScatterOptions& opts = {});

struct ConstituentRow {
    std::string key;  // check identifier for ceilings/growth lookup
    std::string op;
    double p_in = 0;
    std::string out_kind;
    int n = 0;
    unsigned seed = 0;
    double ratio = 0;
};

struct ConstituentReport {
    std::vector<ConstituentRow> rows;  // at n and at 2n
    // growth[key] = ratio at 2n / ratio at n, per check
    std::vector<std::pair<std::string, double>> growth;
};

/// Sampled norm-ratio lower bounds for the constituent operators
/// (fractional integral, principal-value transform, boundary trace and
/// its adjoint composite) at n and 2n, with cross-refinement growth.
ConstituentReport check_constituents(const DomainSpec& domain, int n,
                                     unsigned seed, int trials);

/// Least-squares slope of y against x with a 2-sigma half-width.
std::pair<double, double> fit_slope(const std::vector<double>& x,
                                    const std::vector<double>& y);

}  // namespace oscat
