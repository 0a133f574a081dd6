#include "oscat/field.hpp"

#include <stdexcept>

namespace oscat {

GridFunction make_field(GridPtr grid, cplx fill) {
    if (!grid) throw std::invalid_argument("null grid");
    GridFunction f;
    f.values.assign(static_cast<std::size_t>(grid->cells()), fill);
    f.grid = std::move(grid);
    return f;
}

GridFunction sample_field(GridPtr grid, const std::function<cplx(cplx)>& f,
                          bool masked) {
    GridFunction out = make_field(std::move(grid));
    const GridSpec& g = *out.grid;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int c = g.index(i, j);
            if (masked && !g.mask[c]) continue;
            out.values[c] = f(g.center(i, j));
        }
    }
    out.mask_restricted = masked;
    return out;
}

GridFunction restrict_to_mask(const GridFunction& f) {
    GridFunction out = f;
    for (int c = 0; c < f.grid->cells(); ++c)
        if (!f.grid->mask[c]) out.values[c] = cplx(0, 0);
    out.mask_restricted = true;
    return out;
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!a.grid || !b.grid || !a.grid->same_lattice(*b.grid))
        throw std::invalid_argument("grid functions live on different lattices");
}

GridFunction add(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (std::size_t c = 0; c < out.values.size(); ++c)
        out.values[c] += b.values[c];
    out.mask_restricted = a.mask_restricted && b.mask_restricted;
    return out;
}

GridFunction sub(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (std::size_t c = 0; c < out.values.size(); ++c)
        out.values[c] -= b.values[c];
    out.mask_restricted = a.mask_restricted && b.mask_restricted;
    return out;
}

GridFunction scale(const GridFunction& a, cplx c) {
    GridFunction out = a;
    for (auto& v : out.values) v *= c;
    return out;
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (const cplx& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace oscat
