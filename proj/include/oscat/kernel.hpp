#pragma once

#include "oscat/field.hpp"

namespace oscat {

enum class KernelId { cauchy, conj_cauchy, beurling_pv, riesz };

const char* kernel_name(KernelId id);

/// Kernel value at a nonzero lattice offset eta.
cplx kernel_value(KernelId id, cplx eta);

/// Integral of the kernel over the centered cell [-h/2,h/2]^2: the
/// diagonal weight of the discretization. Zero for the odd/principal-value
/// kernels; the Riesz cell integral has the closed form 4*log(1+sqrt 2)*h.
cplx self_cell_weight(KernelId id, double h);

/// Tabulated kernel on the (2nx-1) x (2ny-1) difference lattice of a grid,
/// with the diagonal offset carrying self_cell_weight/h^2 so that
/// h^2-weighted sums integrate the cell exactly. The zero-padded FFT of
/// the table is precomputed for the fast convolution path.
struct KernelTable {
    KernelId id = KernelId::riesz;
    GridPtr grid;
    int tnx = 0, tny = 0;  // 2nx-1, 2ny-1
    std::vector<cplx> values;
    int lx = 0, ly = 0;  // padded FFT size, 2nx x 2ny
    std::vector<cplx> spectrum;

    cplx at(int di, int dj) const {
        return values[static_cast<std::size_t>(dj + grid->ny - 1) * tnx +
                      (di + grid->nx - 1)];
    }
};

KernelTable make_kernel_table(KernelId id, const GridPtr& grid);

/// Process-wide table cache keyed by kernel and lattice.
const KernelTable& shared_kernel_table(KernelId id, const GridPtr& grid);

/// out(z_c) = sum_w K(z_c - z_w) f(w) h^2, compensated, row-major term
/// order. The parallel and serial variants are bitwise identical.
GridFunction convolve_direct(const KernelTable& table, const GridFunction& f);
GridFunction convolve_direct_serial(const KernelTable& table,
                                    const GridFunction& f);

/// Same sum evaluated by zero-padded cyclic FFT convolution.
GridFunction convolve_fft(const KernelTable& table, const GridFunction& f);

enum class ConvPath { fft, direct };

GridFunction convolve(KernelId id, const GridFunction& f,
                      ConvPath path = ConvPath::fft);

/// In-place serial complex 2D FFT of a row-major ln-row by lm-column
/// buffer (sign -1 forward, +1 inverse, unnormalized).
void fft2(cplx* data, int rows, int cols, int sign);

}  // namespace oscat
