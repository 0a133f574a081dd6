#include "oscat/kernel.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace oscat {

const char* kernel_name(KernelId id) {
    switch (id) {
        case KernelId::cauchy: return "cauchy";
        case KernelId::conj_cauchy: return "conj_cauchy";
        case KernelId::beurling_pv: return "beurling_pv";
        case KernelId::riesz: return "riesz";
    }
    throw std::logic_error("unreachable kernel id");
}

cplx kernel_value(KernelId id, cplx eta) {
    switch (id) {
        case KernelId::cauchy: return 1.0 / eta;
        case KernelId::conj_cauchy: return 1.0 / std::conj(eta);
        case KernelId::beurling_pv: return 1.0 / (eta * eta);
        case KernelId::riesz: return 1.0 / std::abs(eta);
    }
    throw std::logic_error("unreachable kernel id");
}

cplx self_cell_weight(KernelId id, double h) {
    switch (id) {
        case KernelId::cauchy:
        case KernelId::conj_cauchy:
            // Odd kernel: the centered-cell integral cancels exactly.
            return cplx(0, 0);
        case KernelId::beurling_pv:
            // Principal value over the symmetric cell vanishes.
            return cplx(0, 0);
        case KernelId::riesz:
            // int_{[-h/2,h/2]^2} |x|^{-1} dx = 4 log(1+sqrt 2) * h.
            return cplx(4.0 * std::log(1.0 + std::sqrt(2.0)) * h, 0.0);
    }
    throw std::logic_error("unreachable kernel id");
}

namespace {

// FFTW's planner is not thread-safe; plans are cached per (rows, cols,
// sign) and executed through the new-array interface. FFTW_ESTIMATE keeps
// plan choice deterministic across runs.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int rows, int cols, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_tuple(rows, cols, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> scratch(static_cast<std::size_t>(rows) * cols);
        fftw_plan p = fftw_plan_dft_2d(
            rows, cols, reinterpret_cast<fftw_complex*>(scratch.data()),
            reinterpret_cast<fftw_complex*>(scratch.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

}  // namespace

void fft2(cplx* data, int rows, int cols, int sign) {
    fftw_plan p = PlanCache::instance().get(rows, cols, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

KernelTable make_kernel_table(KernelId id, const GridPtr& grid) {
    if (!grid) throw std::invalid_argument("null grid");
    KernelTable t;
    t.id = id;
    t.grid = grid;
    const int nx = grid->nx, ny = grid->ny;
    t.tnx = 2 * nx - 1;
    t.tny = 2 * ny - 1;
    t.values.assign(static_cast<std::size_t>(t.tnx) * t.tny, cplx(0, 0));

    const double h = grid->h;
#pragma omp parallel for schedule(static)
    for (int dj = -(ny - 1); dj <= ny - 1; ++dj) {
        for (int di = -(nx - 1); di <= nx - 1; ++di) {
            const std::size_t at =
                static_cast<std::size_t>(dj + ny - 1) * t.tnx + (di + nx - 1);
            if (di == 0 && dj == 0)
                t.values[at] = self_cell_weight(id, h) / (h * h);
            else
                t.values[at] = kernel_value(id, cplx(di * h, dj * h));
        }
    }

    // Zero-padded cyclic embedding: offset (di, dj) lands at
    // ((dj mod ly), (di mod lx)) so a plain cyclic convolution of the
    // padded input reproduces the full linear convolution.
    t.lx = 2 * nx;
    t.ly = 2 * ny;
    t.spectrum.assign(static_cast<std::size_t>(t.lx) * t.ly, cplx(0, 0));
    for (int dj = -(ny - 1); dj <= ny - 1; ++dj) {
        for (int di = -(nx - 1); di <= nx - 1; ++di) {
            const int pj = (dj + t.ly) % t.ly;
            const int pi = (di + t.lx) % t.lx;
            t.spectrum[static_cast<std::size_t>(pj) * t.lx + pi] =
                t.at(di, dj);
        }
    }
    fft2(t.spectrum.data(), t.ly, t.lx, FFTW_FORWARD);
    return t;
}

const KernelTable& shared_kernel_table(KernelId id, const GridPtr& grid) {
    static std::mutex mutex;
    static std::map<std::tuple<int, const GridSpec*>, KernelTable> cache;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_tuple(static_cast<int>(id), grid.get());
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, make_kernel_table(id, grid)).first;
    return it->second;
}

namespace {

void require_table_grid(const KernelTable& t, const GridFunction& f) {
    if (!f.grid || !t.grid->same_lattice(*f.grid))
        throw std::invalid_argument(
            "kernel table and input live on different lattices");
}

struct NonzeroList {
    std::vector<int> ix, iy;
    std::vector<cplx> val;
};

// Row-major scan; dropping exact zeros leaves compensated sums bitwise
// unchanged while skipping most of a mask-restricted input.
NonzeroList gather_nonzero(const GridFunction& f) {
    NonzeroList list;
    const GridSpec& g = *f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const cplx v = f.values[g.index(i, j)];
            if (v.real() != 0.0 || v.imag() != 0.0) {
                list.ix.push_back(i);
                list.iy.push_back(j);
                list.val.push_back(v);
            }
        }
    return list;
}

cplx accumulate_cell(const KernelTable& t, const NonzeroList& src, int i,
                     int j) {
    CompensatedCplxSum acc;
    for (std::size_t s = 0; s < src.val.size(); ++s) {
        const cplx k = t.at(i - src.ix[s], j - src.iy[s]);
        acc.add(k * src.val[s]);
    }
    const double h = t.grid->h;
    return acc.value() * (h * h);
}

template <bool Parallel>
GridFunction convolve_direct_impl(const KernelTable& t,
                                  const GridFunction& f) {
    require_table_grid(t, f);
    GridFunction out = make_field(f.grid);
    const NonzeroList src = gather_nonzero(f);
    const GridSpec& g = *f.grid;
#pragma omp parallel for schedule(static) if (Parallel)
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.values[g.index(i, j)] = accumulate_cell(t, src, i, j);
    return out;
}

}  // namespace

GridFunction convolve_direct(const KernelTable& t, const GridFunction& f) {
    return convolve_direct_impl<true>(t, f);
}

GridFunction convolve_direct_serial(const KernelTable& t,
                                    const GridFunction& f) {
    return convolve_direct_impl<false>(t, f);
}

GridFunction convolve_fft(const KernelTable& t, const GridFunction& f) {
    require_table_grid(t, f);
    const GridSpec& g = *f.grid;
    const int lx = t.lx, ly = t.ly;

    std::vector<cplx> buf(static_cast<std::size_t>(lx) * ly, cplx(0, 0));
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            buf[static_cast<std::size_t>(j) * lx + i] =
                f.values[g.index(i, j)];

    fft2(buf.data(), ly, lx, FFTW_FORWARD);
    for (std::size_t c = 0; c < buf.size(); ++c) buf[c] *= t.spectrum[c];
    fft2(buf.data(), ly, lx, FFTW_BACKWARD);

    GridFunction out = make_field(f.grid);
    const double scale = g.h * g.h / (static_cast<double>(lx) * ly);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.values[g.index(i, j)] =
                buf[static_cast<std::size_t>(j) * lx + i] * scale;
    return out;
}

GridFunction convolve(KernelId id, const GridFunction& f, ConvPath path) {
    const KernelTable& t = shared_kernel_table(id, f.grid);
    return path == ConvPath::fft ? convolve_fft(t, f) : convolve_direct(t, f);
}

}  // namespace oscat
