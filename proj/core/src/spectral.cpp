#include "ovw/spectral.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <mutex>

#include "ovw/errors.hpp"

namespace ovw::spectral {

namespace {

struct Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// Planner calls are not thread safe; execution on fresh arrays is.
const Plans& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, Plans> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const std::size_t nreal = static_cast<std::size_t>(n) * n;
    const std::size_t ncplx = static_cast<std::size_t>(n) * (n / 2 + 1);
    double* real = fftw_alloc_real(nreal);
    fftw_complex* cplx = fftw_alloc_complex(ncplx);
    Plans p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.r2c = fftw_plan_dft_r2c_2d(n, n, real, cplx, flags);
    p.c2r = fftw_plan_dft_c2r_2d(n, n, cplx, real, flags);
    fftw_free(real);
    fftw_free(cplx);
    if (p.r2c == nullptr || p.c2r == nullptr) throw std::runtime_error("FFTW planning failed");
    return cache.emplace(n, p).first->second;
}

}  // namespace

Spectrum::Spectrum(GridSpec grid) : grid_(grid), data_(static_cast<std::size_t>(grid.n) * (grid.n / 2 + 1)) {}

double Spectrum::dky(int row) const { return row == grid_.n / 2 ? 0.0 : static_cast<double>(ky(row)); }
double Spectrum::dkx(int col) const { return col == grid_.n / 2 ? 0.0 : static_cast<double>(col); }

void Spectrum::apply(const std::function<double(int, int)>& m) {
    for (int r = 0; r < rows(); ++r) {
        const int y = ky(r);
        for (int c = 0; c < cols(); ++c) at(r, c) *= m(c, y);
    }
}

Spectrum& Spectrum::operator+=(const Spectrum& o) {
    if (!(grid_ == o.grid_)) throw InputError("spectrum grids differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& o) {
    if (!(grid_ == o.grid_)) throw InputError("spectrum grids differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

Spectrum& Spectrum::operator*=(double s) {
    for (auto& c : data_) c *= s;
    return *this;
}

Spectrum forward(const ScalarField& f) {
    Spectrum s(f.grid());
    const auto& p = plans_for(f.n());
    // FFTW does not modify the input of an r2c transform.
    auto* in = const_cast<double*>(f.values().data());
    fftw_execute_dft_r2c(p.r2c, in, reinterpret_cast<fftw_complex*>(s.data().data()));
    return s;
}

ScalarField inverse(const Spectrum& s) {
    std::vector<Complex> scratch(s.data().begin(), s.data().end());  // c2r clobbers its input
    ScalarField f(s.grid());
    const auto& p = plans_for(s.grid().n);
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), f.values().data());
    const double scale = 1.0 / static_cast<double>(s.grid().size());
    for (double& v : f.values()) v *= scale;
    return f;
}

bool is_retained(const GridSpec& grid, int kx, int ky) {
    return std::abs(kx) <= grid.dealias_cutoff && std::abs(ky) <= grid.dealias_cutoff;
}

void truncate(Spectrum& s) {
    const auto& g = s.grid();
    for (int r = 0; r < s.rows(); ++r) {
        const int y = s.ky(r);
        for (int c = 0; c < s.cols(); ++c) {
            if (!is_retained(g, c, y)) s.at(r, c) = 0.0;
        }
    }
}

Spectrum dx(const Spectrum& s) {
    Spectrum out(s.grid());
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < s.cols(); ++c) out.at(r, c) = Complex(0.0, s.dkx(c)) * s.at(r, c);
    return out;
}

Spectrum dy(const Spectrum& s) {
    Spectrum out(s.grid());
    for (int r = 0; r < s.rows(); ++r) {
        const Complex ik(0.0, s.dky(r));
        for (int c = 0; c < s.cols(); ++c) out.at(r, c) = ik * s.at(r, c);
    }
    return out;
}

ScalarField dealias(const ScalarField& f) {
    auto s = forward(f);
    truncate(s);
    return inverse(s);
}

VectorField2 dealias(const VectorField2& f) { return {dealias(f.u), dealias(f.v)}; }

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
    return hadamard(dealias(a), dealias(b));
}

double l2_squared(const Spectrum& s) {
    double acc = 0.0;
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < s.cols(); ++c) acc += s.weight(c) * std::norm(s.at(r, c));
    const double n2 = static_cast<double>(s.grid().size());
    return acc * GridSpec::measure() / (n2 * n2);
}

}  // namespace ovw::spectral
