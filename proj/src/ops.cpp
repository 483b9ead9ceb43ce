#include "kslab/ops.hpp"

#include <cmath>
#include <stdexcept>

#include "kslab/transforms.hpp"

namespace kslab {

SpectralField sample_real(const Grid& g, const std::function<double(double)>& profile) {
    std::vector<cplx> vals(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j) vals[j] = cplx(profile(g.x(j)), 0.0);
    SpectralField f{g, fft_forward(vals), true};
    enforce_hermitian(f);
    return f;
}

SpectralField sample_complex(const Grid& g, const std::function<cplx(double)>& profile) {
    std::vector<cplx> vals(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j) vals[j] = profile(g.x(j));
    return SpectralField{g, fft_forward(vals), false};
}

std::vector<cplx> to_physical(const SpectralField& f) { return fft_backward(f.coeffs); }

std::vector<double> to_physical_real(const SpectralField& f) {
    std::vector<cplx> vals = fft_backward(f.coeffs);
    std::vector<double> out(vals.size());
    for (size_t j = 0; j < vals.size(); ++j) out[j] = vals[j].real();
    return out;
}

double sobolev_norm(const SpectralField& f, double s) {
    double acc = 0.0;
    for (int i = 0; i < f.grid.n; ++i) {
        const double k = f.grid.wavenumber(i);
        acc += std::pow(1.0 + k * k, s) * std::norm(f.coeffs[i]);
    }
    return std::sqrt(acc * 2.0 * f.grid.half_length);
}

double inner_product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f, g);
    double acc = 0.0;
    for (size_t i = 0; i < f.coeffs.size(); ++i)
        acc += (std::conj(f.coeffs[i]) * g.coeffs[i]).real();
    return acc * 2.0 * f.grid.half_length;
}

SpectralField derivative(const SpectralField& f, int order) {
    if (order < 1) throw std::invalid_argument("derivative: order must be >= 1");
    SpectralField out = f;
    // i^order cycles through {1, i, -1, -i}
    static const cplx unit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx rot = unit[order % 4];
    for (int i = 0; i < f.grid.n; ++i) {
        const double k = f.grid.wavenumber(i);
        out.coeffs[i] *= rot * std::pow(k, order);
    }
    if (order % 2 == 1) out.coeffs[f.grid.nyquist_index()] = 0.0;
    return out;
}

SpectralField bessel_potential(const SpectralField& f, double s) {
    SpectralField out = f;
    for (int i = 0; i < f.grid.n; ++i) {
        const double k = f.grid.wavenumber(i);
        out.coeffs[i] *= std::pow(1.0 + k * k, 0.5 * s);
    }
    return out;
}

SpectralField nonlinearity(const SpectralField& u) {
    if (!u.hermitian) throw std::invalid_argument("nonlinearity: input must be a real (hermitian) field");
    const std::vector<cplx> dvals = fft_backward(derivative(u, 1).coeffs);
    std::vector<cplx> sq(dvals.size());
    for (size_t j = 0; j < dvals.size(); ++j) {
        const double v = dvals[j].real();
        sq[j] = cplx(0.5 * v * v, 0.0);
    }
    SpectralField out{u.grid, fft_forward(sq), true};
    const int cut = u.grid.dealias_limit();
    for (int i = 0; i < out.grid.n; ++i)
        if (std::abs(out.grid.mode(i)) > cut) out.coeffs[i] = 0.0;
    enforce_hermitian(out);
    return out;
}

void enforce_hermitian(SpectralField& f) {
    const int n = f.grid.n;
    f.coeffs[0] = cplx(f.coeffs[0].real(), 0.0);
    f.coeffs[n / 2] = cplx(f.coeffs[n / 2].real(), 0.0);
    for (int i = 1; i < n / 2; ++i) {
        const cplx avg = 0.5 * (f.coeffs[i] + std::conj(f.coeffs[n - i]));
        f.coeffs[i] = avg;
        f.coeffs[n - i] = std::conj(avg);
    }
    f.hermitian = true;
}

double hermitian_defect(const SpectralField& f) {
    const int n = f.grid.n;
    const double scale = std::max(max_coeff_mag(f), 1e-300);
    double worst = std::abs(f.coeffs[0].imag()) / scale;
    worst = std::max(worst, std::abs(f.coeffs[n / 2].imag()) / scale);
    for (int i = 1; i < n / 2; ++i)
        worst = std::max(worst, std::abs(f.coeffs[i] - std::conj(f.coeffs[n - i])) / scale);
    return worst;
}

}  // namespace kslab
