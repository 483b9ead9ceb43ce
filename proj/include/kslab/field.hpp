#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "kslab/grid.hpp"

namespace kslab {

using cplx = std::complex<double>;

// A field on the periodic grid stored as Fourier-series coefficients c_k,
// u(x) = sum_k c_k e^{ikx}.  hermitian == true means the field is real-valued
// (c_{-k} = conj(c_k), Nyquist coefficient real).
struct SpectralField {
    Grid grid;
    std::vector<cplx> coeffs;
    bool hermitian = false;
};

inline SpectralField zero_field(const Grid& g, bool hermitian = true) {
    return SpectralField{g, std::vector<cplx>(static_cast<size_t>(g.n)), hermitian};
}

inline void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("fields live on different grids");
}

inline SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a, b);
    SpectralField out = a;
    for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    out.hermitian = a.hermitian && b.hermitian;
    return out;
}

inline SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a, b);
    SpectralField out = a;
    for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
    out.hermitian = a.hermitian && b.hermitian;
    return out;
}

inline SpectralField operator*(double a, const SpectralField& f) {
    SpectralField out = f;
    for (auto& c : out.coeffs) c *= a;
    return out;
}

inline double max_coeff_mag(const SpectralField& f) {
    double m = 0.0;
    for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace kslab
