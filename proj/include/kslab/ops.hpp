#pragma once

#include <functional>
#include <vector>

#include "kslab/field.hpp"

namespace kslab {

// Forward-transform a profile sampled at the collocation points.  The real
// overload marks the result hermitian and symmetrizes the coefficients exactly.
SpectralField sample_real(const Grid& g, const std::function<double(double)>& profile);
SpectralField sample_complex(const Grid& g, const std::function<cplx(double)>& profile);

std::vector<cplx> to_physical(const SpectralField& f);
std::vector<double> to_physical_real(const SpectralField& f);

// Discrete H^s norm: ( sum_k <k>^{2s} |c_k|^2 * 2L )^{1/2}, <k> = (1+k^2)^{1/2}.
// s = 0 recovers the L^2([0,2L)) norm by Parseval.
double sobolev_norm(const SpectralField& f, double s);

// L^2 inner product of real fields, evaluated spectrally.
double inner_product(const SpectralField& f, const SpectralField& g);

// Per-mode multiplication by (ik)^order; odd orders zero the unpaired
// Nyquist mode so real fields stay real.
SpectralField derivative(const SpectralField& f, int order);

// Per-mode multiplication by <k>^s.
SpectralField bessel_potential(const SpectralField& f, double s);

// Dealiased quadratic term (1/2)(du/dx)^2: differentiate, square in physical
// space, transform back, zero all modes with |m| > n/3.  Input must be real.
SpectralField nonlinearity(const SpectralField& u);

// Exact c_{-k} = conj(c_k) symmetrization (Nyquist made real).
void enforce_hermitian(SpectralField& f);

// Worst relative deviation from hermitian symmetry; 0 for exact fields.
double hermitian_defect(const SpectralField& f);

}  // namespace kslab
