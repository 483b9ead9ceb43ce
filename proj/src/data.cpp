#include "kslab/data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kslab/ops.hpp"

namespace kslab {

double box_amplitude(const BoxPairSpec& spec) {
    if (!(spec.N >= 8.0)) throw std::invalid_argument("BoxPairSpec: N must be >= 8");
    if (!(spec.r > 0.0)) throw std::invalid_argument("BoxPairSpec: r must be > 0");
    const double expo = spec.rule == AmplitudeRule::paper ? spec.s - 0.5 : spec.s;
    return std::pow(spec.r, -0.5) * std::pow(spec.N, -expo);
}

namespace {

SpectralField box_field(const BoxPairSpec& spec, const Grid& g, bool second) {
    const double lo = second ? spec.N + spec.r : -spec.N;
    const double hi = second ? spec.N + 2.0 * spec.r : -spec.N + spec.r;
    const double band = g.dealias_limit() * g.fundamental();
    if (std::max(std::abs(lo), std::abs(hi)) >= band)
        throw std::invalid_argument("box data: frequencies beyond the dealiased band");
    // Spectrum a*chi on lattice points; Fourier-series coefficient of a profile
    // with transform F is F(k)/(2L).
    const double a = box_amplitude(spec) / (2.0 * g.half_length);
    SpectralField f = zero_field(g, false);
    for (int i = 0; i < g.n; ++i) {
        const double k = g.wavenumber(i);
        if (k >= lo && k < hi) f.coeffs[i] = a;
    }
    f.hermitian = false;
    return f;
}

SpectralField random_sobolev_field(const DataCatalogEntry& e, const Grid& g) {
    const double eps = 0.01;
    std::mt19937_64 rng(e.seed);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
    SpectralField f = zero_field(g, true);
    const int cut = g.dealias_limit();
    f.coeffs[0] = std::cos(unif(rng));
    for (int m = 1; m <= cut; ++m) {
        const double k = g.fundamental() * m;
        const double mag = std::pow(1.0 + k * k, -0.5 * (e.s + 0.5 + eps));
        const double theta = unif(rng);
        f.coeffs[m] = mag * cplx(std::cos(theta), std::sin(theta));
        f.coeffs[g.n - m] = std::conj(f.coeffs[m]);
    }
    const double norm = sobolev_norm(f, e.s);
    const double scale = e.amplitude / norm;
    for (auto& c : f.coeffs) c *= scale;
    return f;
}

}  // namespace

SpectralField make_data(const DataCatalogEntry& entry, const Grid& g) {
    const double x0 = entry.center < 0.0 ? g.half_length : entry.center;
    switch (entry.kind) {
        case DataKind::zero:
            return zero_field(g, true);
        case DataKind::gaussian:
            return sample_real(g, [&](double x) {
                const double u = (x - x0) / entry.width;
                return entry.amplitude * std::exp(-u * u);
            });
        case DataKind::sech:
            return sample_real(g, [&](double x) {
                return entry.amplitude / std::cosh((x - x0) / entry.width);
            });
        case DataKind::random_sobolev:
            return random_sobolev_field(entry, g);
        case DataKind::box_phi:
            return box_field(entry.box, g, false);
        case DataKind::box_psi:
            return box_field(entry.box, g, true);
    }
    throw std::invalid_argument("make_data: unknown kind");
}

}  // namespace kslab
