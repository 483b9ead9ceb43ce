#include "kslab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kslab/quadrature.hpp"

namespace kslab {

double symbol_value(double xi, SymbolParams p) {
    return -xi * xi + p.mu / std::sqrt(1.0 + xi * xi);
}

std::vector<double> symbol_on_grid(const Grid& g, SymbolParams p) {
    std::vector<double> phi(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) phi[i] = symbol_value(g.wavenumber(i), p);
    return phi;
}

SpectralField apply_semigroup(double t, const SpectralField& f, SymbolParams p) {
    if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be >= 0");
    SpectralField out = f;
    for (int i = 0; i < f.grid.n; ++i)
        out.coeffs[i] *= std::exp(t * symbol_value(f.grid.wavenumber(i), p));
    return out;
}

namespace detail {

PhiPair phi_functions_series(double z) {
    // phi1 = sum z^k/(k+1)!, phi2 = sum z^k/(k+2)!; 14 terms is far below
    // double roundoff at |z| <= 0.1.
    double p1 = 0.0, p2 = 0.0, term = 1.0;
    for (int k = 0; k <= 14; ++k) {
        p1 += term / (k + 1.0);
        p2 += term / ((k + 1.0) * (k + 2.0));
        term *= z / (k + 1.0);
    }
    return {p1, p2};
}

PhiPair phi_functions_direct(double z) {
    const double em1 = std::expm1(z);
    return {em1 / z, (em1 - z) / (z * z)};
}

}  // namespace detail

PhiPair phi_functions(double z) {
    if (std::abs(z) < detail::phi_series_threshold) return detail::phi_functions_series(z);
    return detail::phi_functions_direct(z);
}

namespace {

double weighted_symbol(double xi, double lambda, double t, SymbolParams p) {
    // xi^{2 lambda} e^{t Phi(xi)} evaluated in log space to avoid overflow at
    // large lambda / small t.
    if (xi == 0.0) return lambda == 0.0 ? std::exp(t * p.mu) : 0.0;
    return std::exp(2.0 * lambda * std::log(std::abs(xi)) + t * symbol_value(xi, p));
}

}  // namespace

SupCheck check_weighted_sup(double lambda, double t, double T, SymbolParams p) {
    if (lambda < 0.0) throw std::invalid_argument("check_weighted_sup: lambda must be >= 0");
    if (!(t > 0.0 && t <= T)) throw std::invalid_argument("check_weighted_sup: need 0 < t <= T");

    SupCheck chk;
    chk.lambda = lambda;
    chk.t = t;
    chk.horizon = T;
    chk.mu = p.mu;

    const double xi_star = lambda > 0.0 ? std::sqrt(lambda / t) : 0.0;
    const double xi_dense = 2.0 * xi_star + 5.0;
    const double xi_max = std::max(4.0 * xi_star + 10.0, 20.0);

    double best = weighted_symbol(0.0, lambda, t, p);
    best = std::max(best, weighted_symbol(xi_star, lambda, t, p));
    const int n_dense = 200000;
    for (int i = 1; i <= n_dense; ++i)
        best = std::max(best, weighted_symbol(xi_dense * i / n_dense, lambda, t, p));
    for (double xi = xi_dense; xi < xi_max; xi *= 1.0005)
        best = std::max(best, weighted_symbol(xi, lambda, t, p));

    chk.measured = best;
    const double lam_pow = lambda == 0.0 ? 1.0 : std::pow(lambda / std::exp(1.0), lambda);
    chk.bound = std::exp(p.mu * T) * lam_pow * std::pow(t, -lambda);
    chk.pass = chk.measured <= chk.bound * (1.0 + 1e-9);
    chk.equality = std::abs(chk.measured - chk.bound) <= 1e-9 * chk.bound;
    return chk;
}

double gaussian_moment(double nu) {
    if (!(nu > -0.5)) throw std::invalid_argument("gaussian_moment: need nu > -1/2");
    return std::sqrt(std::pow(2.0, -(nu + 0.5)) * std::tgamma(nu + 0.5));
}

MomentScalingCheck check_gaussian_moment(double nu, std::span<const double> ts, double tol) {
    MomentScalingCheck chk;
    chk.nu = nu;
    chk.c_nu = gaussian_moment(nu);
    for (double t : ts) {
        if (!(t > 0.0)) throw std::invalid_argument("check_gaussian_moment: t must be > 0");
        // e^{-2 t xi^2} < 1e-44 beyond sqrt(50/t); the tail is negligible
        const double cutoff = std::sqrt(50.0 / t);
        const double integral = 2.0 * integrate_tanh_sinh(
            [nu, t](double xi) { return std::pow(xi, 2.0 * nu) * std::exp(-2.0 * t * xi * xi); },
            0.0, cutoff, 1e-13, 14);
        const double measured = std::sqrt(integral);
        const double predicted = chk.c_nu * std::pow(t, -0.5 * nu - 0.25);
        chk.max_rel_err = std::max(chk.max_rel_err, std::abs(measured - predicted) / predicted);
    }
    chk.pass = chk.max_rel_err <= tol;
    return chk;
}

namespace {

// Upper end of the final bisection bracket, so the predicate holds at the
// returned point itself.
double bisect_root(const std::function<double(double)>& g) {
    double lo = 0.0, hi = 1.0;
    while (g(hi) <= 0.0) hi *= 2.0;
    while (hi - lo > 1e-11) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

bool dissipation_conditions_hold(double xi, SymbolParams p) {
    const double phi = symbol_value(xi, p);
    return phi < -1.0 && std::abs(phi) >= 0.5 * xi * xi;
}

double dissipation_threshold(SymbolParams p) {
    if (p.mu < 0.0) throw std::invalid_argument("dissipation_threshold: mu must be >= 0");
    // Phi(xi) < -1  <=>  xi^2 - mu <xi>^{-1} > 1   (strictly decreasing symbol)
    const double r1 = bisect_root([p](double xi) {
        return xi * xi - p.mu / std::sqrt(1.0 + xi * xi) - 1.0;
    });
    // |Phi(xi)| >= xi^2/2 in the dissipative range  <=>  xi^2 <xi> >= 2 mu
    double r2 = 0.0;
    if (p.mu > 0.0)
        r2 = bisect_root([p](double xi) {
            return xi * xi * std::sqrt(1.0 + xi * xi) - 2.0 * p.mu;
        });
    return std::max(r1, r2);
}

PowerExpCheck check_power_exp_max(double alpha, double beta) {
    if (!(alpha > 0.0)) throw std::invalid_argument("check_power_exp_max: alpha must be > 0");
    if (!(beta < 0.0)) throw std::invalid_argument("check_power_exp_max: beta must be < 0");
    PowerExpCheck chk;
    chk.alpha = alpha;
    chk.beta = beta;
    const double t_star = alpha / std::abs(beta);
    const double t_max = 10.0 * t_star;
    const int n = 200000;
    for (int i = 0; i <= n; ++i) {
        const double t = t_max * i / n;
        const double v = t == 0.0 ? 0.0 : std::exp(alpha * std::log(t) + t * beta);
        if (v > chk.measured) {
            chk.measured = v;
            chk.argmax = t;
        }
    }
    const double at_star = std::exp(alpha * std::log(t_star) + t_star * beta);
    if (at_star > chk.measured) {
        chk.measured = at_star;
        chk.argmax = t_star;
    }
    chk.bound = std::pow(t_star, alpha) * std::exp(-alpha);
    chk.pass = chk.measured <= chk.bound * (1.0 + 1e-9);
    return chk;
}

}  // namespace kslab
