#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kslab/data.hpp"
#include "kslab/solver.hpp"

namespace kslab {

struct SlopeFit {
    double slope = 0, intercept = 0, rms_residual = 0;
    int npoints = 0;
    bool valid = false;  // requires >= 3 points
};
SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y);

// Generic scan result: one abscissa column plus named value columns, optional
// log-log fits keyed by column name.
struct ScanReport {
    std::string abscissa_name;
    std::vector<double> abscissae;
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    std::map<std::string, SlopeFit> fits;
    std::map<std::string, double> scalars;
    bool pass = true;
    std::vector<std::string> notes;

    const std::vector<double>& column(const std::string& name) const;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instant-regularization measurement: solves from H^s data and reports
// ||u(t)||_{H^{s+lambda}} and t^{lambda/2} ||u(t)||_{H^{s+lambda}} per node,
// plus the largest adjacent jump of the higher norm (continuity proxy).
// Requires 1/2 < s < 1, 0 <= lambda < s - 1/2, s + lambda < 3/2.
ScanReport smoothing_scan(const SpectralField& phi0, double s, double lambda, SymbolParams p,
                          double T, int nt);

// Node-wise defects of the two exact balance identities
//   d/dt ||du/dx||^2 = -2 ||d2u/dx2||^2 + 2 mu ||du/dx||^2_{H^{-1/2}}
//   d/dt ||u||^2     = 2<u, d2u/dx2> + <u, (du/dx)^2> + 2 mu <u, (1-d2/dx2)^{-1/2} u>
// with centered time differences and spectral inner products.
ScanReport energy_residuals(const Trajectory& traj, SymbolParams p);

// Runs the solver for each mu in mu_list plus the mu = 0 limit on a shared
// time grid and reports D(mu) = max_j ||u_mu(t_j) - u_0(t_j)||_{H^s}.
// pass requires strict decrease along the list and D(last) <= D(first)/4.
ScanReport mu_limit_experiment(const SpectralField& phi0, double s,
                               std::span<const double> mu_list, double T, int nt);

// A compactly supported spectral profile for the bilinear quadrature.
struct SupportedProfile {
    std::function<cplx(double)> value;
    double lo = 0.0;
    double hi = 0.0;
};

struct BilinearResult {
    std::vector<double> xi;
    std::vector<cplx> f;
    double hs_window_norm = 0.0;
    int quad_points_used = 0;
};

// Second-order Duhamel response of the linear flow:
//   f(xi,t) = -(e^{t Phi(xi)}/2) int z eta phi^(z) psi^(eta) t phi1(t D) deta,
// z = xi - eta, D = -Phi(xi) + Phi(z) + Phi(eta), evaluated on a xi-grid over
// [win_lo, win_hi] by trapezoid quadrature with quad_points per unit support
// width.  The phi1 form of the resonance kernel is used everywhere.  Throws
// QuadratureError if doubling the points moves the window norm by > 0.1%.
BilinearResult bilinear_duhamel(const SupportedProfile& phi_hat, const SupportedProfile& psi_hat,
                                double s, SymbolParams p, double t, int quad_points,
                                double win_lo, double win_hi, int win_points = 129);

// One row of the high-frequency scaling scan.
struct IllposedRow {
    double s = 0, N = 0, r = 0, t = 0;
    AmplitudeRule rule = AmplitudeRule::paper;
    double f_hs = 0, phi_hs = 0, psi_hs = 0, ratio = 0;
};
struct IllposedReport {
    std::vector<IllposedRow> rows;
    // keys like "s=0.25/paper/f_hs"
    std::map<std::string, SlopeFit> fits;
    bool pass = true;
    std::vector<std::string> notes;
};
std::string illposed_fit_key(double s, AmplitudeRule rule, const std::string& column);

// For each (s, N, amplitude rule): box-pair amplitudes, closed-form H^s norms
// of the data (quadrature of <xi>^{2s} over the boxes), the bilinear window
// norm, and the ratio ||f|| / (||phi|| ||psi||); fits log-log slopes vs N.
IllposedReport illposed_scaling_scan(const BoxPairSpec& tmpl, std::span<const double> N_list,
                                     double t, std::span<const double> s_list, SymbolParams p,
                                     int quad_points);

// a * sqrt( int_I <xi>^{2s} dxi ) for a box [lo, hi) with constant amplitude a.
double box_profile_hs_norm(double amplitude, double lo, double hi, double s);

}  // namespace kslab
