#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kslab/symbol.hpp"

namespace kslab {

enum class Scheme { picard, etd1, etdrk2 };

struct SolverConfig {
    double T = 0.1;          // window length
    int nt = 256;            // uniform time nodes (including t = 0)
    double s = 0.75;         // Sobolev index of the run
    SymbolParams params{};
    Scheme scheme = Scheme::picard;
    double tol = 1e-10;      // Picard stopping tolerance in the trajectory norm
    int max_iter = 50;
    bool linear_only = false;       // test hook: drop the quadratic term
    double contraction_const = 1.0; // stands in for the unquantified bilinear constant
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> states;
    double s = 0.75;

    int size() const { return static_cast<int>(times.size()); }
};

// Raised when Picard distances stop decreasing (window too long for the data).
struct NonContractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when a marched mode exceeds 1e12 in magnitude.
struct BlowUpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sup_t ( ||u(t)||_{H^s} + t^{(1-s)/2} ||du/dx(t)||_{L^2} ), with the t = 0
// node contributing only the H^s term for s < 1.
struct NodeNorm {
    double t = 0, hs = 0, dx_l2 = 0, weighted = 0;
};
struct WeightedNormReport {
    double total = 0, sup_hs = 0, sup_weighted = 0;
    std::vector<NodeNorm> nodes;
};
WeightedNormReport weighted_sup_norm(const Trajectory& traj, double s);
double xnorm_distance(const Trajectory& a, const Trajectory& b, double s);

// int_0^{t_j} E(t_j - tau) g(tau) dtau for a stored forcing trajectory g,
// linear in tau on each subinterval; per-mode exact exponential weights
// (phi1/phi2 of dt*Phi(k)), second order in dt.
SpectralField duhamel_integral(const Trajectory& forcing, int t_index, SymbolParams p);
// All nodes at once via the exact one-step recursion; matches
// duhamel_integral node-by-node up to roundoff.
std::vector<SpectralField> duhamel_all(const Trajectory& forcing, SymbolParams p);

struct PicardResult {
    Trajectory traj;
    int iterations = 0;
    std::vector<double> distances;  // ||u^{m+1} - u^m||_X
    std::vector<double> ratios;     // successive distance ratios
};

// Whole-interval fixed-point iteration for the integral form
// u = E(t) phi + int_0^t E(t-tau) (1/2)(du/dx)^2 dtau.
PicardResult picard_solve(const SpectralField& phi0, const SolverConfig& cfg);

// Exponential-integrator marching: first-order exponential Euler (etd1) or
// the two-stage second-order variant (etdrk2).
Trajectory etd_march(const SpectralField& phi0, const SolverConfig& cfg);

// 0.9 * min{ (4 C^2 ||phi||_{H^s})^{-1/delta(s)}, 1 } with delta(s) = s/2 + 1/4.
double local_time_horizon(double phi_norm, double s, double contraction_const = 1.0);

// Continuation to T_final on windows sized by local_time_horizon at the
// running state's H^s norm; Picard windows while t < 1, exponential marching
// after (or throughout when the template asks for it).  Records the
// derivative energy against the exponential a priori envelope.
struct GlobalRun {
    Trajectory traj;
    int window_count = 0;
    std::vector<double> window_starts;
    double initial_dx_sq = 0;       // ||phi'||^2
    double max_envelope_ratio = 0;  // max_t ||du/dx||^2 / (e^{2 mu t} ||phi'||^2)
    bool envelope_ok = false;
};
GlobalRun global_solve(const SpectralField& phi0, double s, SymbolParams p, double T_final,
                       const SolverConfig& tmpl);

// ||u||_{X^{s_hi}} + sup_t t^{s/2} ||J^{s_hi - s} u(t)||_{L^2}; requires s_hi > s.
// The time weights keep the t = 0 node finite only for s_hi <= 1.
double persistence_norm(const Trajectory& traj, double s, double s_hi);

// Central second difference of the data-to-solution map at 0 along the
// polarization directions eps(phi+psi), eps(phi-psi); converges to
// 2 int_0^t E(t-tau) (1/2) d_x(E phi) d_x(E psi) dtau as eps -> 0.
SpectralField second_derivative_probe(const SpectralField& phi0, const SpectralField& psi0,
                                      double s, SymbolParams p, double t, double eps,
                                      int nt = 256);

}  // namespace kslab
