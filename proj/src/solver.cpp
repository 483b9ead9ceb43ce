// Duhamel-form solver: whole-interval Picard iteration on a shared time grid
// and exponential-integrator marching, both built on exact per-mode
// exponentials so the linear flow carries no quadrature error.

#include "kslab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "kslab/ops.hpp"

namespace kslab {

namespace {

constexpr double blowup_threshold = 1e12;

std::vector<double> uniform_times(double T, int nt) {
    std::vector<double> ts(static_cast<size_t>(nt));
    for (int j = 0; j < nt; ++j) ts[j] = T * j / (nt - 1);
    return ts;
}

void check_config(const SolverConfig& cfg) {
    if (!(cfg.T > 0.0)) throw std::invalid_argument("SolverConfig: T must be > 0");
    if (cfg.nt < 2) throw std::invalid_argument("SolverConfig: nt must be >= 2");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
    if (cfg.scheme == Scheme::picard && cfg.T > 1.0)
        throw std::invalid_argument("SolverConfig: Picard windows require T <= 1");
}

// Per-mode step weights for one uniform substep dt.
struct StepWeights {
    std::vector<double> exp_h;   // e^{dt Phi(k)}
    std::vector<double> w_phi1;  // phi1(dt Phi(k))
    std::vector<double> w_phi2;  // phi2(dt Phi(k))
};

StepWeights step_weights(const Grid& g, SymbolParams p, double dt) {
    StepWeights w;
    const std::vector<double> phi = symbol_on_grid(g, p);
    w.exp_h.resize(phi.size());
    w.w_phi1.resize(phi.size());
    w.w_phi2.resize(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) {
        const double z = dt * phi[i];
        w.exp_h[i] = std::exp(z);
        const PhiPair pp = phi_functions(z);
        w.w_phi1[i] = pp.phi1;
        w.w_phi2[i] = pp.phi2;
    }
    return w;
}

void check_blowup(const SpectralField& f, double t) {
    if (max_coeff_mag(f) > blowup_threshold)
        throw BlowUpError("mode magnitude exceeded 1e12 at t = " + std::to_string(t));
}

SpectralField forcing_term(const SpectralField& u, const SolverConfig& cfg) {
    if (cfg.linear_only) return zero_field(u.grid);
    return nonlinearity(u);
}

}  // namespace

WeightedNormReport weighted_sup_norm(const Trajectory& traj, double s) {
    if (traj.size() == 0) throw std::invalid_argument("weighted_sup_norm: empty trajectory");
    WeightedNormReport rep;
    rep.nodes.reserve(traj.states.size());
    for (int j = 0; j < traj.size(); ++j) {
        NodeNorm nn;
        nn.t = traj.times[j];
        nn.hs = sobolev_norm(traj.states[j], s);
        nn.dx_l2 = sobolev_norm(derivative(traj.states[j], 1), 0.0);
        // t^{(1-s)/2}: the limit value 0 applies at t = 0 for s < 1
        nn.weighted = std::pow(nn.t, 0.5 * (1.0 - s)) * nn.dx_l2;
        rep.sup_hs = std::max(rep.sup_hs, nn.hs);
        rep.sup_weighted = std::max(rep.sup_weighted, nn.weighted);
        rep.total = std::max(rep.total, nn.hs + nn.weighted);
        rep.nodes.push_back(nn);
    }
    return rep;
}

double xnorm_distance(const Trajectory& a, const Trajectory& b, double s) {
    if (a.size() != b.size()) throw std::invalid_argument("xnorm_distance: node counts differ");
    Trajectory diff;
    diff.times = a.times;
    diff.s = s;
    diff.states.reserve(a.states.size());
    for (int j = 0; j < a.size(); ++j) diff.states.push_back(a.states[j] - b.states[j]);
    return weighted_sup_norm(diff, s).total;
}

SpectralField duhamel_integral(const Trajectory& forcing, int t_index, SymbolParams p) {
    if (t_index < 0 || t_index >= forcing.size())
        throw std::out_of_range("duhamel_integral: node index out of range");
    const Grid& g = forcing.states[0].grid;
    SpectralField acc = zero_field(g, forcing.states[0].hermitian);
    if (t_index == 0) return acc;

    const std::vector<double> phi = symbol_on_grid(g, p);
    const double tj = forcing.times[t_index];
    for (int i = 0; i < t_index; ++i) {
        const double h = forcing.times[i + 1] - forcing.times[i];
        const SpectralField& g0 = forcing.states[i];
        const SpectralField& g1 = forcing.states[i + 1];
        for (int m = 0; m < g.n; ++m) {
            const double z = h * phi[m];
            const PhiPair pp = phi_functions(z);
            const double lead = std::exp((tj - forcing.times[i + 1]) * phi[m]) * h;
            acc.coeffs[m] += lead * (g0.coeffs[m] * pp.phi1 +
                                     (g1.coeffs[m] - g0.coeffs[m]) * pp.phi2);
        }
    }
    return acc;
}

std::vector<SpectralField> duhamel_all(const Trajectory& forcing, SymbolParams p) {
    const Grid& g = forcing.states[0].grid;
    const int nt = forcing.size();
    std::vector<SpectralField> out;
    out.reserve(static_cast<size_t>(nt));
    out.push_back(zero_field(g, forcing.states[0].hermitian));
    if (nt == 1) return out;

    const double h = forcing.times[1] - forcing.times[0];
    for (int j = 1; j < nt; ++j)
        if (std::abs(forcing.times[j] - forcing.times[j - 1] - h) > 1e-12 * std::max(h, 1.0))
            throw std::invalid_argument("duhamel_all: time grid must be uniform");
    const StepWeights w = step_weights(g, p, h);
    for (int j = 1; j < nt; ++j) {
        SpectralField cur = zero_field(g, forcing.states[0].hermitian);
        const SpectralField& prev = out.back();
        const SpectralField& g0 = forcing.states[j - 1];
        const SpectralField& g1 = forcing.states[j];
        for (int m = 0; m < g.n; ++m) {
            cur.coeffs[m] = w.exp_h[m] * prev.coeffs[m] +
                            h * ((w.w_phi1[m] - w.w_phi2[m]) * g0.coeffs[m] +
                                 w.w_phi2[m] * g1.coeffs[m]);
        }
        out.push_back(std::move(cur));
    }
    return out;
}

PicardResult picard_solve(const SpectralField& phi0, const SolverConfig& cfg) {
    check_config(cfg);
    if (cfg.scheme != Scheme::picard)
        throw std::invalid_argument("picard_solve: config selects a marching scheme");

    PicardResult res;
    res.traj.s = cfg.s;
    res.traj.times = uniform_times(cfg.T, cfg.nt);

    // u^0 = linear evolution of the data
    res.traj.states.reserve(static_cast<size_t>(cfg.nt));
    for (int j = 0; j < cfg.nt; ++j)
        res.traj.states.push_back(apply_semigroup(res.traj.times[j], phi0, cfg.params));

    int rising = 0;
    for (int m = 0; m < cfg.max_iter; ++m) {
        Trajectory forcing;
        forcing.times = res.traj.times;
        forcing.s = cfg.s;
        forcing.states.reserve(res.traj.states.size());
        for (const auto& u : res.traj.states) forcing.states.push_back(forcing_term(u, cfg));

        std::vector<SpectralField> integrals = duhamel_all(forcing, cfg.params);
        Trajectory next;
        next.times = res.traj.times;
        next.s = cfg.s;
        next.states.reserve(res.traj.states.size());
        for (int j = 0; j < cfg.nt; ++j) {
            SpectralField u = apply_semigroup(res.traj.times[j], phi0, cfg.params) + integrals[j];
            check_blowup(u, res.traj.times[j]);
            next.states.push_back(std::move(u));
        }

        const double dist = xnorm_distance(next, res.traj, cfg.s);
        if (!res.distances.empty()) {
            res.ratios.push_back(res.distances.back() > 0.0 ? dist / res.distances.back() : 0.0);
            rising = dist > res.distances.back() ? rising + 1 : 0;
        }
        res.distances.push_back(dist);
        res.traj = std::move(next);
        res.iterations = m + 1;

        if (dist < cfg.tol) return res;
        if (rising >= 3)
            throw NonContractionError("Picard distances rose 3 times in a row (T = " +
                                      std::to_string(cfg.T) + " too long for the data)");
    }
    throw NonContractionError("Picard did not reach tol within max_iter (T = " +
                              std::to_string(cfg.T) + ")");
}

Trajectory etd_march(const SpectralField& phi0, const SolverConfig& cfg) {
    check_config(cfg);
    if (cfg.scheme != Scheme::etd1 && cfg.scheme != Scheme::etdrk2)
        throw std::invalid_argument("etd_march: config selects Picard");

    Trajectory traj;
    traj.s = cfg.s;
    traj.times = uniform_times(cfg.T, cfg.nt);
    traj.states.reserve(static_cast<size_t>(cfg.nt));
    traj.states.push_back(phi0);

    const Grid& g = phi0.grid;
    const double h = traj.times[1] - traj.times[0];
    const StepWeights w = step_weights(g, cfg.params, h);

    for (int j = 1; j < cfg.nt; ++j) {
        const SpectralField& u = traj.states.back();
        const SpectralField nu = forcing_term(u, cfg);
        SpectralField stage = zero_field(g);
        for (int m = 0; m < g.n; ++m)
            stage.coeffs[m] = w.exp_h[m] * u.coeffs[m] + h * w.w_phi1[m] * nu.coeffs[m];

        if (cfg.scheme == Scheme::etdrk2) {
            const SpectralField nu2 = forcing_term(stage, cfg);
            for (int m = 0; m < g.n; ++m)
                stage.coeffs[m] += h * w.w_phi2[m] * (nu2.coeffs[m] - nu.coeffs[m]);
        }
        check_blowup(stage, traj.times[j]);
        traj.states.push_back(std::move(stage));
    }
    return traj;
}

double local_time_horizon(double phi_norm, double s, double contraction_const) {
    if (phi_norm < 0.0) throw std::invalid_argument("local_time_horizon: negative norm");
    if (!(contraction_const > 0.0))
        throw std::invalid_argument("local_time_horizon: constant must be > 0");
    const double delta = 0.5 * s + 0.25;
    double T = 1.0;
    const double denom = 4.0 * contraction_const * contraction_const * phi_norm;
    if (denom > 0.0) T = std::min(T, std::pow(denom, -1.0 / delta));
    return 0.9 * T;
}

GlobalRun global_solve(const SpectralField& phi0, double s, SymbolParams p, double T_final,
                       const SolverConfig& tmpl) {
    if (!(T_final > 0.0)) throw std::invalid_argument("global_solve: T_final must be > 0");

    GlobalRun run;
    run.traj.s = s;
    run.traj.times.push_back(0.0);
    run.traj.states.push_back(phi0);
    run.initial_dx_sq = std::pow(sobolev_norm(derivative(phi0, 1), 0.0), 2);

    SpectralField cur = phi0;
    double t0 = 0.0;
    const int max_windows = 200000;
    while (t0 < T_final * (1.0 - 1e-12)) {
        if (run.window_count >= max_windows)
            throw NonContractionError("global_solve: window budget exhausted at t = " +
                                      std::to_string(t0));
        const double hs_now = sobolev_norm(cur, s);
        double Tw = local_time_horizon(hs_now, s, tmpl.contraction_const);
        Tw = std::min(Tw, T_final - t0);

        SolverConfig cfg = tmpl;
        cfg.T = Tw;
        cfg.s = s;
        cfg.params = p;
        // node budget proportional to the window length, never below 8 steps
        cfg.nt = std::max(9, static_cast<int>(std::ceil(tmpl.nt * Tw)) + 1);

        const bool use_picard = tmpl.scheme == Scheme::picard && t0 < 1.0;
        Trajectory piece;
        try {
            if (use_picard) {
                cfg.scheme = Scheme::picard;
                piece = picard_solve(cur, cfg).traj;
            } else {
                cfg.scheme = tmpl.scheme == Scheme::picard ? Scheme::etdrk2 : tmpl.scheme;
                piece = etd_march(cur, cfg);
            }
        } catch (NonContractionError& e) {
            throw NonContractionError(std::string(e.what()) + " [window " + std::to_string(t0) +
                                      " .. " + std::to_string(t0 + Tw) + "]");
        } catch (BlowUpError& e) {
            throw BlowUpError(std::string(e.what()) + " [window " + std::to_string(t0) + " .. " +
                              std::to_string(t0 + Tw) + "]");
        }

        for (int j = 1; j < piece.size(); ++j) {
            run.traj.times.push_back(t0 + piece.times[j]);
            run.traj.states.push_back(piece.states[j]);
        }
        run.window_starts.push_back(t0);
        ++run.window_count;
        cur = run.traj.states.back();
        t0 += Tw;
    }

    for (int j = 0; j < run.traj.size(); ++j) {
        const double dx_sq = std::pow(sobolev_norm(derivative(run.traj.states[j], 1), 0.0), 2);
        const double envelope = std::exp(2.0 * p.mu * run.traj.times[j]) * run.initial_dx_sq;
        if (envelope > 0.0)
            run.max_envelope_ratio = std::max(run.max_envelope_ratio, dx_sq / envelope);
    }
    run.envelope_ok = run.max_envelope_ratio <= 1.0 + 1e-6;
    return run;
}

double persistence_norm(const Trajectory& traj, double s, double s_hi) {
    if (!(s_hi > s)) throw std::invalid_argument("persistence_norm: need s_hi > s");
    double weighted = 0.0;
    for (int j = 0; j < traj.size(); ++j) {
        const double val = sobolev_norm(traj.states[j], s_hi - s);  // ||J^{s_hi-s} u||_{L^2}
        weighted = std::max(weighted, std::pow(traj.times[j], 0.5 * s) * val);
    }
    return weighted_sup_norm(traj, s_hi).total + weighted;
}

SpectralField second_derivative_probe(const SpectralField& phi0, const SpectralField& psi0,
                                      double s, SymbolParams p, double t, double eps, int nt) {
    if (!(eps > 0.0)) throw std::invalid_argument("second_derivative_probe: eps must be > 0");
    SolverConfig cfg;
    cfg.T = t;
    cfg.nt = nt;
    cfg.s = s;
    cfg.params = p;
    cfg.scheme = Scheme::picard;

    const SpectralField sum = phi0 + psi0;
    const SpectralField dif = phi0 - psi0;
    auto endpoint = [&](double a, const SpectralField& dir) {
        return picard_solve(a * dir, cfg).traj.states.back();
    };
    const SpectralField probe = (endpoint(eps, sum) - endpoint(eps, dif)) +
                                (endpoint(-eps, sum) - endpoint(-eps, dif));
    return (1.0 / (4.0 * eps * eps)) * probe;
}

double linear_xnorm_ratio(const SpectralField& phi0, double s, double T, int nt, SymbolParams p) {
    const double denom = sobolev_norm(phi0, s);
    if (denom == 0.0) throw std::invalid_argument("linear_xnorm_ratio: zero input field");
    Trajectory traj;
    traj.s = s;
    traj.times = uniform_times(T, nt);
    traj.states.reserve(static_cast<size_t>(nt));
    for (int j = 0; j < nt; ++j) traj.states.push_back(apply_semigroup(traj.times[j], phi0, p));
    return weighted_sup_norm(traj, s).total / denom;
}

}  // namespace kslab
