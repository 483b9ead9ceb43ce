#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kslab/data.hpp"
#include "kslab/ops.hpp"
#include "kslab/solver.hpp"

using namespace kslab;

namespace {

constexpr double pi = std::numbers::pi;

Trajectory single_mode_linear_traj(const Grid& g, double T, int nt, double s) {
    // u(t) = e^{-t} cos(x) on L = pi (mu = 0, so Phi(1) = -1)
    Trajectory traj;
    traj.s = s;
    const SpectralField cosx = sample_real(g, [](double x) { return std::cos(x); });
    for (int j = 0; j < nt; ++j) {
        const double t = T * j / (nt - 1);
        traj.times.push_back(t);
        traj.states.push_back(std::exp(-t) * cosx);
    }
    return traj;
}

Trajectory cosine_forcing(const Grid& g, double T, int nt, double omega) {
    // per-mode forcing A_k cos(omega * t) on a few low modes
    Trajectory traj;
    traj.s = 0.75;
    for (int j = 0; j < nt; ++j) {
        const double t = T * j / (nt - 1);
        traj.times.push_back(t);
        SpectralField f = zero_field(g, false);
        for (int m : {0, 1, 2, 5}) f.coeffs[m] = (1.0 + m) * std::cos(omega * t);
        traj.states.push_back(std::move(f));
    }
    return traj;
}

// closed form of int_0^T e^{(T-tau) phi} cos(omega tau) dtau
cplx forced_integral_exact(double phi, double omega, double T) {
    const cplx i(0.0, 1.0);
    const cplx denom = i * omega - phi;
    const cplx val = std::exp(phi * T) * (std::exp(denom * T) - 1.0) / denom;
    return 0.5 * (val + std::exp(phi * T) * (std::exp((-i * omega - phi) * T) - 1.0) /
                            (-i * omega - phi));
}

SolverConfig gaussian_cfg(double T, int nt, double s, double mu) {
    SolverConfig cfg;
    cfg.T = T;
    cfg.nt = nt;
    cfg.s = s;
    cfg.params = SymbolParams{mu};
    return cfg;
}

SpectralField gaussian_data(const Grid& g, double A) {
    DataCatalogEntry e;
    e.kind = DataKind::gaussian;
    e.amplitude = A;
    return make_data(e, g);
}

}  // namespace

TEST_CASE("trajectory norm: zero and constant-in-x trajectories") {
    const Grid g(pi, 64);
    Trajectory traj;
    traj.s = 0.5;
    for (int j = 0; j < 9; ++j) {
        traj.times.push_back(j / 8.0);
        traj.states.push_back(zero_field(g));
    }
    CHECK(weighted_sup_norm(traj, 0.5).total == 0.0);

    SpectralField flat = zero_field(g);
    flat.coeffs[0] = 3.0;
    for (auto& st : traj.states) st = flat;
    const WeightedNormReport rep = weighted_sup_norm(traj, 0.5);
    CHECK(rep.sup_weighted == 0.0);
    CHECK(rep.total == doctest::Approx(sobolev_norm(flat, 0.5)).epsilon(1e-14));
}

TEST_CASE("trajectory norm: single decaying mode matches the per-node closed form") {
    const Grid g(pi, 64);
    const int nt = 33;
    const Trajectory traj = single_mode_linear_traj(g, 1.0, nt, 0.5);
    const WeightedNormReport rep = weighted_sup_norm(traj, 0.5);
    double expected_total = 0.0;
    for (int j = 0; j < nt; ++j) {
        const double t = traj.times[j];
        const double hs = std::exp(-t) * std::sqrt(pi) * std::pow(2.0, 0.25);
        const double weighted = std::pow(t, 0.25) * std::exp(-t) * std::sqrt(pi);
        CHECK(rep.nodes[j].hs == doctest::Approx(hs).epsilon(1e-10));
        CHECK(rep.nodes[j].weighted == doctest::Approx(weighted).epsilon(1e-10));
        expected_total = std::max(expected_total, hs + weighted);
    }
    CHECK(rep.total == doctest::Approx(expected_total).epsilon(1e-10));
    CHECK(rep.total >= std::max(rep.sup_hs, rep.sup_weighted));
}

TEST_CASE("duhamel: zero forcing, constant forcing closed form") {
    const Grid g(pi, 64);
    Trajectory forcing;
    forcing.s = 0.75;
    const int nt = 17;
    for (int j = 0; j < nt; ++j) {
        forcing.times.push_back(0.8 * j / (nt - 1));
        forcing.states.push_back(zero_field(g));
    }
    CHECK(max_coeff_mag(duhamel_integral(forcing, nt - 1, {1.0})) == 0.0);

    // constant-in-time forcing: integral telescopes to t phi1(t Phi(k)) g_k exactly
    SpectralField gconst = zero_field(g, false);
    for (int m : {0, 1, 3, 7}) gconst.coeffs[m] = cplx(0.3 + m, 0.1 * m);
    for (auto& st : forcing.states) st = gconst;
    const SymbolParams p{1.0};
    const SpectralField got = duhamel_integral(forcing, nt - 1, p);
    const double t_end = forcing.times[nt - 1];
    for (int m : {0, 1, 3, 7}) {
        const double phi = symbol_value(g.wavenumber(m), p);
        const cplx expected = t_end * phi_functions(t_end * phi).phi1 * gconst.coeffs[m];
        CHECK(std::abs(got.coeffs[m] - expected) < 1e-12 * std::abs(expected));
    }
    CHECK_THROWS_AS(duhamel_integral(forcing, nt, p), std::out_of_range);
}

TEST_CASE("duhamel: one-step recursion equals the direct sum") {
    const Grid g(8.0, 128);
    const SymbolParams p{1.0};
    Trajectory forcing = cosine_forcing(g, 0.7, 33, 3.0);
    const std::vector<SpectralField> all = duhamel_all(forcing, p);
    for (int j : {0, 1, 7, 16, 32}) {
        const SpectralField direct = duhamel_integral(forcing, j, p);
        const double scale = std::max(max_coeff_mag(direct), 1e-30);
        for (int i = 0; i < g.n; ++i)
            CHECK(std::abs(all[j].coeffs[i] - direct.coeffs[i]) / scale < 1e-12);
    }
}

TEST_CASE("duhamel: second order on smooth forcing (closed-form oracle)") {
    const Grid g(8.0, 128);
    const SymbolParams p{1.0};
    const double T = 1.0, omega = 3.0;
    std::vector<double> hs, errs;
    for (int nt : {17, 33, 65, 129}) {
        const Trajectory forcing = cosine_forcing(g, T, nt, omega);
        const SpectralField got = duhamel_integral(forcing, nt - 1, p);
        double err = 0.0;
        for (int m : {0, 1, 2, 5}) {
            const double phi = symbol_value(g.wavenumber(m), p);
            const cplx exact = (1.0 + m) * forced_integral_exact(phi, omega, T);
            err = std::max(err, std::abs(got.coeffs[m] - exact));
        }
        hs.push_back(T / (nt - 1));
        errs.push_back(err);
    }
    for (size_t i = 1; i < errs.size(); ++i) {
        const double order = std::log(errs[i - 1] / errs[i]) / std::log(hs[i - 1] / hs[i]);
        CHECK(order == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("picard: zero data is the fixed point after one sweep") {
    const Grid g(32.0, 256);
    SolverConfig cfg = gaussian_cfg(0.5, 33, 0.75, 1.0);
    const PicardResult res = picard_solve(zero_field(g), cfg);
    CHECK(res.iterations == 1);
    for (const auto& st : res.traj.states) CHECK(max_coeff_mag(st) == 0.0);
}

TEST_CASE("picard: with the quadratic term disabled the solution is the linear flow") {
    const Grid g(32.0, 256);
    SolverConfig cfg = gaussian_cfg(0.5, 33, 0.75, 1.0);
    cfg.linear_only = true;
    const SpectralField phi0 = gaussian_data(g, 0.5);
    const PicardResult res = picard_solve(phi0, cfg);
    CHECK(res.iterations == 1);
    for (int j = 0; j < res.traj.size(); ++j) {
        const SpectralField exact = apply_semigroup(res.traj.times[j], phi0, cfg.params);
        const double scale = std::max(max_coeff_mag(exact), 1e-30);
        for (int i = 0; i < g.n; ++i)
            CHECK(std::abs(res.traj.states[j].coeffs[i] - exact.coeffs[i]) / scale < 1e-13);
    }
}

TEST_CASE("picard: gaussian data contracts and agrees with the marching scheme") {
    const Grid g(32.0, 512);
    const SpectralField phi0 = gaussian_data(g, 0.5);
    const double s = 0.75;
    const double T = local_time_horizon(sobolev_norm(phi0, s), s);
    CHECK(T < 1.0);

    SolverConfig cfg = gaussian_cfg(T, 257, s, 1.0);
    const PicardResult res = picard_solve(phi0, cfg);
    CHECK(res.iterations <= 15);
    for (double r : res.ratios) CHECK(r < 1.0);
    // geometric decay: later ratios do not blow back up
    if (res.ratios.size() >= 2)
        CHECK(res.ratios.back() < 1.0);

    SolverConfig mcfg = gaussian_cfg(T, 2049, s, 1.0);
    mcfg.scheme = Scheme::etdrk2;
    const Trajectory march = etd_march(phi0, mcfg);
    // the marching grid contains every fixed-point node (2048 = 8 * 256)
    double worst_rel = 0.0;
    for (int j = 1; j < res.traj.size(); ++j) {
        const SpectralField& at_node = march.states[8 * j];
        worst_rel = std::max(worst_rel,
                             sobolev_norm(res.traj.states[j] - at_node, s) /
                                 sobolev_norm(at_node, s));
    }
    CHECK(worst_rel < 1e-6);

    // fixed-point residual of the converged trajectory
    Trajectory forcing;
    forcing.times = res.traj.times;
    forcing.s = s;
    for (const auto& u : res.traj.states) forcing.states.push_back(nonlinearity(u));
    const std::vector<SpectralField> integrals = duhamel_all(forcing, cfg.params);
    Trajectory fixed;
    fixed.times = res.traj.times;
    fixed.s = s;
    for (int j = 0; j < res.traj.size(); ++j)
        fixed.states.push_back(apply_semigroup(res.traj.times[j], phi0, cfg.params) +
                               integrals[j]);
    CHECK(xnorm_distance(res.traj, fixed, s) <= 2.0 * cfg.tol);
}

TEST_CASE("picard rejects windows longer than 1") {
    const Grid g(32.0, 256);
    SolverConfig cfg = gaussian_cfg(1.5, 33, 0.75, 1.0);
    CHECK_THROWS_AS(picard_solve(gaussian_data(g, 0.5), cfg), std::invalid_argument);
}

TEST_CASE("picard: oversized window on large data fails as non-contractive") {
    const Grid g(32.0, 256);
    SolverConfig cfg = gaussian_cfg(1.0, 65, 0.75, 1.0);
    cfg.max_iter = 25;
    CHECK_THROWS_AS(picard_solve(gaussian_data(g, 40.0), cfg), NonContractionError);
}

TEST_CASE("etd: linear problem is marched exactly") {
    const Grid g(32.0, 256);
    const SpectralField phi0 = gaussian_data(g, 0.5);
    for (Scheme sch : {Scheme::etd1, Scheme::etdrk2}) {
        SolverConfig cfg = gaussian_cfg(0.8, 65, 0.75, 1.0);
        cfg.scheme = sch;
        cfg.linear_only = true;
        const Trajectory traj = etd_march(phi0, cfg);
        for (int j : {1, 32, 64}) {
            const SpectralField exact = apply_semigroup(traj.times[j], phi0, cfg.params);
            const double scale = std::max(max_coeff_mag(exact), 1e-30);
            for (int i = 0; i < g.n; ++i)
                CHECK(std::abs(traj.states[j].coeffs[i] - exact.coeffs[i]) / scale < 1e-12);
        }
    }
}

TEST_CASE("etd: self-convergence orders 1 and 2") {
    const Grid g(32.0, 256);
    const SpectralField phi0 = gaussian_data(g, 0.5);
    const double s = 0.75, T = 0.3;

    auto orders = [&](Scheme sch) {
        std::vector<double> errs;
        Trajectory prev;
        for (int nt : {65, 129, 257, 513}) {
            SolverConfig cfg = gaussian_cfg(T, nt, s, 1.0);
            cfg.scheme = sch;
            const Trajectory traj = etd_march(phi0, cfg);
            if (!prev.states.empty())
                errs.push_back(sobolev_norm(traj.states.back() - prev.states.back(), s));
            prev = traj;
        }
        std::vector<double> orders;
        for (size_t i = 1; i < errs.size(); ++i)
            orders.push_back(std::log2(errs[i - 1] / errs[i]));
        return orders;
    };

    for (double p : orders(Scheme::etd1)) CHECK(p == doctest::Approx(1.0).epsilon(0.1));
    for (double p : orders(Scheme::etdrk2)) CHECK(p == doctest::Approx(2.0).epsilon(0.075));
}

TEST_CASE("etd: runaway mode reports blow-up") {
    const Grid g(32.0, 256);
    SolverConfig cfg = gaussian_cfg(1.0, 9, 0.75, 0.0);
    cfg.scheme = Scheme::etd1;
    CHECK_THROWS_AS(etd_march(gaussian_data(g, 1e9), cfg), BlowUpError);
}

TEST_CASE("local horizon: cap, exponent, power law") {
    CHECK(local_time_horizon(0.0, 0.75) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(local_time_horizon(1e-9, 0.75) == doctest::Approx(0.9).epsilon(1e-12));

    // delta(3/4) = 5/8: doubling the norm scales the uncapped branch by 2^{-8/5}
    const double t1 = local_time_horizon(3.0, 0.75);
    const double t2 = local_time_horizon(6.0, 0.75);
    CHECK(t2 / t1 == doctest::Approx(std::pow(2.0, -1.0 / 0.625)).epsilon(1e-12));
    CHECK(t1 == doctest::Approx(0.9 * std::pow(12.0, -1.6)).epsilon(1e-12));
}

TEST_CASE("global: zero data stays zero over the full horizon") {
    const Grid g(32.0, 256);
    SolverConfig tmpl = gaussian_cfg(0.1, 128, 0.75, 1.0);
    const GlobalRun run = global_solve(zero_field(g), 0.75, {1.0}, 2.0, tmpl);
    CHECK(run.traj.times.back() == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& st : run.traj.states) CHECK(max_coeff_mag(st) == 0.0);
}

TEST_CASE("global: derivative energy stays under the exponential envelope") {
    const Grid g(32.0, 512);
    SolverConfig tmpl = gaussian_cfg(0.1, 256, 0.75, 1.0);
    const GlobalRun run = global_solve(gaussian_data(g, 0.5), 0.75, {1.0}, 2.0, tmpl);
    CHECK(run.envelope_ok);
    CHECK(run.max_envelope_ratio <= 1.0 + 1e-6);
    CHECK(run.traj.times.back() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(run.traj.states[0].coeffs == run.traj.states.front().coeffs);
}

TEST_CASE("global: window count follows the horizon power law") {
    const Grid g(32.0, 256);
    SolverConfig tmpl = gaussian_cfg(0.1, 64, 0.75, 0.0);
    const double T_final = 0.2;
    for (double A : {0.5, 1.0}) {
        const SpectralField phi0 = gaussian_data(g, A);
        const GlobalRun run = global_solve(phi0, 0.75, {0.0}, T_final, tmpl);
        const int predicted = static_cast<int>(
            std::ceil(T_final / local_time_horizon(sobolev_norm(phi0, 0.75), 0.75)));
        CHECK(std::abs(run.window_count - predicted) <= 1);
    }
}

TEST_CASE("persistence norm: zero trajectory, rejection, refinement stability") {
    const Grid g(32.0, 256);
    Trajectory traj;
    traj.s = 0.75;
    for (int j = 0; j < 9; ++j) {
        traj.times.push_back(0.1 * j / 8.0);
        traj.states.push_back(zero_field(g));
    }
    CHECK(persistence_norm(traj, 0.75, 0.95) == 0.0);
    CHECK_THROWS_AS(persistence_norm(traj, 0.75, 0.75), std::invalid_argument);
    CHECK_THROWS_AS(persistence_norm(traj, 0.75, 0.5), std::invalid_argument);

    const SpectralField phi0 = gaussian_data(g, 0.5);
    const double T = local_time_horizon(sobolev_norm(phi0, 0.75), 0.75);
    SolverConfig cfg = gaussian_cfg(T, 129, 0.75, 1.0);
    const double coarse = persistence_norm(picard_solve(phi0, cfg).traj, 0.75, 0.95);
    cfg.nt = 257;
    const double fine = persistence_norm(picard_solve(phi0, cfg).traj, 0.75, 0.95);
    CHECK(std::abs(fine - coarse) / fine < 0.02);
}

TEST_CASE("second-derivative probe: zero data, polarization consistency") {
    const Grid g(32.0, 256);
    const SpectralField zero = zero_field(g);
    const SpectralField probe0 = second_derivative_probe(zero, zero, 0.75, {1.0}, 0.05, 1e-3, 33);
    CHECK(max_coeff_mag(probe0) == 0.0);

    // phi = psi: the polarization form must agree with the plain second
    // difference of a single data family up to O(eps^2)
    const SpectralField phi0 = gaussian_data(g, 0.4);
    const double s = 0.75, t = 0.05, eps = 1e-3;
    const SpectralField probe = second_derivative_probe(phi0, phi0, s, {1.0}, t, eps, 33);

    SolverConfig cfg = gaussian_cfg(t, 33, s, 1.0);
    auto endpoint = [&](double a) {
        return picard_solve(a * phi0, cfg).traj.states.back();
    };
    const SpectralField direct =
        (1.0 / (eps * eps)) * (endpoint(eps) + endpoint(-eps));
    const double scale = std::max(max_coeff_mag(direct), 1e-30);
    for (int i = 0; i < g.n; ++i)
        CHECK(std::abs(probe.coeffs[i] - direct.coeffs[i]) / scale < 1e-4);
}
