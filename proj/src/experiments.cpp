#include "kslab/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "kslab/ops.hpp"
#include "kslab/quadrature.hpp"

namespace kslab {

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    SlopeFit fit;
    fit.npoints = static_cast<int>(x.size());
    if (x.size() != y.size() || x.size() < 3) return fit;
    std::vector<double> lx(x.size()), ly(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double n = static_cast<double>(lx.size());
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.valid = true;
    return fit;
}

const std::vector<double>& ScanReport::column(const std::string& name) const {
    for (const auto& [key, col] : columns)
        if (key == name) return col;
    throw std::out_of_range("ScanReport: no column named " + name);
}

ScanReport smoothing_scan(const SpectralField& phi0, double s, double lambda, SymbolParams p,
                          double T, int nt) {
    if (!(s > 0.5 && s < 1.0)) throw std::invalid_argument("smoothing_scan: need 1/2 < s < 1");
    if (!(lambda >= 0.0 && lambda < s - 0.5))
        throw std::invalid_argument("smoothing_scan: need 0 <= lambda < s - 1/2");
    if (!(s + lambda < 1.5)) throw std::invalid_argument("smoothing_scan: need s + lambda < 3/2");

    SolverConfig cfg;
    cfg.T = T;
    cfg.nt = nt;
    cfg.s = s;
    cfg.params = p;
    cfg.scheme = Scheme::picard;
    const Trajectory traj = picard_solve(phi0, cfg).traj;

    ScanReport rep;
    rep.abscissa_name = "t";
    std::vector<double> hs_hi, weighted;
    double sup_weighted = 0.0, max_jump = 0.0, prev = 0.0;
    for (int j = 0; j < traj.size(); ++j) {
        const double t = traj.times[j];
        const double v = sobolev_norm(traj.states[j], s + lambda);
        const double w = std::pow(t, 0.5 * lambda) * v;
        rep.abscissae.push_back(t);
        hs_hi.push_back(v);
        weighted.push_back(w);
        sup_weighted = std::max(sup_weighted, w);
        if (j >= 2) max_jump = std::max(max_jump, std::abs(v - prev));
        if (j >= 1) prev = v;
    }
    rep.columns.emplace_back("hs_plus_lambda", std::move(hs_hi));
    rep.columns.emplace_back("weighted", std::move(weighted));
    rep.scalars["sup_weighted"] = sup_weighted;
    rep.scalars["max_adjacent_jump"] = max_jump;
    rep.pass = std::isfinite(sup_weighted);
    return rep;
}

ScanReport energy_residuals(const Trajectory& traj, SymbolParams p) {
    ScanReport rep;
    rep.abscissa_name = "t";
    std::vector<double> res_w, res_u;
    if (traj.size() < 3) throw std::invalid_argument("energy_residuals: need >= 3 nodes");

    std::vector<double> w_sq(traj.size()), u_sq(traj.size());
    for (int j = 0; j < traj.size(); ++j) {
        w_sq[j] = std::pow(sobolev_norm(derivative(traj.states[j], 1), 0.0), 2);
        u_sq[j] = std::pow(sobolev_norm(traj.states[j], 0.0), 2);
    }
    for (int j = 1; j + 1 < traj.size(); ++j) {
        const double h = traj.times[j + 1] - traj.times[j];
        const SpectralField& u = traj.states[j];
        const SpectralField w = derivative(u, 1);

        const double lhs_w = (w_sq[j + 1] - w_sq[j - 1]) / (2.0 * h);
        const double rhs_w = -2.0 * std::pow(sobolev_norm(derivative(u, 2), 0.0), 2) +
                             2.0 * p.mu * std::pow(sobolev_norm(w, -0.5), 2);

        const double lhs_u = (u_sq[j + 1] - u_sq[j - 1]) / (2.0 * h);
        const double rhs_u = 2.0 * inner_product(u, derivative(u, 2)) +
                             2.0 * inner_product(u, nonlinearity(u)) +
                             2.0 * p.mu * inner_product(u, bessel_potential(u, -1.0));

        rep.abscissae.push_back(traj.times[j]);
        res_w.push_back(std::abs(lhs_w - rhs_w));
        res_u.push_back(std::abs(lhs_u - rhs_u));
    }
    rep.columns.emplace_back("residual_w", std::move(res_w));
    rep.columns.emplace_back("residual_u", std::move(res_u));
    return rep;
}

ScanReport mu_limit_experiment(const SpectralField& phi0, double s,
                               std::span<const double> mu_list, double T, int nt) {
    if (!(s > 0.5 && s < 1.0)) throw std::invalid_argument("mu_limit_experiment: need 1/2 < s < 1");

    SolverConfig cfg;
    cfg.T = T;
    cfg.nt = nt;
    cfg.s = s;
    cfg.scheme = Scheme::picard;

    auto solve_at = [&](double mu) {
        cfg.params = SymbolParams{mu};
        try {
            return picard_solve(phi0, cfg).traj;
        } catch (NonContractionError& e) {
            throw NonContractionError(std::string(e.what()) + " [mu = " + std::to_string(mu) + "]");
        } catch (BlowUpError& e) {
            throw BlowUpError(std::string(e.what()) + " [mu = " + std::to_string(mu) + "]");
        }
    };
    const Trajectory base = solve_at(0.0);

    ScanReport rep;
    rep.abscissa_name = "mu";
    std::vector<double> sup_diff;
    for (double mu : mu_list) {
        const Trajectory traj = solve_at(mu);
        double d = 0.0;
        for (int j = 0; j < traj.size(); ++j)
            d = std::max(d, sobolev_norm(traj.states[j] - base.states[j], s));
        rep.abscissae.push_back(mu);
        sup_diff.push_back(d);
    }

    bool decreasing = true;
    for (size_t i = 1; i < sup_diff.size(); ++i)
        if (!(sup_diff[i] < sup_diff[i - 1])) decreasing = false;
    const bool quartered =
        sup_diff.size() >= 4 ? sup_diff.back() <= sup_diff.front() / 4.0 : true;
    rep.pass = decreasing && quartered;
    rep.fits["sup_diff_hs"] = fit_loglog(rep.abscissae, sup_diff);
    rep.columns.emplace_back("sup_diff_hs", std::move(sup_diff));
    rep.notes.push_back(decreasing ? "strictly_decreasing" : "NOT_strictly_decreasing");
    return rep;
}

namespace {

cplx bilinear_point(const SupportedProfile& phi_hat, const SupportedProfile& psi_hat,
                    SymbolParams p, double t, double xi, int m_points) {
    // z = xi - eta must land in supp(phi_hat)
    const double lo = std::max(psi_hat.lo, xi - phi_hat.hi);
    const double hi = std::min(psi_hat.hi, xi - phi_hat.lo);
    if (!(hi > lo)) return cplx(0.0, 0.0);

    const double phi_xi = symbol_value(xi, p);
    auto integrand = [&](double eta) -> cplx {
        const double z = xi - eta;
        const double D = -phi_xi + symbol_value(z, p) + symbol_value(eta, p);
        const double kernel = t * phi_functions(t * D).phi1;  // (e^{tD}-1)/D, stable form
        return z * eta * phi_hat.value(z) * psi_hat.value(eta) * kernel;
    };
    // trapezoid on the exact overlap
    cplx acc = 0.5 * (integrand(lo) + integrand(hi));
    const double h = (hi - lo) / m_points;
    for (int j = 1; j < m_points; ++j) acc += integrand(lo + j * h);
    acc *= h;
    return -0.5 * std::exp(t * phi_xi) * acc;
}

double window_hs_norm(const std::vector<double>& xi, const std::vector<cplx>& f, double s) {
    // trapezoid of <xi>^{2s} |f|^2 over the window
    std::vector<double> g(xi.size());
    for (size_t i = 0; i < xi.size(); ++i)
        g[i] = std::pow(1.0 + xi[i] * xi[i], s) * std::norm(f[i]);
    double acc = 0.0;
    for (size_t i = 1; i < xi.size(); ++i) acc += 0.5 * (g[i] + g[i - 1]) * (xi[i] - xi[i - 1]);
    return std::sqrt(acc);
}

}  // namespace

BilinearResult bilinear_duhamel(const SupportedProfile& phi_hat, const SupportedProfile& psi_hat,
                                double s, SymbolParams p, double t, int quad_points,
                                double win_lo, double win_hi, int win_points) {
    if (t < 0.0) throw std::invalid_argument("bilinear_duhamel: t must be >= 0");
    if (quad_points < 8) throw std::invalid_argument("bilinear_duhamel: quad_points too small");
    if (win_points < 9) throw std::invalid_argument("bilinear_duhamel: window grid too coarse");

    BilinearResult res;
    res.xi.resize(static_cast<size_t>(win_points));
    for (int i = 0; i < win_points; ++i)
        res.xi[i] = win_lo + (win_hi - win_lo) * i / (win_points - 1);

    const double unit = std::max(psi_hat.hi - psi_hat.lo, 1e-12);
    auto evaluate = [&](int per_unit, std::vector<cplx>& out) {
        out.resize(res.xi.size());
        for (size_t i = 0; i < res.xi.size(); ++i) {
            const double xi = res.xi[i];
            const double lo = std::max(psi_hat.lo, xi - phi_hat.hi);
            const double hi = std::min(psi_hat.hi, xi - phi_hat.lo);
            const int m = hi > lo
                              ? std::max(8, static_cast<int>(std::ceil(per_unit * (hi - lo) / unit)))
                              : 8;
            out[i] = t == 0.0 ? cplx(0.0, 0.0)
                              : bilinear_point(phi_hat, psi_hat, p, t, xi, m);
        }
    };

    std::vector<cplx> coarse, fine;
    evaluate(quad_points, coarse);
    evaluate(2 * quad_points, fine);
    const double n_coarse = window_hs_norm(res.xi, coarse, s);
    const double n_fine = window_hs_norm(res.xi, fine, s);
    if (t > 0.0 && n_fine > 0.0 && std::abs(n_fine - n_coarse) > 1e-3 * n_fine)
        throw QuadratureError("bilinear_duhamel: window norm moved " +
                              std::to_string(std::abs(n_fine - n_coarse) / n_fine) +
                              " on refinement");
    res.f = std::move(fine);
    res.hs_window_norm = n_fine;
    res.quad_points_used = 2 * quad_points;
    return res;
}

double box_profile_hs_norm(double amplitude, double lo, double hi, double s) {
    const double integral = integrate_tanh_sinh(
        [s](double xi) { return std::pow(1.0 + xi * xi, s); }, lo, hi, 1e-12, 12);
    return amplitude * std::sqrt(integral);
}

std::string illposed_fit_key(double s, AmplitudeRule rule, const std::string& column) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "s=%g/%s/", s,
                  rule == AmplitudeRule::paper ? "paper" : "normalized");
    return std::string(buf) + column;
}

IllposedReport illposed_scaling_scan(const BoxPairSpec& tmpl, std::span<const double> N_list,
                                     double t, std::span<const double> s_list, SymbolParams p,
                                     int quad_points) {
    if (N_list.size() < 3) throw std::invalid_argument("illposed_scaling_scan: need >= 3 N values");
    for (double N : N_list)
        if (!(N >= 8.0)) throw std::invalid_argument("illposed_scaling_scan: N must be >= 8");
    const double n_min = *std::min_element(N_list.begin(), N_list.end());
    if (!(t * n_min * n_min >= 20.0))
        throw std::invalid_argument("illposed_scaling_scan: need t*N_min^2 >= 20");

    IllposedReport rep;
    for (AmplitudeRule rule : {AmplitudeRule::paper, AmplitudeRule::normalized}) {
        for (double s : s_list) {
            std::vector<double> f_vals, phi_vals, ratio_vals, ns(N_list.begin(), N_list.end());
            for (double N : N_list) {
                BoxPairSpec spec = tmpl;
                spec.N = N;
                spec.s = s;
                spec.rule = rule;
                const double a = box_amplitude(spec);
                const double r = spec.r;

                SupportedProfile phi_hat{[a](double) { return cplx(a, 0.0); }, -N, -N + r};
                SupportedProfile psi_hat{[a](double) { return cplx(a, 0.0); }, N + r, N + 2.0 * r};
                const BilinearResult bl =
                    bilinear_duhamel(phi_hat, psi_hat, s, p, t, quad_points, r, 3.0 * r);

                IllposedRow row;
                row.s = s;
                row.N = N;
                row.r = r;
                row.t = t;
                row.rule = rule;
                row.f_hs = bl.hs_window_norm;
                row.phi_hs = box_profile_hs_norm(a, -N, -N + r, s);
                row.psi_hs = box_profile_hs_norm(a, N + r, N + 2.0 * r, s);
                row.ratio = row.f_hs / (row.phi_hs * row.psi_hs);
                rep.rows.push_back(row);

                f_vals.push_back(row.f_hs);
                phi_vals.push_back(row.phi_hs);
                ratio_vals.push_back(row.ratio);
            }
            rep.fits[illposed_fit_key(s, rule, "f_hs")] = fit_loglog(ns, f_vals);
            rep.fits[illposed_fit_key(s, rule, "phi_hs")] = fit_loglog(ns, phi_vals);
            rep.fits[illposed_fit_key(s, rule, "ratio")] = fit_loglog(ns, ratio_vals);
        }
    }
    return rep;
}

}  // namespace kslab
