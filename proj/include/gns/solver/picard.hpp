#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "gns/diagnostics/norms.hpp"
#include "gns/solver/duhamel.hpp"

namespace gns {

struct SolverConfig {
    double T = 0.01;
    int n_times = 21;
    int quad_order = 2;
    double tol = 1e-8;
    double gamma = 1.0;
    int max_iter = 50;
    double dt = 1e-4;
    Interpolation interpolation = Interpolation::integrating_factor;
    /// etd_integrate aborts once ||u||_{L2} exceeds this multiple of ||u0||_{L2}.
    double blowup_factor = 1e6;

    /// Human-readable violations, empty when valid.
    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!(T > 0.0) || !std::isfinite(T)) v.push_back("solver.T must be positive");
        if (n_times < 2) v.push_back("solver.n_times must be >= 2");
        if (quad_order < 1) v.push_back("solver.quad_order must be >= 1");
        if (!(tol > 0.0 && tol < 1.0)) v.push_back("solver.tol must lie in (0, 1)");
        if (!(gamma > 0.0)) v.push_back("solver.gamma must be positive");
        if (max_iter < 1) v.push_back("solver.max_iter must be >= 1");
        if (!(dt > 0.0)) v.push_back("solver.dt must be positive");
        if (!(blowup_factor > 1.0)) v.push_back("solver.blowup_factor must exceed 1");
        return v;
    }
    void validate() const {
        if (auto v = violations(); !v.empty()) throw ConfigError(v);
    }
    bool operator==(const SolverConfig&) const = default;
};

struct PicardReport {
    int iterates = 0;
    std::vector<double> per_iterate_delta;
    bool converged = false;
    double residual = 0.0;                  // max over lattice times
    std::vector<double> residual_per_time;
};

inline double sup_distance(const std::vector<VelocityField>& a, const Trajectory& b, double gamma) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, sobolev_norm(a[i] - b.state(i), gamma, false));
    return d;
}

/// Heat flow e^{t Delta} u0 on the given lattice.
inline Trajectory heat_flow(const VelocityField& u0, const std::vector<double>& times) {
    Trajectory tr;
    for (double t : times) tr.push_back(t, heat_semigroup(u0, t));
    return tr;
}

/// ||u(t_i) - e^{t_i Delta} u0 - B(u,u)(t_i)||_{H^gamma} at every lattice time.
/// The Duhamel term uses the same lattice quadrature as picard_solve.
inline std::vector<double> mild_residual(const Trajectory& traj, const VelocityField& u0,
                                         const QCoefficients& coeffs, double gamma, int quad_order = 2,
                                         Interpolation mode = Interpolation::integrating_factor) {
    if (traj.empty()) throw DomainError("mild_residual: empty trajectory");
    require_same_grid(traj.grid(), u0.grid(), "mild_residual");
    const auto B = duhamel_B_lattice(coeffs, traj, traj, quad_order, mode);
    std::vector<double> r(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        VelocityField d = traj.state(i);
        d -= heat_semigroup(u0, traj.times()[i]);
        d -= B[i];
        r[i] = sobolev_norm(d, gamma, false);
    }
    return r;
}

/// u_1 = e^{t Delta} u0,  u_{n+1} = e^{t Delta} u0 + B(u_n, u_n), iterated on a
/// uniform lattice until sup_t ||u_{n+1} - u_n||_{H^gamma} <= tol.
/// Throws NonConvergenceError (with the delta history) after max_iter iterates
/// or once a delta stops being finite.
inline std::pair<Trajectory, PicardReport> picard_solve(const VelocityField& u0, const QCoefficients& coeffs,
                                                        const SolverConfig& cfg) {
    cfg.validate();
    const auto times = uniform_lattice(cfg.T, cfg.n_times);
    PicardReport rep;
    Trajectory cur = heat_flow(u0, times);
    if (u0.is_zero()) {
        rep.iterates = 1;
        rep.converged = true;
        rep.residual_per_time.assign(times.size(), 0.0);
        return {std::move(cur), rep};
    }

    rep.iterates = 1;
    while (true) {
        auto B = duhamel_B_lattice(coeffs, cur, cur, cfg.quad_order, cfg.interpolation);
        for (std::size_t i = 0; i < B.size(); ++i) B[i] += heat_semigroup(u0, times[i]);
        const double delta = sup_distance(B, cur, cfg.gamma);
        rep.per_iterate_delta.push_back(delta);
        ++rep.iterates;
        Trajectory next;
        for (std::size_t i = 0; i < B.size(); ++i) next.push_back(times[i], std::move(B[i]));
        cur = std::move(next);
        if (delta <= cfg.tol) break;
        if (!std::isfinite(delta) || rep.iterates >= cfg.max_iter) {
            std::ostringstream os;
            os << "picard_solve: no convergence after " << rep.iterates << " iterates (last delta "
               << delta << ", tol " << cfg.tol << ")";
            throw NonConvergenceError(os.str(), rep.per_iterate_delta);
        }
    }
    rep.converged = true;
    rep.residual_per_time = mild_residual(cur, u0, coeffs, cfg.gamma, cfg.quad_order, cfg.interpolation);
    rep.residual = *std::max_element(rep.residual_per_time.begin(), rep.residual_per_time.end());
    return {std::move(cur), rep};
}

}  // namespace gns
