#pragma once

#include <cmath>
#include <limits>

#include "gns/solver/trajectory.hpp"

namespace gns {

/// Exponents beyond this (natural-log units) are reported as an infinite norm.
inline constexpr double kOverflowGuard = 700.0;

/// ||u||_{H^s} or ||u||_{\dot H^s}, components summed in quadrature.
inline double sobolev_norm(const VelocityField& u, double s, bool homogeneous) {
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double c = shell_reduce_weighted_l2(u[j], s, homogeneous);
        acc += c * c;
    }
    return std::sqrt(acc);
}

/// Homogeneous Sobolev norm restricted to |k| >= cutoff.
inline double sobolev_tail(const VelocityField& u, double s, double cutoff) {
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double c = shell_reduce_weighted_l2(u[j], s, true, cutoff);
        acc += c * c;
    }
    return std::sqrt(acc);
}

namespace detail {

/// (sum_{|k| >= cutoff} (|k|^s e^{E(|k|)} |u(k)|)^2)^{1/2} with the
/// exponential factored out at its maximum; +inf once E exceeds the guard.
template <class Exponent>
double exp_weighted_norm(const VelocityField& u, double s, double cutoff, Exponent&& E) {
    const Grid& g = u.grid();
    double emax = -std::numeric_limits<double>::infinity();
    for_each_mode(g, [&](const Mode& m) {
        const double kabs = m.kabs();
        if (kabs < cutoff) return;
        if (u[0].data()[m.idx] == cplx{} && u[1].data()[m.idx] == cplx{} &&
            u[2].data()[m.idx] == cplx{})
            return;
        emax = std::max(emax, E(kabs));
    });
    if (emax == -std::numeric_limits<double>::infinity()) return 0.0;
    if (emax > kOverflowGuard) return std::numeric_limits<double>::infinity();
    long double acc = 0.0L;
    for_each_mode(g, [&](const Mode& m) {
        const double kabs = m.kabs();
        if (kabs < cutoff) return;
        double a2 = 0.0;
        for (int j = 0; j < 3; ++j) a2 += std::norm(u[j].data()[m.idx]);
        if (a2 == 0.0) return;
        const double w = (s == 0.0 ? 1.0 : std::pow(kabs, s)) * std::exp(E(kabs) - emax);
        acc += static_cast<long double>(m.multiplicity) * w * w * a2;
    });
    return std::sqrt(static_cast<double>(acc)) * std::exp(emax);
}

}  // namespace detail

/// || |k|^s e^{r|k|} u(k) ||, components in quadrature. Returns +inf when
/// r * |k| exceeds the overflow guard on the support of u.
inline double gevrey_norm(const VelocityField& u, double r, double s) {
    if (!(r >= 0.0)) throw DomainError("gevrey_norm: r must be nonnegative");
    if (r == 0.0) return sobolev_norm(u, s, true);
    return detail::exp_weighted_norm(u, s, 0.0, [r](double k) { return r * k; });
}

/// Parameters of the time-weighted Gevrey norms.
struct NormParams {
    double gamma = 1.0;
    double delta = 0.1;
    double T = 1.0;
    double lambda = 0.0;
    double eta0 = 1e-5;

    /// Throws unless delta > 0, T > 0, lambda >= 0 and, when subcritical,
    /// gamma > 1/2 + 2 delta.
    void validate(bool subcritical) const {
        if (!(delta > 0.0)) throw DomainError("NormParams: delta must be positive");
        if (!(T > 0.0)) throw DomainError("NormParams: T must be positive");
        if (!(lambda >= 0.0)) throw DomainError("NormParams: lambda must be nonnegative");
        if (!(eta0 > 0.0)) throw DomainError("NormParams: eta0 must be positive");
        if (subcritical && !(gamma > 0.5 + 2.0 * delta))
            throw DomainError("NormParams: subcritical mode needs gamma > 1/2 + 2 delta");
    }
};

/// max over lattice times t <= T of
///   || t^{delta/2} |k|^{delta+1/2} 1_{|k| >= cutoff} e^{-lambda^2 t/(4T) + lambda t |k|/sqrt(T)} u(t) ||.
inline double time_weighted_gevrey_norm(const Trajectory& traj, const NormParams& p, double cutoff) {
    if (traj.empty() || traj.horizon() < p.T * (1.0 - 1e-12))
        throw DomainError("time-weighted norm: trajectory horizon shorter than T");
    const double sqrtT = std::sqrt(p.T);
    double best = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times()[i];
        if (t > p.T * (1.0 + 1e-12)) break;
        if (t == 0.0) continue;
        const double lam = p.lambda;
        auto E = [&](double k) { return -lam * lam * t / (4.0 * p.T) + lam * t * k / sqrtT; };
        const double v = std::pow(t, p.delta / 2.0) *
                         detail::exp_weighted_norm(traj.state(i), p.delta + 0.5, cutoff, E);
        best = std::max(best, v);
    }
    return best;
}

/// Working norm with cutoff 0.01 N_1, N_1 = lambda T^{-1/2}.
inline double X_norm(const Trajectory& traj, const NormParams& p) {
    return time_weighted_gevrey_norm(traj, p, 0.01 * p.lambda / std::sqrt(p.T));
}

/// Same weight with the scaling-breaking cutoff |k| >= T^{-1/4}.
inline double Y_norm(const Trajectory& traj, const NormParams& p) {
    return time_weighted_gevrey_norm(traj, p, std::pow(p.T, -0.25));
}

}  // namespace gns
