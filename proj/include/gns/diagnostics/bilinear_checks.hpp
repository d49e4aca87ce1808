#pragma once

// Numeric instances of the Gevrey bilinear estimate and of the two kernel
// bounds behind it. Each function returns one side of an inequality
// "LHS <= C * RHS" with the absolute constant C left out; callers fit C.

#include <algorithm>
#include <cmath>

#include "gns/diagnostics/norms.hpp"
#include "gns/operator/gns_operator.hpp"

namespace gns {

struct EstimateParams {
    double gamma = 1.0;
    double delta = 0.1;
    double lambda = 4.0;
    double T = 0.01;
    double eta0 = 1e-5;
    int n_times = 21;

    double N1() const { return lambda / std::sqrt(T); }
    double N0() const { return 0.5 * N1(); }
    NormParams norm_params() const { return {gamma, delta, T, lambda, eta0}; }
};

namespace detail {

inline Trajectory constant_trajectory(const VelocityField& f, double T, int n_times) {
    Trajectory tr;
    for (double t : uniform_lattice(T, n_times)) tr.push_back(t, f);
    return tr;
}

/// Inhomogeneous H^s norm of the part of u with |k| >= cutoff.
inline double high_part_norm(const VelocityField& u, double s, double cutoff) {
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double c = shell_reduce_weighted_l2(u[j], s, false, cutoff);
        acc += c * c;
    }
    return std::sqrt(acc);
}

/// int_a^b e^{c s} ds without cancellation.
inline double exp_integral(double c, double a, double b) {
    if (c == 0.0) return b - a;
    if (c > 0.0) return std::exp(c * b) * (-std::expm1(-c * (b - a))) / c;
    return std::exp(c * a) * std::expm1(c * (b - a)) / c;
}

}  // namespace detail

/// sup_t t^{delta/2} || 1_{|k|>=0.1 N1} |k|^{delta+1/2} e^{lambda t|k|/sqrt T - lambda^2 t/(4T)}
///        int_0^t e^{-(t-s)|k|^2} Q(f,g)(k) ds ||
/// for time-independent f, g, where the time integral is exact per mode.
inline double bilinear_lhs(const QCoefficients& coeffs, const VelocityField& f, const VelocityField& g,
                           const EstimateParams& p) {
    const VelocityField q = apply_Q(coeffs, f, g);
    const double cutoff = 0.1 * p.N1(), sqrtT = std::sqrt(p.T), lam = p.lambda;
    double best = 0.0;
    for (double t : uniform_lattice(p.T, p.n_times)) {
        if (t == 0.0) continue;
        VelocityField d = q;
        for (int j = 0; j < 3; ++j) {
            auto& c = d[j].data();
            for_each_mode(d.grid(), [&](const Mode& m) {
                c[m.idx] *= m.ksq == 0.0 ? 0.0 : -std::expm1(-t * m.ksq) / m.ksq;
            });
        }
        auto E = [&](double k) { return lam * t * k / sqrtT - lam * lam * t / (4.0 * p.T); };
        best = std::max(best, std::pow(t, p.delta / 2.0) *
                                  detail::exp_weighted_norm(d, p.delta + 0.5, cutoff, E));
    }
    return best;
}

/// Right-hand side of the bilinear estimate without its constant:
///   (e^{4 eta0 lambda^2} + lambda^{-delta}) lambda^{-(gamma-1/2+delta)} T^{(gamma-1/2+2delta)/2}
///       (|f| |g_h| + |f_h| |g|)
/// + lambda^{-delta} e^{lambda^2/4} |f|_X |g|_X
/// + lambda^{2-delta} T^{delta/2} (1 + lambda^{1/2+delta+gamma} T^{(gamma-1/2-delta)/2} e^{0.01 lambda^2})
///       (|g| |f|_X + |f| |g|_X)
/// with |.| the sup-in-time H^gamma norm and h the part above 0.01 N1.
inline double bilinear_rhs(const VelocityField& f, const VelocityField& g, const EstimateParams& p) {
    const double lam = p.lambda, d = p.delta, gm = p.gamma, T = p.T;
    const double hf = sobolev_norm(f, gm, false), hg = sobolev_norm(g, gm, false);
    const double hfh = detail::high_part_norm(f, gm, 0.01 * p.N1());
    const double hgh = detail::high_part_norm(g, gm, 0.01 * p.N1());
    const auto np = p.norm_params();
    const double xf = X_norm(detail::constant_trajectory(f, T, p.n_times), np);
    const double xg = X_norm(detail::constant_trajectory(g, T, p.n_times), np);
    const double t1 = (std::exp(4.0 * p.eta0 * lam * lam) + std::pow(lam, -d)) * std::pow(lam, -(gm - 0.5 + d)) *
                      std::pow(T, 0.5 * (gm - 0.5 + 2.0 * d)) * (hf * hgh + hfh * hg);
    const double t2 = std::pow(lam, -d) * std::exp(lam * lam / 4.0) * xf * xg;
    const double t3 = std::pow(lam, 2.0 - d) * std::pow(T, d / 2.0) *
                      (1.0 + std::pow(lam, 0.5 + d + gm) * std::pow(T, 0.5 * (gm - 0.5 - d)) *
                                 std::exp(0.01 * lam * lam)) *
                      (hg * xf + hf * xg);
    return t1 + t2 + t3;
}

/// Kernel-bound left sides for the scalar source F(s) = e^{s Delta} F0.
///   low:  sup_t t^{delta/2} || int_{eta0 t}^t 1_{|k|<=2N0} e^{N0^2 s} |k|^{3/2+delta} F(s,k) ds ||
///   high: sup_t t^{delta/2} || int_{eta0 t}^t 1_{|k|>=2N0} e^{N0^2 s} |k|^{3/2+delta}
///                              e^{-(t-s)|k|^2/10} F(s,k) ds ||
inline double kernel_lhs(const SpectralField& F0, const EstimateParams& p, bool high) {
    const double N0 = p.N0(), N0sq = N0 * N0;
    const auto& c = F0.data();
    double best = 0.0;
    for (double t : uniform_lattice(p.T, p.n_times)) {
        if (t == 0.0) continue;
        long double acc = 0.0L;
        for_each_mode(F0.grid(), [&](const Mode& m) {
            const double k = m.kabs();
            if (high ? (k < 2.0 * N0) : (k > 2.0 * N0)) return;
            const double a2 = std::norm(c[m.idx]);
            if (a2 == 0.0) return;
            double I;
            if (high)
                I = std::exp(-0.1 * t * m.ksq) * detail::exp_integral(N0sq - 0.9 * m.ksq, p.eta0 * t, t);
            else
                I = detail::exp_integral(N0sq - m.ksq, p.eta0 * t, t);
            const double w = std::pow(k, 1.5 + p.delta) * I;
            acc += static_cast<long double>(m.multiplicity) * w * w * a2;
        });
        best = std::max(best, std::pow(t, p.delta / 2.0) * std::sqrt(static_cast<double>(acc)));
    }
    return best;
}

/// (mean |f|^q)^{1/q} over the physical grid.
inline double lp_norm(const PhysicalField& f, double q) {
    long double acc = 0.0L;
    for (double v : f.values) acc += std::pow(std::abs(v), q);
    return std::pow(static_cast<double>(acc / f.values.size()), 1.0 / q);
}

/// lambda^{-delta} e^{N0^2 T} sup_{0<s<=T} s^delta ||F(s)||_{L^{3/(2(1-delta))}}.
inline double kernel_rhs(const SpectralField& F0, const EstimateParams& p) {
    const double q = 3.0 / (2.0 * (1.0 - p.delta));
    double sup = 0.0;
    for (double s : uniform_lattice(p.T, p.n_times)) {
        if (s == 0.0) continue;
        sup = std::max(sup, std::pow(s, p.delta) * lp_norm(inverse_transform(heat_semigroup(F0, s)), q));
    }
    return std::pow(p.lambda, -p.delta) * std::exp(p.N0() * p.N0() * p.T) * sup;
}

}  // namespace gns
