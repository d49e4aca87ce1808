#pragma once

#include <algorithm>
#include <cmath>
#include <string_view>
#include <vector>

#include "gns/operator/gns_operator.hpp"
#include "gns/solver/gauss_legendre.hpp"
#include "gns/solver/trajectory.hpp"

namespace gns {

/// How a trajectory is evaluated between lattice times.
///   linear             (1-th) u_i + th u_{i+1}
///   integrating_factor (1-th) e^{-(s-t_i)|k|^2} u_i + th e^{(t_{i+1}-s)|k|^2} u_{i+1}
/// The second is exact for heat flow and much more accurate on stiff modes.
enum class Interpolation { linear, integrating_factor };

inline std::string_view to_string(Interpolation m) {
    return m == Interpolation::linear ? "linear" : "integrating_factor";
}

inline Interpolation interpolation_from_string(std::string_view s) {
    if (s == "linear") return Interpolation::linear;
    if (s == "integrating_factor") return Interpolation::integrating_factor;
    throw DomainError("unknown interpolation '" + std::string(s) + "'");
}

namespace detail {

// Backward heat factors e^{+h|k|^2} are clamped here; past it the forward
// datum already underflows to zero for any field the solver produces.
inline constexpr double kMaxGrowthExponent = 40.0;

inline void scale_modes(VelocityField& u, double t, bool forward) {
    if (t == 0.0) return;
    auto& a = u[0].data();
    auto& b = u[1].data();
    auto& c = u[2].data();
    for_each_mode(u.grid(), [&](const Mode& m) {
        const double e = forward ? -t * m.ksq : std::min(t * m.ksq, kMaxGrowthExponent);
        const double f = std::exp(e);
        a[m.idx] *= f;
        b[m.idx] *= f;
        c[m.idx] *= f;
    });
}

/// Index i with times[i] <= s <= times[i+1].
inline std::size_t bracket(const std::vector<double>& times, double s) {
    auto it = std::upper_bound(times.begin(), times.end(), s);
    std::size_t i = static_cast<std::size_t>(it - times.begin());
    if (i == 0) return 0;
    return std::min(i - 1, times.size() - 2);
}

}  // namespace detail

/// u(s) reconstructed from the trajectory samples.
inline VelocityField interpolate(const Trajectory& traj, double s, Interpolation mode) {
    if (traj.size() == 1) return traj.state(0);
    const auto& t = traj.times();
    const std::size_t i = detail::bracket(t, s);
    const double h = t[i + 1] - t[i];
    const double th = std::clamp((s - t[i]) / h, 0.0, 1.0);
    if (th == 0.0) return traj.state(i);
    if (th == 1.0) return traj.state(i + 1);
    VelocityField a = traj.state(i);
    VelocityField b = traj.state(i + 1);
    if (mode == Interpolation::integrating_factor) {
        detail::scale_modes(a, s - t[i], true);
        detail::scale_modes(b, t[i + 1] - s, false);
    }
    a *= 1.0 - th;
    a.axpy(th, b);
    return a;
}

/// B(t_i) = int_0^{t_i} e^{(t_i - s) Delta} F(s) ds for every lattice time,
/// by composite Gauss-Legendre per interval and the recurrence
///   B(t_{i+1}) = e^{(t_{i+1}-t_i) Delta} B(t_i) + int_{t_i}^{t_{i+1}} ... ds.
/// `source(s)` returns F(s) as a VelocityField.
template <class Source>
std::vector<VelocityField> duhamel_on_lattice(Source&& source, const Grid& grid,
                                              const std::vector<double>& times, int quad_order) {
    const QuadratureRule rule = gauss_legendre(quad_order);
    std::vector<VelocityField> out;
    out.reserve(times.size());
    out.emplace_back(grid);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double a = times[i], b = times[i + 1], h = b - a;
        VelocityField next = heat_semigroup(out.back(), h);
        for (int q = 0; q < quad_order; ++q) {
            const double s = a + 0.5 * h * (1.0 + rule.nodes[q]);
            VelocityField f = source(s);
            detail::scale_modes(f, b - s, true);
            next.axpy(0.5 * h * rule.weights[q], f);
        }
        out.push_back(std::move(next));
    }
    return out;
}

namespace detail {

inline void require_same_lattice(const Trajectory& u, const Trajectory& v) {
    if (u.empty() || v.empty()) throw DomainError("duhamel: empty trajectory");
    require_same_grid(u.grid(), v.grid(), "duhamel");
    if (u.times() != v.times()) throw DomainError("duhamel: trajectories use different time lattices");
}

}  // namespace detail

/// Composite Gauss-Legendre approximation of
///   int_0^{t_eval} e^{(t_eval - s) Delta} Q(u(s), v(s)) ds
/// with quad_order nodes per trajectory interval (the last one cut at t_eval).
inline VelocityField duhamel_B(const QCoefficients& coeffs, const Trajectory& u, const Trajectory& v,
                               double t_eval, int quad_order,
                               Interpolation mode = Interpolation::linear) {
    detail::require_same_lattice(u, v);
    if (!(t_eval >= 0.0) || t_eval > u.horizon() * (1.0 + 1e-12))
        throw DomainError("duhamel_B: t_eval outside [0, T]");
    const QuadratureRule rule = gauss_legendre(quad_order);
    const bool same = (&u == &v);
    VelocityField acc(u.grid());
    const auto& t = u.times();
    for (std::size_t i = 0; i + 1 < t.size() && t[i] < t_eval; ++i) {
        const double a = t[i], b = std::min(t[i + 1], t_eval), h = b - a;
        if (h <= 0.0) break;
        for (int q = 0; q < quad_order; ++q) {
            const double s = a + 0.5 * h * (1.0 + rule.nodes[q]);
            const VelocityField us = interpolate(u, s, mode);
            VelocityField f = same ? apply_Q(coeffs, us, us)
                                   : apply_Q(coeffs, us, interpolate(v, s, mode));
            detail::scale_modes(f, t_eval - s, true);
            acc.axpy(0.5 * h * rule.weights[q], f);
        }
    }
    return acc;
}

/// duhamel_B(coeffs, u, v, t_i) at every lattice time t_i at once.
inline std::vector<VelocityField> duhamel_B_lattice(const QCoefficients& coeffs, const Trajectory& u,
                                                    const Trajectory& v, int quad_order,
                                                    Interpolation mode = Interpolation::linear) {
    detail::require_same_lattice(u, v);
    const bool same = (&u == &v);
    auto source = [&](double s) {
        const VelocityField us = interpolate(u, s, mode);
        return same ? apply_Q(coeffs, us, us) : apply_Q(coeffs, us, interpolate(v, s, mode));
    };
    return duhamel_on_lattice(source, u.grid(), u.times(), quad_order);
}

}  // namespace gns
