#pragma once

#include "gns/diagnostics/norms.hpp"

namespace gns {

/// max over lattice times tau <= t of || 1_{|k| >= cutoff} |k|^gamma u(tau) ||.
inline double tail_functional(const Trajectory& traj, double cutoff, double gamma, double t) {
    if (traj.empty()) throw DomainError("tail functional: empty trajectory");
    if (!(t >= 0.0) || t > traj.horizon() * (1.0 + 1e-12))
        throw DomainError("tail functional: t outside the trajectory horizon");
    double best = 0.0;
    const double tmax = t * (1.0 + 1e-12);
    for (std::size_t i = 0; i < traj.size() && traj.times()[i] <= tmax; ++i)
        best = std::max(best, sobolev_tail(traj.state(i), gamma, cutoff));
    return best;
}

/// eta_J^gamma(t): tail above 0.01 J.
inline double eta_J(const Trajectory& traj, double J, double gamma, double t) {
    if (!(J > 0.0)) throw DomainError("eta_J: J must be positive");
    return tail_functional(traj, 0.01 * J, gamma, t);
}

/// zeta_J^gamma(t): tail above J itself.
inline double zeta_J(const Trajectory& traj, double J, double gamma, double t) {
    if (!(J > 0.0)) throw DomainError("zeta_J: J must be positive");
    return tail_functional(traj, J, gamma, t);
}

}  // namespace gns
