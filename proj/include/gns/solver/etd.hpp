#pragma once

#include <cmath>
#include <sstream>

#include "gns/operator/gns_operator.hpp"
#include "gns/solver/trajectory.hpp"

namespace gns {

/// Integrating-factor RK4 for u_t = Delta u + Q(u,u): classical RK4 applied
/// to w = e^{-t Delta} u. The step is shrunk to T / ceil(T / dt) so the
/// lattice ends exactly at T; every step is recorded.
/// Throws BlowUpError when ||u||_{L2} exceeds blowup_factor * max(||u0||_{L2}, 1e-300).
inline Trajectory etd_integrate(const VelocityField& u0, const QCoefficients& coeffs, double T, double dt,
                                double blowup_factor = 1e6) {
    if (!(T > 0.0) || !(dt > 0.0)) throw DomainError("etd_integrate: T and dt must be positive");
    if (dt > T * (1.0 + 1e-12)) throw DomainError("etd_integrate: dt must not exceed T");
    const long steps = static_cast<long>(std::ceil(T / dt - 1e-9));
    const double h = T / static_cast<double>(steps);
    const double guard = blowup_factor * std::max(l2_norm(u0), 1e-300);

    auto N = [&](const VelocityField& u) { return apply_Q(coeffs, u, u); };
    auto E = [](VelocityField u, double t) { return heat_semigroup(std::move(u), t); };

    Trajectory tr;
    tr.push_back(0.0, u0);
    VelocityField u = u0;
    for (long s = 0; s < steps; ++s) {
        const VelocityField k1 = N(u);
        VelocityField y = u;
        y.axpy(0.5 * h, k1);
        const VelocityField k2 = N(E(y, 0.5 * h));
        const VelocityField uh = E(u, 0.5 * h);
        y = uh;
        y.axpy(0.5 * h, k2);
        const VelocityField k3 = N(y);
        y = E(u, h);
        y.axpy(h, E(k3, 0.5 * h));
        const VelocityField k4 = N(y);

        VelocityField incr = E(k1, h);
        VelocityField mid = k2;
        mid += k3;
        incr.axpy(2.0, E(std::move(mid), 0.5 * h));
        incr += k4;
        u = E(std::move(u), h);
        u.axpy(h / 6.0, incr);

        const double t = (s + 1 == steps) ? T : h * static_cast<double>(s + 1);
        const double norm = l2_norm(u);
        if (!std::isfinite(norm) || norm > guard) {
            std::ostringstream os;
            os << "etd_integrate: L2 norm " << norm << " exceeded guard " << guard << " at t = " << t;
            throw BlowUpError(os.str(), t, norm);
        }
        tr.push_back(t, u);
    }
    return tr;
}

}  // namespace gns
