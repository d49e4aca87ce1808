#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gns/error.hpp"

namespace gns {

/// beta(t) = min{ |ln eta|, (gamma - 1/2) |ln t| / 2 }, the second branch
/// alone when eta = 0 (|ln 0| read as +inf).
inline double beta(double t, double gamma, double eta_value) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("beta: t must lie in (0, 1)");
    if (!(gamma >= 0.5)) throw DomainError("beta: gamma must be >= 1/2");
    if (!(eta_value >= 0.0)) throw DomainError("beta: eta must be nonnegative");
    const double cap = 0.5 * (gamma - 0.5) * std::abs(std::log(t));
    if (eta_value == 0.0) return cap;
    return std::min(std::abs(std::log(eta_value)), cap);
}

/// sqrt((2 gamma - 1)(|ln t| + ln|ln t|) + 3 beta), t in (0, 1/e).
inline double lambda_subcritical(double t, double gamma, double beta_value) {
    if (!(t > 0.0 && t < std::exp(-1.0))) throw DomainError("lambda_subcritical: t must lie in (0, 1/e)");
    if (!(gamma > 0.5)) throw DomainError("lambda_subcritical: gamma must exceed 1/2");
    if (!(beta_value >= 0.0)) throw DomainError("lambda_subcritical: beta must be nonnegative");
    const double L = std::abs(std::log(t));
    return std::sqrt((2.0 * gamma - 1.0) * (L + std::log(L)) + 3.0 * beta_value);
}

/// sqrt(3 min{|ln zeta|, |ln t|}). zeta = 0 gives sqrt(3 |ln t|); zeta >= 1
/// gives 0 (callers flag it, see bound_report).
inline double lambda_critical(double t, double zeta_value) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("lambda_critical: t must lie in (0, 1)");
    if (!(zeta_value >= 0.0)) throw DomainError("lambda_critical: zeta must be nonnegative");
    const double L = std::abs(std::log(t));
    if (zeta_value == 0.0) return std::sqrt(3.0 * L);
    if (zeta_value >= 1.0) return 0.0;
    return std::sqrt(3.0 * std::min(std::abs(std::log(zeta_value)), L));
}

/// 4 for gamma > 1, 8 / (3 - 2 gamma) on [1/2, 1].
inline double p_gamma(double gamma) {
    if (!(gamma >= 0.5)) throw DomainError("p_gamma: gamma must be >= 1/2");
    return gamma > 1.0 ? 4.0 : 8.0 / (3.0 - 2.0 * gamma);
}

/// K_t = 3 beta / (2 gamma - 1); reported only.
inline double K_t(double gamma, double beta_value) {
    if (!(gamma > 0.5)) throw DomainError("K_t: gamma must exceed 1/2");
    return 3.0 * beta_value / (2.0 * gamma - 1.0);
}

}  // namespace gns
