#pragma once

#include <cmath>
#include <limits>
#include <string_view>

#include <Eigen/Dense>

#include "gns/operator/velocity_field.hpp"

namespace gns {

/// ln(shell max) modelled as  a - r|k|  (exponential) or
/// a - r|k| - p ln(1+|k|)  (exponential_algebraic, absorbs a power-law prefactor).
enum class FitModel { exponential, exponential_algebraic };

inline std::string_view to_string(FitModel m) {
    return m == FitModel::exponential ? "exponential" : "exponential_algebraic";
}

inline FitModel fit_model_from_string(std::string_view s) {
    if (s == "exponential") return FitModel::exponential;
    if (s == "exponential_algebraic") return FitModel::exponential_algebraic;
    throw DomainError("unknown fit model '" + std::string(s) + "'");
}

/// Shells below this fraction of ||u||_{L2} carry no usable decay information.
inline constexpr double kShellFloor = 1e-300;
inline constexpr double kMinR2 = 0.9;
inline constexpr int kMinFitShells = 5;

struct RadiusEstimate {
    double radius = 0.0;
    double fit_lo = 0.0, fit_hi = 0.0;
    double r2 = 0.0;
    bool capped = false;
    int shells_used = 0;
    double algebraic_exponent = std::numeric_limits<double>::quiet_NaN();
};

struct RadiusOptions {
    int n_shells = 0;  // 0: shells of width 2*pi/L over [0, kmax_diag]
    FitModel model = FitModel::exponential;
    bool operator==(const RadiusOptions&) const = default;
};

/// Per-shell max of the vector magnitude |u(k)| and the |k| where it occurs.
inline ShellSpectrum vector_shell_max(const VelocityField& u, int n_shells) {
    const Grid& g = u.grid();
    const double km = g.kmax_diag();
    if (n_shells <= 0) n_shells = static_cast<int>(std::ceil(km / g.unit()));
    if (n_shells < 2) n_shells = 2;
    auto out = detail::empty_shells(n_shells, km);
    for_each_mode(g, [&](const Mode& m) {
        const double kabs = m.kabs();
        const int s = detail::shell_of(kabs, n_shells, km);
        double a2 = 0.0;
        for (int j = 0; j < 3; ++j) a2 += std::norm(u[j].data()[m.idx]);
        const double a = std::sqrt(a2);
        if (!out.nonempty[s] || kabs < out.min_k[s]) out.min_k[s] = kabs;
        if (!out.nonempty[s]) out.argmax_k[s] = kabs;
        out.nonempty[s] = 1;
        if (a > out.values[s] || (a == out.values[s] && kabs < out.argmax_k[s])) {
            out.values[s] = a;
            out.argmax_k[s] = kabs;
        }
    });
    return out;
}

/// Least-squares decay fit of ln(shell value) against the shell's argmax |k|
/// over [fit_lo, fit_hi]. `norm` sets the floor kShellFloor * norm.
inline RadiusEstimate fit_radius(const ShellSpectrum& sh, double norm, double fit_lo, double fit_hi,
                                 FitModel model = FitModel::exponential) {
    if (!(fit_lo > 0.0 && fit_lo < fit_hi)) throw DomainError("estimate_radius: need 0 < fit_lo < fit_hi");
    const double floor = kShellFloor * norm;
    std::vector<double> xs, ys, all_k, all_v;
    int in_window = 0;
    for (std::size_t s = 0; s < sh.size(); ++s) {
        if (!sh.nonempty[s]) continue;
        const double k = sh.argmax_k[s];
        if (k < fit_lo || k > fit_hi) continue;
        ++in_window;
        all_k.push_back(k);
        all_v.push_back(sh.values[s]);
        if (sh.values[s] > floor && sh.values[s] > 0.0) {
            xs.push_back(k);
            ys.push_back(std::log(sh.values[s]));
        }
    }
    RadiusEstimate r;
    r.fit_lo = fit_lo;
    r.fit_hi = fit_hi;
    if (in_window > 0 && xs.empty()) {
        r.capped = true;
        r.radius = std::log(1.0 / kShellFloor) / fit_lo;
        r.r2 = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    const int cols = model == FitModel::exponential ? 2 : 3;
    if (static_cast<int>(xs.size()) < std::max(kMinFitShells, cols + 1))
        throw InconclusiveFitError("estimate_radius: only " + std::to_string(xs.size()) +
                                       " usable shells in the fit window",
                                   all_k, all_v);
    const Eigen::Index m = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd A(m, cols);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = xs[i];
        if (cols == 3) A(i, 2) = std::log1p(xs[i]);
        y(i) = ys[i];
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    const double mean = y.mean();
    const double ss_tot = (y.array() - mean).square().sum();
    const double ss_res = (A * c - y).squaredNorm();
    r.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    r.shells_used = static_cast<int>(m);
    if (cols == 3) r.algebraic_exponent = -c(2);
    if (!(r.r2 >= kMinR2))
        throw InconclusiveFitError("estimate_radius: r2 = " + std::to_string(r.r2) + " below 0.9", all_k,
                                   all_v);
    r.radius = c(1) < 0.0 ? -c(1) : 0.0;
    return r;
}

/// Analyticity-radius proxy: decay rate of per-shell maxima of |u(k)|.
inline RadiusEstimate estimate_radius(const VelocityField& u, double fit_lo, double fit_hi,
                                      const RadiusOptions& opt = {}) {
    if (fit_hi > u.grid().kmax_diag() * (1.0 + 1e-12))
        throw DomainError("estimate_radius: fit_hi beyond the lattice");
    return fit_radius(vector_shell_max(u, opt.n_shells), l2_norm(u), fit_lo, fit_hi, opt.model);
}

}  // namespace gns
