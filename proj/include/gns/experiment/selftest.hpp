#pragma once

// Quick invariant sweep behind `gns selftest`. Each check is cheap (small
// grids) and independent of the unit-test oracles.

#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "gns/experiment/scenario.hpp"

namespace gns {

struct SelftestResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline VelocityField selftest_field(const Grid& g, std::uint64_t seed, double p) {
    DataParams d;
    d.seed = seed;
    d.spectral_exponent = p;
    d.k_lo = 1.0;
    return make_initial_data(DataKind::random_sobolev_tail, g, d);
}

inline double max_diff(const VelocityField& a, const VelocityField& b) {
    double m = 0.0;
    for (int j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < a[j].data().size(); ++i)
            m = std::max(m, std::abs(a[j].data()[i] - b[j].data()[i]));
    return m;
}

inline double max_abs(const VelocityField& a) {
    double m = 0.0;
    for (int j = 0; j < 3; ++j)
        for (const auto& v : a[j].data()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace detail

inline std::vector<SelftestResult> run_selftest() {
    using detail::max_abs;
    using detail::max_diff;
    const double pi = std::numbers::pi;
    std::vector<std::pair<std::string, std::function<std::pair<bool, std::string>()>>> checks;

    checks.emplace_back("transform round trip", [&] {
        const Grid g(16, 2 * pi);
        const auto u = detail::selftest_field(g, 1, 1.0);
        const double e = max_diff(from_physical(to_physical(u)), u) / max_abs(u);
        return std::pair{e <= 1e-12, "relative error " + format_double(e)};
    });
    checks.emplace_back("heat semigroup composition", [&] {
        const Grid g(16, 2 * pi);
        const auto u = detail::selftest_field(g, 2, 1.0);
        const double e = max_diff(heat_semigroup(heat_semigroup(u, 0.01), 0.02), heat_semigroup(u, 0.03)) / max_abs(u);
        return std::pair{e <= 1e-14, "relative error " + format_double(e)};
    });
    checks.emplace_back("leray projection idempotent", [&] {
        const Grid g(16, 2 * pi);
        VelocityField u(g);
        for (int j = 0; j < 3; ++j) u[j] = detail::selftest_field(g, 3 + j, 1.0)[0];
        const auto p = leray_project(u);
        const double e = max_diff(leray_project(p), p) / max_abs(p);
        return std::pair{e <= 1e-14 && divergence_defect(p) <= 1e-12, "relative error " + format_double(e)};
    });
    checks.emplace_back("navier-stokes nonlinearity solenoidal", [&] {
        const Grid g(16, 2 * pi);
        const auto u = detail::selftest_field(g, 6, 1.0);
        const auto q = apply_Q(navier_stokes_coeffs(), u, u);
        const double e = divergence_defect(q);
        return std::pair{e <= 1e-10 && !q.is_zero(), "divergence defect " + format_double(e)};
    });
    checks.emplace_back("picard with zero coefficients is heat flow", [&] {
        const Grid g(8, 2 * pi);
        const auto u0 = detail::selftest_field(g, 7, 1.0);
        SolverConfig cfg;
        cfg.n_times = 5;
        const auto [tr, rep] = picard_solve(u0, QCoefficients{}, cfg);
        double e = 0.0;
        for (std::size_t i = 0; i < tr.size(); ++i)
            e = std::max(e, max_diff(tr.state(i), heat_semigroup(u0, tr.times()[i])));
        return std::pair{rep.iterates == 2 && e == 0.0, std::to_string(rep.iterates) + " iterates"};
    });
    checks.emplace_back("picard agrees with etd", [&] {
        const Grid g(16, 2 * pi);
        const auto u0 = taylor_green(g, 1.0);
        SolverConfig cfg;
        cfg.n_times = 11;
        const auto [tr, rep] = picard_solve(u0, navier_stokes_coeffs(), cfg);
        const auto et = etd_integrate(u0, navier_stokes_coeffs(), cfg.T, 1e-4);
        const double e = l2_norm(tr.state(tr.size() - 1) - et.state(et.size() - 1)) / l2_norm(u0);
        return std::pair{e <= 1e-6, "relative L2 " + format_double(e)};
    });
    checks.emplace_back("formula hand values", [&] {
        double e = 0.0;
        e = std::max(e, std::abs(beta(std::exp(-4.0), 1.0, 0.0) - 1.0));
        e = std::max(e, std::abs(beta(std::exp(-8.0), 1.5, 0.5) - std::log(2.0)));
        e = std::max(e, std::abs(lambda_subcritical(std::exp(-4.0), 1.0, 1.0) - std::sqrt(7.0 + std::log(4.0))));
        e = std::max(e, std::abs(lambda_critical(std::exp(-3.0), 0.0) - 3.0));
        e = std::max(e, std::abs(lambda_critical(std::exp(-9.0), std::exp(-1.0)) - std::sqrt(3.0)));
        const bool p = p_gamma(0.5) == 4.0 && p_gamma(1.0) == 8.0 && p_gamma(2.0) == 4.0;
        return std::pair{p && e <= 1e-12, "max error " + format_double(e)};
    });
    checks.emplace_back("radius of a pure exponential", [&] {
        const Grid g(32, 2 * pi);
        VelocityField u(g);
        for_each_mode(g, [&](const Mode& m) {
            if (g.is_nyquist(m.i1) || g.is_nyquist(m.i2) || g.is_nyquist(m.i3)) return;
            u[0].data()[m.idx] = std::exp(-0.3 * m.kabs());
        });
        const auto r = estimate_radius(u, 2.0, 14.0);
        return std::pair{std::abs(r.radius - 0.3) <= 0.015, "radius " + format_double(r.radius)};
    });
    checks.emplace_back("config canonical round trip", [&] {
        const auto c = parse_config_text("grid.n = 16\ndata.kind = random_sobolev_tail\ndata.seed = 9\n"
                                         "diagnostics.sample_times = 0.001, 0.01\n");
        return std::pair{parse_config_text(to_config_text(c)) == c, config_hash(c)};
    });

    std::vector<SelftestResult> out;
    for (auto& [name, fn] : checks) {
        SelftestResult r{name, false, ""};
        try {
            std::tie(r.pass, r.detail) = fn();
        } catch (const std::exception& e) {
            r.detail = std::string("threw: ") + e.what();
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace gns
