#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gns/diagnostics/formulas.hpp"
#include "gns/diagnostics/radius.hpp"
#include "gns/diagnostics/tails.hpp"

namespace gns {

enum class BoundMode { subcritical, critical };

inline std::string_view to_string(BoundMode m) {
    return m == BoundMode::subcritical ? "subcritical" : "critical";
}

inline BoundMode bound_mode_from_string(std::string_view s) {
    if (s == "subcritical") return BoundMode::subcritical;
    if (s == "critical") return BoundMode::critical;
    throw DomainError("unknown diagnostics mode '" + std::string(s) + "'");
}

struct BoundOptions {
    BoundMode mode = BoundMode::subcritical;
    double gamma = 1.0;
    double fit_lo = 1.0, fit_hi = 10.0;
    RadiusOptions radius;
    std::vector<double> sample_times;
};

struct BoundRow {
    double t = 0.0;
    double J = 0.0;            // t^{-1/2} or t^{-1/4}
    double tail = 0.0;         // eta or zeta at that J
    double beta = std::numeric_limits<double>::quiet_NaN();  // subcritical only
    double K_t = std::numeric_limits<double>::quiet_NaN();   // subcritical only
    double lambda = 0.0;
    double predictor = 0.0;
    double measured_radius = 0.0;
    double ratio = 0.0;        // +inf when capped
    bool capped = false;
    double r2 = 0.0;
    bool beyond_lattice = false;  // J above the largest lattice |k|
    bool zeta_ge_one = false;
};

struct BoundReport {
    BoundOptions options;
    Grid grid;
    std::vector<BoundRow> rows;

    std::vector<double> times() const {
        std::vector<double> v;
        for (const auto& r : rows) v.push_back(r.t);
        return v;
    }
    std::vector<double> ratios() const {
        std::vector<double> v;
        for (const auto& r : rows) v.push_back(r.ratio);
        return v;
    }
};

/// Per sample time: tail functional at the theorem's scale, beta, lambda,
/// predictor lambda sqrt(t) and the measured radius proxy.
/// Sample times must be lattice times of the trajectory.
inline BoundReport bound_report(const Trajectory& traj, const BoundOptions& opt) {
    if (traj.empty()) throw DomainError("bound_report: empty trajectory");
    if (opt.sample_times.empty()) throw DomainError("bound_report: no sample times");
    if (opt.mode == BoundMode::subcritical && !(opt.gamma > 0.5))
        throw DomainError("bound_report: subcritical mode needs gamma > 1/2");
    if (opt.mode == BoundMode::critical && opt.gamma != 0.5)
        throw DomainError("bound_report: critical mode needs gamma = 1/2");
    BoundReport rep;
    rep.options = opt;
    rep.grid = traj.grid();
    const double kmax = traj.grid().kmax_diag();
    for (double t : opt.sample_times) {
        const auto idx = traj.find_time(t);
        if (idx < 0) throw DomainError("bound_report: sample time " + std::to_string(t) + " is not a lattice time");
        BoundRow row;
        row.t = t;
        if (opt.mode == BoundMode::subcritical) {
            row.J = 1.0 / std::sqrt(t);
            row.tail = eta_J(traj, row.J, opt.gamma, t);
            row.beta = beta(t, opt.gamma, row.tail);
            row.K_t = K_t(opt.gamma, row.beta);
            row.lambda = lambda_subcritical(t, opt.gamma, row.beta);
        } else {
            row.J = std::pow(t, -0.25);
            row.tail = zeta_J(traj, row.J, 0.5, t);
            row.zeta_ge_one = row.tail >= 1.0;
            row.lambda = lambda_critical(t, row.tail);
        }
        row.beyond_lattice = row.J > kmax;
        row.predictor = row.lambda * std::sqrt(t);
        const auto est = estimate_radius(traj.state(static_cast<std::size_t>(idx)), opt.fit_lo, opt.fit_hi,
                                         opt.radius);
        row.measured_radius = est.radius;
        row.capped = est.capped;
        row.r2 = est.r2;
        if (est.capped)
            row.ratio = std::numeric_limits<double>::infinity();
        else
            row.ratio = row.predictor > 0.0 ? est.radius / row.predictor
                                            : std::numeric_limits<double>::infinity();
        rep.rows.push_back(row);
    }
    return rep;
}

/// %.17g, with "inf" / "nan" sentinels.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline void write_bound_csv(std::ostream& os, const BoundReport& r) {
    const auto& o = r.options;
    os << "# domain: periodic box [0,L)^3 standing in for R^3, L = " << format_double(r.grid.period())
       << ", n = " << r.grid.n() << "\n";
    os << "# mode: " << to_string(o.mode) << ", gamma = " << format_double(o.gamma) << "\n";
    os << "# radius proxy: " << to_string(o.radius.model) << " fit of shell maxima over |k| in ["
       << format_double(o.fit_lo) << ", " << format_double(o.fit_hi) << "]\n";
    os << "# eta_or_zeta: " << (o.mode == BoundMode::subcritical ? "eta_J at J = t^-1/2" : "zeta_J at J = t^-1/4")
       << "; beta is nan in critical mode; ratio = inf when the radius is capped\n";
    os << "t,eta_or_zeta,beta,lambda,predictor,measured_radius,ratio,capped,r2\n";
    for (const auto& w : r.rows)
        os << format_double(w.t) << ',' << format_double(w.tail) << ',' << format_double(w.beta) << ','
           << format_double(w.lambda) << ',' << format_double(w.predictor) << ','
           << format_double(w.measured_radius) << ',' << format_double(w.ratio) << ',' << (w.capped ? 1 : 0)
           << ',' << format_double(w.r2) << '\n';
}

inline nlohmann::json bound_report_json(const BoundReport& r) {
    const auto& o = r.options;
    nlohmann::json j;
    j["parameters"] = {
        {"mode", to_string(o.mode)},
        {"gamma", o.gamma},
        {"fit_lo", o.fit_lo},
        {"fit_hi", o.fit_hi},
        {"fit_model", to_string(o.radius.model)},
        {"n_shells", o.radius.n_shells},
        {"grid", {{"n_per_axis", r.grid.n()}, {"period", r.grid.period()}}},
        {"domain", "periodic box proxy for R^3"},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& w : r.rows)
        rows.push_back({{"t", json_number(w.t)},
                        {"J", json_number(w.J)},
                        {"eta_or_zeta", json_number(w.tail)},
                        {"beta", json_number(w.beta)},
                        {"K_t", json_number(w.K_t)},
                        {"lambda", json_number(w.lambda)},
                        {"predictor", json_number(w.predictor)},
                        {"measured_radius", json_number(w.measured_radius)},
                        {"ratio", json_number(w.ratio)},
                        {"capped", w.capped},
                        {"r2", json_number(w.r2)},
                        {"J_beyond_lattice", w.beyond_lattice},
                        {"zeta_ge_one", w.zeta_ge_one}});
    j["rows"] = rows;
    return j;
}

}  // namespace gns
