#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <fftw3.h>

#include "json.hpp"

#include "gns/diagnostics/tails.hpp"
#include "gns/experiment/config.hpp"
#include "gns/solver/checkpoint.hpp"
#include "gns/solver/etd.hpp"

namespace gns {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitOther = 1,
    kExitConfig = 2,
    kExitNonConvergence = 3,
    kExitOracle = 4,
    kExitInconclusiveFit = 5,
};

struct NormSample {
    double t, l2, h_gamma, hdot_half, div_defect;
};

struct Diagnostics {
    std::vector<NormSample> norms;
    double X = 0.0, Y = 0.0;
    std::optional<BoundReport> bound;
    double J_time = 0.0;
    std::vector<std::pair<double, double>> eta_series;  // (J, eta_J(J_time))
    std::optional<InconclusiveFitError> fit_error;
};

struct RunArtifacts {
    ScenarioConfig config;
    std::string hash;
    std::filesystem::path directory;
    int exit_code = kExitOk;
    std::string status = "ok";
    nlohmann::json manifest;
    std::optional<Trajectory> trajectory;
    std::optional<PicardReport> picard;
    std::vector<double> picard_deltas;  // also filled on non-convergence
    std::optional<double> oracle_disagreement;
    Diagnostics diagnostics;
};

/// Every time-dependent functional the configuration asks for.
inline Diagnostics diagnose(const Trajectory& traj, const ScenarioConfig& cfg) {
    Diagnostics d;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& u = traj.state(i);
        d.norms.push_back({traj.times()[i], l2_norm(u), sobolev_norm(u, cfg.gamma, false),
                           sobolev_norm(u, 0.5, true), divergence_defect(u)});
    }
    NormParams np = cfg.norm_params();
    np.T = std::min(np.T, traj.horizon());
    d.X = X_norm(traj, np);
    d.Y = Y_norm(traj, np);
    if (!cfg.sample_times.empty()) {
        BoundOptions bo;
        bo.mode = cfg.mode;
        bo.gamma = cfg.gamma;
        bo.fit_lo = cfg.fit_lo;
        bo.fit_hi = cfg.fit_hi;
        bo.radius = cfg.radius;
        bo.sample_times = cfg.sample_times;
        try {
            d.bound = bound_report(traj, bo);
        } catch (const InconclusiveFitError& e) {
            d.fit_error = e;
        }
    }
    d.J_time = cfg.J_time > 0.0 ? cfg.J_time
                                : (cfg.sample_times.empty() ? traj.horizon() : cfg.sample_times.back());
    const double g = cfg.mode == BoundMode::critical ? 0.5 : cfg.gamma;
    for (double J : cfg.J_values) d.eta_series.emplace_back(J, eta_J(traj, J, g, d.J_time));
    return d;
}

namespace detail {

inline void write_text(const std::filesystem::path& p, const std::string& s) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw IoError("cannot write " + p.string());
    os << s;
    if (!os) throw IoError("write failed: " + p.string());
}

inline std::string norms_csv(const Diagnostics& d) {
    std::ostringstream os;
    os << "t,l2,h_gamma,hdot_half,divergence_defect\n";
    for (const auto& s : d.norms)
        os << format_double(s.t) << ',' << format_double(s.l2) << ',' << format_double(s.h_gamma) << ','
           << format_double(s.hdot_half) << ',' << format_double(s.div_defect) << '\n';
    return os.str();
}

}  // namespace detail

/// Two-column plot series: ratio.dat (t, ratio), radii.dat (t, measured,
/// predictor) and eta_J.dat (J, eta_J at the fixed time). Returns file names.
inline std::vector<std::string> emit_plot_data(const Diagnostics& d, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> files;
    if (d.bound) {
        std::ostringstream r, q;
        r << "# t ratio   (ratio = inf: measured radius capped by the resolvability limit)\n";
        q << "# t measured_radius predictor   (inf: capped)\n";
        for (const auto& w : d.bound->rows) {
            r << format_double(w.t) << ' ' << format_double(w.ratio) << '\n';
            q << format_double(w.t) << ' ' << (w.capped ? std::string("inf") : format_double(w.measured_radius)) << ' '
              << format_double(w.predictor) << '\n';
        }
        detail::write_text(dir / "ratio.dat", r.str());
        detail::write_text(dir / "radii.dat", q.str());
        files.push_back("ratio.dat");
        files.push_back("radii.dat");
    }
    std::ostringstream e;
    e << "# J eta_J at t = " << format_double(d.J_time) << '\n';
    for (const auto& [J, v] : d.eta_series) e << format_double(J) << ' ' << format_double(v) << '\n';
    detail::write_text(dir / "eta_J.dat", e.str());
    files.push_back("eta_J.dat");
    return files;
}

/// Writes everything into a sibling temporary directory and renames it into
/// place, so the target either holds a complete run or is untouched.
inline void write_artifacts(RunArtifacts& a, double wall_seconds) {
    namespace fs = std::filesystem;
    const fs::path target = a.directory;
    const fs::path parent = target.has_parent_path() ? target.parent_path() : fs::path(".");
    fs::create_directories(parent);
    const fs::path tmp = parent / (target.filename().string() + ".tmp-" + a.hash);
    fs::remove_all(tmp);
    fs::create_directories(tmp);

    const auto& cfg = a.config;
    std::vector<std::string> files;
    detail::write_text(tmp / "config.cfg", to_config_text(cfg));
    files.push_back("config.cfg");
    const auto& d = a.diagnostics;
    if (cfg.formats.csv) {
        detail::write_text(tmp / "norms.csv", detail::norms_csv(d));
        files.push_back("norms.csv");
        if (d.bound) {
            std::ostringstream os;
            write_bound_csv(os, *d.bound);
            detail::write_text(tmp / "bound_report.csv", os.str());
            files.push_back("bound_report.csv");
        }
    }
    if (cfg.formats.json && d.bound) {
        detail::write_text(tmp / "bound_report.json", bound_report_json(*d.bound).dump(2) + "\n");
        files.push_back("bound_report.json");
    }
    if (cfg.formats.plot) {
        for (const auto& f : emit_plot_data(d, tmp / "plot")) files.push_back("plot/" + f);
    }
    if (cfg.formats.checkpoints && a.trajectory) {
        for (const auto& f : save_trajectory(tmp / "trajectory", *a.trajectory, a.hash,
                                             static_cast<std::size_t>(cfg.checkpoint_stride)))
            files.push_back("trajectory/" + f);
    }

    nlohmann::json m;
    m["config_hash"] = a.hash;
    m["config"] = to_config_text(cfg);
    m["versions"] = {{"gns", kVersion}, {"fftw", std::string(fftw_version)}};
    m["wall_clock_seconds"] = wall_seconds;
    m["exit_code"] = a.exit_code;
    m["status"] = a.status;
    nlohmann::json pic;
    pic["per_iterate_delta"] = a.picard_deltas;
    if (a.picard) {
        pic["iterates"] = a.picard->iterates;
        pic["converged"] = a.picard->converged;
        pic["residual"] = json_number(a.picard->residual);
    } else {
        pic["converged"] = false;
    }
    m["picard"] = pic;
    if (a.oracle_disagreement) m["oracle"] = {{"relative_l2_max", *a.oracle_disagreement}, {"tolerance", cfg.oracle_tol}};
    m["norms"] = {{"X_T", json_number(d.X)}, {"Y_T", json_number(d.Y)}};
    if (d.fit_error)
        m["fit_error"] = {{"what", d.fit_error->what()},
                          {"shell_k", d.fit_error->shell_k},
                          {"shell_values", d.fit_error->shell_values}};
    files.push_back("manifest.json");
    m["files"] = files;
    detail::write_text(tmp / "manifest.json", m.dump(2) + "\n");
    a.manifest = m;

    fs::remove_all(target);
    fs::rename(tmp, target);
}

/// make_initial_data -> picard_solve (-> etd cross-check) -> diagnostics -> artifacts.
inline RunArtifacts run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& base_dir = {},
                                 bool keep_trajectory = false) {
    const auto t0 = std::chrono::steady_clock::now();
    RunArtifacts a;
    a.config = cfg;
    a.hash = config_hash(cfg);
    a.directory = resolve_output_dir(cfg.directory);

    const Grid g = cfg.grid();
    const QCoefficients coeffs = resolve_coeffs(cfg.coeffs, base_dir);
    const VelocityField u0 = make_initial_data(cfg.kind, g, cfg.data);

    try {
        auto [traj, rep] = picard_solve(u0, coeffs, cfg.solver);
        a.picard_deltas = rep.per_iterate_delta;
        a.picard = rep;
        a.trajectory = std::move(traj);
    } catch (const NonConvergenceError& e) {
        a.picard_deltas = e.delta_history;
        a.exit_code = kExitNonConvergence;
        a.status = e.what();
    }

    if (a.trajectory) {
        if (cfg.cross_check) {
            const Trajectory etd = etd_integrate(u0, coeffs, cfg.solver.T, cfg.solver.dt, cfg.solver.blowup_factor);
            double worst = 0.0;
            for (std::size_t i = 0; i < a.trajectory->size(); ++i) {
                const auto j = etd.find_time(a.trajectory->times()[i]);
                if (j < 0) continue;
                const auto& p = a.trajectory->state(i);
                const double ref = l2_norm(p);
                const double diff = l2_norm(p - etd.state(static_cast<std::size_t>(j)));
                worst = std::max(worst, ref > 0.0 ? diff / ref : diff);
            }
            a.oracle_disagreement = worst;
            if (worst > cfg.oracle_tol) {
                a.exit_code = kExitOracle;
                a.status = "picard and etd disagree: relative L2 " + format_double(worst);
            }
        }
        a.diagnostics = diagnose(*a.trajectory, cfg);
        if (a.diagnostics.fit_error && a.exit_code == kExitOk) {
            a.exit_code = kExitInconclusiveFit;
            a.status = a.diagnostics.fit_error->what();
        }
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_artifacts(a, wall);
    if (!keep_trajectory) a.trajectory.reset();
    return a;
}

/// Diagnostics and artifacts for an already computed trajectory (no solve).
inline RunArtifacts diagnose_scenario(Trajectory traj, const ScenarioConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunArtifacts a;
    a.config = cfg;
    a.config.formats.checkpoints = false;  // the states already live on disk
    a.hash = config_hash(cfg);
    a.directory = resolve_output_dir(cfg.directory);
    require_same_grid(traj.grid(), cfg.grid(), "diagnose");
    a.diagnostics = diagnose(traj, cfg);
    if (a.diagnostics.fit_error) {
        a.exit_code = kExitInconclusiveFit;
        a.status = a.diagnostics.fit_error->what();
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_artifacts(a, wall);
    return a;
}

}  // namespace gns
