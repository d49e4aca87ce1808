#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gns/diagnostics/bound_report.hpp"
#include "gns/experiment/initial_data.hpp"
#include "gns/solver/picard.hpp"

namespace gns {

// Flat "section.key = value" text; grammar and key table in docs/config.md.

struct OutputFormats {
    bool csv = true, json = true, checkpoints = false, plot = true;
    bool operator==(const OutputFormats&) const = default;
};

struct ScenarioConfig {
    // grid
    int n = 32;
    double L = 2.0 * std::numbers::pi;
    double dealias = 2.0 / 3.0;
    // solver
    SolverConfig solver;
    bool cross_check = false;
    double oracle_tol = 1e-6;
    // physics
    std::string coeffs = "navier_stokes";  // navier_stokes | zero | path to a JSON array
    double gamma = 1.0;
    double delta = 0.1;
    double eta0 = 1e-5;
    double lambda = 4.0;
    // data
    DataKind kind = DataKind::taylor_green;
    DataParams data;
    // diagnostics
    std::vector<double> sample_times;
    double fit_lo = 2.0, fit_hi = 10.0;
    RadiusOptions radius;
    BoundMode mode = BoundMode::subcritical;
    std::vector<double> J_values{4, 8, 16, 32, 64};
    double J_time = 0.0;  // 0: last sample time
    // output
    std::string directory = "gns_run";
    OutputFormats formats;
    int checkpoint_stride = 1;

    Grid grid() const { return Grid(n, L, dealias); }
    NormParams norm_params() const { return {gamma, delta, solver.T, lambda, eta0}; }
    bool operator==(const ScenarioConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline std::optional<double> to_double(const std::string& s) {
    if (s == "pi") return std::numbers::pi;
    if (s == "2pi") return 2.0 * std::numbers::pi;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') return std::nullopt;
    return v;
}

inline std::optional<long long> to_int(const std::string& s) {
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') return std::nullopt;
    return v;
}

inline std::optional<bool> to_bool(const std::string& s) {
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    return std::nullopt;
}

inline std::string fmt(double v) { return format_double(v); }

}  // namespace detail

/// Reads "key = value" pairs, all problems collected into one ConfigError.
inline ScenarioConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir = {}) {
    using namespace detail;
    std::vector<std::string> errs;
    std::map<std::string, std::pair<std::string, int>> kv;
    {
        std::istringstream is(text);
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                errs.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
                continue;
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (kv.count(key)) errs.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
            kv[key] = {val, lineno};
        }
    }

    ScenarioConfig c;
    std::map<std::string, bool> used;
    auto get = [&](const std::string& key) -> const std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        used[key] = true;
        return &it->second.first;
    };
    auto num = [&](const std::string& key, double& dst) {
        if (auto v = get(key)) {
            if (auto d = to_double(*v)) dst = *d;
            else errs.push_back(key + ": not a number: '" + *v + "'");
        }
    };
    auto integer = [&](const std::string& key, auto& dst) {
        if (auto v = get(key)) {
            if (auto d = to_int(*v)) dst = static_cast<std::remove_reference_t<decltype(dst)>>(*d);
            else errs.push_back(key + ": not an integer: '" + *v + "'");
        }
    };
    auto boolean = [&](const std::string& key, bool& dst) {
        if (auto v = get(key)) {
            if (auto d = to_bool(*v)) dst = *d;
            else errs.push_back(key + ": not a boolean: '" + *v + "'");
        }
    };
    auto numlist = [&](const std::string& key, std::vector<double>& dst) {
        if (auto v = get(key)) {
            dst.clear();
            for (const auto& item : split_list(*v)) {
                if (auto d = to_double(item)) dst.push_back(*d);
                else errs.push_back(key + ": not a number: '" + item + "'");
            }
        }
    };
    auto enumerated = [&](const std::string& key, auto& dst, auto parse) {
        if (auto v = get(key)) {
            try {
                dst = parse(*v);
            } catch (const DomainError& e) {
                errs.push_back(key + ": " + e.what());
            }
        }
    };

    integer("grid.n", c.n);
    num("grid.L", c.L);
    num("grid.dealias", c.dealias);

    num("solver.T", c.solver.T);
    integer("solver.n_times", c.solver.n_times);
    integer("solver.quad_order", c.solver.quad_order);
    num("solver.tol", c.solver.tol);
    bool solver_gamma_given = kv.count("solver.gamma") > 0;
    num("solver.gamma", c.solver.gamma);
    integer("solver.max_iter", c.solver.max_iter);
    num("solver.dt", c.solver.dt);
    num("solver.blowup_factor", c.solver.blowup_factor);
    boolean("solver.cross_check", c.cross_check);
    num("solver.oracle_tol", c.oracle_tol);
    enumerated("solver.interpolation", c.solver.interpolation,
               [](const std::string& s) { return interpolation_from_string(s); });

    if (auto v = get("physics.coeffs")) c.coeffs = *v;
    num("physics.gamma", c.gamma);
    num("physics.delta", c.delta);
    num("physics.eta0", c.eta0);
    num("physics.lambda", c.lambda);
    if (!solver_gamma_given) c.solver.gamma = c.gamma;

    enumerated("data.kind", c.kind, [](const std::string& s) { return data_kind_from_string(s); });
    num("data.amplitude", c.data.amplitude);
    integer("data.seed", c.data.seed);
    num("data.spectral_exponent", c.data.spectral_exponent);
    num("data.k_lo", c.data.k_lo);
    num("data.k_hi", c.data.k_hi);
    num("data.k_cut", c.data.k_cut);
    if (auto v = get("data.mode")) {
        const auto items = split_list(*v);
        bool ok = items.size() == 3;
        for (std::size_t i = 0; ok && i < 3; ++i) {
            if (auto d = to_int(items[i])) c.data.mode[i] = static_cast<int>(*d);
            else ok = false;
        }
        if (!ok) errs.push_back("data.mode: expected three integers 'a, b, c'");
    }
    c.data.gamma = c.gamma;
    c.data.spectral_exponent = c.data.exponent();

    numlist("diagnostics.sample_times", c.sample_times);
    num("diagnostics.fit_lo", c.fit_lo);
    num("diagnostics.fit_hi", c.fit_hi);
    integer("diagnostics.n_shells", c.radius.n_shells);
    enumerated("diagnostics.fit_model", c.radius.model, [](const std::string& s) { return fit_model_from_string(s); });
    enumerated("diagnostics.mode", c.mode, [](const std::string& s) { return bound_mode_from_string(s); });
    numlist("diagnostics.J_values", c.J_values);
    num("diagnostics.J_time", c.J_time);

    if (auto v = get("output.directory")) c.directory = *v;
    if (auto v = get("output.formats")) {
        c.formats = {false, false, false, false};
        for (const auto& f : split_list(*v)) {
            if (f == "csv") c.formats.csv = true;
            else if (f == "json") c.formats.json = true;
            else if (f == "checkpoints") c.formats.checkpoints = true;
            else if (f == "plot") c.formats.plot = true;
            else errs.push_back("output.formats: unknown format '" + f + "'");
        }
    }
    integer("output.checkpoint_stride", c.checkpoint_stride);

    for (const auto& [key, val] : kv)
        if (!used.count(key))
            errs.push_back("line " + std::to_string(val.second) + ": unknown key '" + key + "'");

    // range checks
    if (c.n < 4 || c.n % 2) errs.push_back("grid.n: must be even and >= 4");
    if (!(c.L > 0.0)) errs.push_back("grid.L: must be positive");
    if (!(c.dealias > 0.0 && c.dealias <= 1.0)) errs.push_back("grid.dealias: must lie in (0, 1]");
    for (const auto& v : c.solver.violations()) errs.push_back(v);
    if (!(c.oracle_tol > 0.0)) errs.push_back("solver.oracle_tol: must be positive");
    if (!(c.delta > 0.0)) errs.push_back("physics.delta: must be positive");
    if (!(c.eta0 > 0.0)) errs.push_back("physics.eta0: must be positive");
    if (!(c.lambda >= 0.0)) errs.push_back("physics.lambda: must be nonnegative");
    if (c.mode == BoundMode::subcritical && !(c.gamma > 0.5 + 2.0 * c.delta))
        errs.push_back("physics.gamma: subcritical mode needs gamma > 1/2 + 2*delta (gamma = " + fmt(c.gamma) +
                       ", delta = " + fmt(c.delta) + ")");
    if (c.mode == BoundMode::critical && c.gamma != 0.5)
        errs.push_back("physics.gamma: critical mode needs gamma = 0.5");
    if (c.coeffs != "navier_stokes" && c.coeffs != "zero") {
        std::filesystem::path p(c.coeffs);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        if (!std::filesystem::exists(p)) errs.push_back("physics.coeffs: file not found: " + p.string());
        else c.coeffs = std::filesystem::absolute(p).lexically_normal().string();
    }
    if (!(c.data.amplitude >= 0.0)) errs.push_back("data.amplitude: must be nonnegative");
    if (!(c.fit_lo > 0.0 && c.fit_lo < c.fit_hi)) errs.push_back("diagnostics.fit_lo/fit_hi: need 0 < fit_lo < fit_hi");
    if (c.radius.n_shells < 0 || c.radius.n_shells == 1) errs.push_back("diagnostics.n_shells: 0 (auto) or >= 2");
    if (c.checkpoint_stride < 1) errs.push_back("output.checkpoint_stride: must be >= 1");
    for (double J : c.J_values)
        if (!(J > 0.0)) errs.push_back("diagnostics.J_values: entries must be positive");
    const double T = c.solver.T;
    const double tmax = c.mode == BoundMode::subcritical ? std::exp(-1.0) : 1.0;
    for (double t : c.sample_times) {
        if (!(t > 0.0 && t <= T * (1.0 + 1e-12) && t < tmax)) {
            errs.push_back("diagnostics.sample_times: " + fmt(t) + " outside (0, min(T, " +
                           (c.mode == BoundMode::subcritical ? std::string("1/e") : std::string("1")) + "))");
            continue;
        }
        if (c.solver.n_times >= 2 && T > 0.0) {
            const double pos = t * (c.solver.n_times - 1) / T;
            if (std::abs(pos - std::round(pos)) > 1e-6)
                errs.push_back("diagnostics.sample_times: " + fmt(t) + " is not on the solver time lattice");
        }
    }
    if (c.J_time < 0.0 || c.J_time > T * (1.0 + 1e-12)) errs.push_back("diagnostics.J_time: outside [0, T]");
    if (!errs.empty()) throw ConfigError(errs);
    return c;
}

inline ScenarioConfig parse_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError({"cannot read config file " + path.string()});
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str(), path.parent_path());
}

/// Canonical text form; parse_config_text(to_config_text(c)) == c.
inline std::string to_config_text(const ScenarioConfig& c) {
    using detail::fmt;
    std::ostringstream os;
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
        return s;
    };
    os << "grid.n = " << c.n << "\n"
       << "grid.L = " << fmt(c.L) << "\n"
       << "grid.dealias = " << fmt(c.dealias) << "\n"
       << "solver.T = " << fmt(c.solver.T) << "\n"
       << "solver.n_times = " << c.solver.n_times << "\n"
       << "solver.quad_order = " << c.solver.quad_order << "\n"
       << "solver.tol = " << fmt(c.solver.tol) << "\n"
       << "solver.gamma = " << fmt(c.solver.gamma) << "\n"
       << "solver.max_iter = " << c.solver.max_iter << "\n"
       << "solver.dt = " << fmt(c.solver.dt) << "\n"
       << "solver.blowup_factor = " << fmt(c.solver.blowup_factor) << "\n"
       << "solver.interpolation = " << to_string(c.solver.interpolation) << "\n"
       << "solver.cross_check = " << (c.cross_check ? "true" : "false") << "\n"
       << "solver.oracle_tol = " << fmt(c.oracle_tol) << "\n"
       << "physics.coeffs = " << c.coeffs << "\n"
       << "physics.gamma = " << fmt(c.gamma) << "\n"
       << "physics.delta = " << fmt(c.delta) << "\n"
       << "physics.eta0 = " << fmt(c.eta0) << "\n"
       << "physics.lambda = " << fmt(c.lambda) << "\n"
       << "data.kind = " << to_string(c.kind) << "\n"
       << "data.amplitude = " << fmt(c.data.amplitude) << "\n"
       << "data.seed = " << c.data.seed << "\n"
       << "data.spectral_exponent = " << fmt(c.data.spectral_exponent) << "\n"
       << "data.k_lo = " << fmt(c.data.k_lo) << "\n"
       << "data.k_hi = " << fmt(c.data.k_hi) << "\n"
       << "data.k_cut = " << fmt(c.data.k_cut) << "\n"
       << "data.mode = " << c.data.mode[0] << ", " << c.data.mode[1] << ", " << c.data.mode[2] << "\n"
       << "diagnostics.sample_times = " << list(c.sample_times) << "\n"
       << "diagnostics.fit_lo = " << fmt(c.fit_lo) << "\n"
       << "diagnostics.fit_hi = " << fmt(c.fit_hi) << "\n"
       << "diagnostics.n_shells = " << c.radius.n_shells << "\n"
       << "diagnostics.fit_model = " << to_string(c.radius.model) << "\n"
       << "diagnostics.mode = " << to_string(c.mode) << "\n"
       << "diagnostics.J_values = " << list(c.J_values) << "\n"
       << "diagnostics.J_time = " << fmt(c.J_time) << "\n"
       << "output.directory = " << c.directory << "\n";
    std::string f;
    auto add = [&](bool on, const char* name) {
        if (on) f += (f.empty() ? "" : ", ") + std::string(name);
    };
    add(c.formats.csv, "csv");
    add(c.formats.json, "json");
    add(c.formats.checkpoints, "checkpoints");
    add(c.formats.plot, "plot");
    os << "output.formats = " << f << "\n"
       << "output.checkpoint_stride = " << c.checkpoint_stride << "\n";
    return os.str();
}

/// 64-bit FNV-1a, hex.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string config_hash(const ScenarioConfig& c) { return fnv1a_hex(to_config_text(c)); }

/// Environment variable holding the root for relative output directories.
inline constexpr const char* kOutputRootEnv = "GNS_OUTPUT_ROOT";

inline std::filesystem::path resolve_output_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    if (p.is_relative())
        if (const char* root = std::getenv(kOutputRootEnv); root && *root) p = std::filesystem::path(root) / p;
    return p;
}

inline QCoefficients resolve_coeffs(const std::string& spec, const std::filesystem::path& base_dir = {}) {
    if (spec == "navier_stokes") return navier_stokes_coeffs();
    if (spec == "zero") return QCoefficients{};
    std::filesystem::path p(spec);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return load_q_coefficients(p);
}

}  // namespace gns
