// gns: solve / diagnose / report / selftest front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gns/gns.hpp"

namespace fs = std::filesystem;

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

void apply(gns::ScenarioConfig& c, const Overrides& o) {
    if (o.seed) c.data.seed = *o.seed;
    if (o.out) c.directory = *o.out;
}

void summarize(const gns::RunArtifacts& a) {
    std::cout << "status:    " << a.status << "\n"
              << "exit code: " << a.exit_code << "\n"
              << "artifacts: " << a.directory.string() << "\n"
              << "config:    " << a.hash << "\n";
    if (a.picard) std::cout << "picard:    " << a.picard->iterates << " iterates, residual "
                            << gns::format_double(a.picard->residual) << "\n";
    if (a.oracle_disagreement)
        std::cout << "etd check: relative L2 " << gns::format_double(*a.oracle_disagreement) << "\n";
    if (a.diagnostics.bound) {
        std::cout << "t                      predictor              measured               ratio\n";
        for (const auto& r : a.diagnostics.bound->rows) {
            std::printf("%-22s %-22s %-22s %s\n", gns::format_double(r.t).c_str(),
                        gns::format_double(r.predictor).c_str(),
                        r.capped ? "inf (capped)" : gns::format_double(r.measured_radius).c_str(),
                        gns::format_double(r.ratio).c_str());
        }
    }
}

int cmd_solve(const std::string& cfg_path, const Overrides& o) {
    auto c = gns::parse_config(cfg_path);
    apply(c, o);
    const auto a = gns::run_scenario(c, fs::path(cfg_path).parent_path());
    summarize(a);
    return a.exit_code;
}

int cmd_diagnose(const std::string& manifest, const std::string& cfg_path, const Overrides& o) {
    auto c = gns::parse_config(cfg_path);
    apply(c, o);
    auto loaded = gns::load_trajectory(manifest);
    if (!loaded.config_hash.empty() && loaded.config_hash != gns::config_hash(c))
        std::cerr << "note: trajectory was produced under config " << loaded.config_hash << ", diagnosing with "
                  << gns::config_hash(c) << "\n";
    const auto a = gns::diagnose_scenario(std::move(loaded.trajectory), c);
    summarize(a);
    return a.exit_code;
}

int cmd_report(const std::string& dir) {
    const fs::path d(dir);
    std::ifstream ms(d / "manifest.json");
    if (!ms) throw gns::IoError("no manifest.json in " + dir);
    nlohmann::json m;
    ms >> m;
    std::cout << "config hash: " << m.value("config_hash", "?") << "\n"
              << "status:      " << m.value("status", "?") << " (exit " << m.value("exit_code", -1) << ")\n";
    if (m.contains("picard")) std::cout << "picard:      " << m["picard"].dump() << "\n";
    if (m.contains("oracle")) std::cout << "oracle:      " << m["oracle"].dump() << "\n";
    if (m.contains("norms")) std::cout << "norms:       " << m["norms"].dump() << "\n";
    std::ifstream cs(d / "bound_report.csv");
    if (cs) {
        std::cout << "\n";
        std::string line;
        while (std::getline(cs, line))
            if (line.empty() || line[0] != '#') std::cout << line << "\n";
    }
    return m.value("exit_code", 0);
}

int cmd_selftest() {
    int failed = 0;
    for (const auto& r : gns::run_selftest()) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
        failed += r.pass ? 0 : 1;
    }
    std::cout << (failed ? std::to_string(failed) + " check(s) failed\n" : std::string("all checks passed\n"));
    return failed ? gns::kExitOther : gns::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Navier-Stokes solver and Gevrey diagnostics"};
    app.set_version_flag("--version", std::string(gns::kVersion));
    app.require_subcommand(1);

    Overrides o;
    int threads = 1;
    std::uint64_t seed = 0;
    std::string out;
    auto* seed_opt = app.add_option("--seed", seed, "override data.seed");
    app.add_option("--threads", threads, "FFT threads")->check(CLI::PositiveNumber);
    auto* out_opt = app.add_option("--out", out, "override output.directory (relative paths go under $GNS_OUTPUT_ROOT)");

    std::string cfg_path, manifest, dir;
    auto* solve = app.add_subcommand("solve", "run a scenario from a config file");
    solve->add_option("config", cfg_path)->required()->check(CLI::ExistingFile);
    auto* diag = app.add_subcommand("diagnose", "recompute diagnostics for a saved trajectory");
    diag->add_option("manifest", manifest, "trajectory/manifest.json")->required()->check(CLI::ExistingFile);
    diag->add_option("config", cfg_path)->required()->check(CLI::ExistingFile);
    auto* rep = app.add_subcommand("report", "print the summary of an artifacts directory");
    rep->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
    auto* self = app.add_subcommand("selftest", "run the built-in invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : gns::kExitConfig;
    }
    if (*seed_opt) o.seed = seed;
    if (*out_opt) o.out = out;
    if (threads > 1) gns::set_fft_threads(threads);

    try {
        if (*solve) return cmd_solve(cfg_path, o);
        if (*diag) return cmd_diagnose(manifest, cfg_path, o);
        if (*rep) return cmd_report(dir);
        if (*self) return cmd_selftest();
    } catch (const gns::ConfigError& e) {
        std::cerr << "configuration error:\n";
        for (const auto& v : e.violations) std::cerr << "  " << v << "\n";
        return gns::kExitConfig;
    } catch (const gns::NonConvergenceError& e) {
        std::cerr << e.what() << "\n";
        return gns::kExitNonConvergence;
    } catch (const gns::InconclusiveFitError& e) {
        std::cerr << e.what() << "\n";
        return gns::kExitInconclusiveFit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gns::kExitOther;
    }
    return gns::kExitOther;
}
