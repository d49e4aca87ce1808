#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "oracles.hpp"

using namespace gns;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::string body = slurp(e.path());
        if (e.path().filename() == "manifest.json" && e.path().parent_path() == dir) {
            auto j = nlohmann::json::parse(body);
            j.erase("wall_clock_seconds");
            body = j.dump();
        }
        out[fs::relative(e.path(), dir).string()] = body;
    }
    return out;
}

std::vector<std::string> violations_of(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.violations;
    }
    return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("gns_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(Config, DefaultsFilled) {
    const auto c = parse_config_text("# nothing but a comment\n\n");
    EXPECT_DOUBLE_EQ(c.L, 2 * kPi);
    EXPECT_DOUBLE_EQ(c.dealias, 2.0 / 3.0);
    EXPECT_EQ(c.eta0, 1e-5);
    EXPECT_EQ(c.solver.gamma, c.gamma);
    EXPECT_EQ(c.data.spectral_exponent, 2.5);
}

TEST(Config, GammaBelowSubcriticalThresholdRejected) {
    const auto v = violations_of("physics.gamma = 0.6\nphysics.delta = 0.1\n");
    ASSERT_EQ(v.size(), 1u);
    EXPECT_TRUE(mentions(v, "physics.gamma"));
    EXPECT_TRUE(violations_of("physics.gamma = 0.5\ndiagnostics.mode = critical\n").empty());
}

TEST(Config, UnknownKeyNamedAndAllViolationsCollected) {
    EXPECT_TRUE(mentions(violations_of("gama = 1\n"), "'gama'"));
    const auto v = violations_of("grid.n = 5\nsolver.T = -1\nfoo.bar = 2\ndata.kind = vortex\nsolver.tol = abc\n"
                                 "solver.T = 2\nthis line has no equals sign\n");
    EXPECT_TRUE(mentions(v, "grid.n"));
    EXPECT_TRUE(mentions(v, "solver.T"));
    EXPECT_TRUE(mentions(v, "'foo.bar'"));
    EXPECT_TRUE(mentions(v, "data.kind"));
    EXPECT_TRUE(mentions(v, "solver.tol"));
    EXPECT_TRUE(mentions(v, "duplicate key"));
    EXPECT_TRUE(mentions(v, "line 7"));
}

TEST(Config, SampleTimesMustSitOnTheLattice) {
    EXPECT_TRUE(violations_of("diagnostics.sample_times = 0.001, 0.01\n").empty());
    EXPECT_TRUE(mentions(violations_of("diagnostics.sample_times = 0.0012\n"), "lattice"));
    EXPECT_TRUE(mentions(violations_of("diagnostics.sample_times = 0.02\n"), "outside"));
}

TEST(Config, CanonicalTextRoundTrips) {
    const auto c = parse_config_text(
        "grid.n = 16\ngrid.L = 3.5\nsolver.T = 0.02\nsolver.n_times = 11\nphysics.gamma = 1.5\n"
        "data.kind = random_sobolev_tail\ndata.seed = 42\ndata.k_hi = 5\n"
        "diagnostics.sample_times = 0.002, 0.01\ndiagnostics.fit_model = exponential_algebraic\n"
        "output.formats = csv, checkpoints\nsolver.interpolation = linear\n");
    EXPECT_EQ(c.solver.gamma, 1.5);
    EXPECT_EQ(c.data.spectral_exponent, 3.0);
    const auto text = to_config_text(c);
    const auto back = parse_config_text(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(to_config_text(back), text);
    EXPECT_EQ(config_hash(back), config_hash(c));
    auto d = c;
    d.data.seed = 43;
    EXPECT_NE(config_hash(d), config_hash(c));
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
}

TEST(Config, CoefficientFileResolvedAgainstConfigDirectory) {
    const auto dir = scratch("coeffs");
    fs::create_directories(dir);
    save_q_coefficients(dir / "q.json", navier_stokes_coeffs());
    std::ofstream(dir / "run.cfg") << "physics.coeffs = q.json\n";
    const auto c = parse_config(dir / "run.cfg");
    EXPECT_TRUE(fs::path(c.coeffs).is_absolute());
    EXPECT_EQ(resolve_coeffs(c.coeffs), navier_stokes_coeffs());
    EXPECT_TRUE(mentions(violations_of("physics.coeffs = /nonexistent/q.json\n"), "not found"));
    fs::remove_all(dir);
}

TEST(Config, OutputRootFromEnvironment) {
    ::setenv(kOutputRootEnv, "/tmp/gns_root", 1);
    EXPECT_EQ(resolve_output_dir("run1"), fs::path("/tmp/gns_root/run1"));
    EXPECT_EQ(resolve_output_dir("/abs/run"), fs::path("/abs/run"));
    ::unsetenv(kOutputRootEnv);
    EXPECT_EQ(resolve_output_dir("run1"), fs::path("run1"));
}

TEST(InitialData, TaylorGreenSolenoidalOnOneShell) {
    const Grid g(16, 2 * kPi);
    const auto u = make_initial_data(DataKind::taylor_green, g, {});
    EXPECT_EQ(divergence_defect(u), 0.0);
    EXPECT_EQ(u.hermitian_defect(), 0.0);
    for_each_mode(g, [&](const Mode& m) {
        for (int j = 0; j < 3; ++j)
            if (u[j].data()[m.idx] != cplx{}) {
                EXPECT_EQ(m.ksq, 3.0);
            }
    });
    // agrees with the physical-space formula
    const auto p = to_physical(u);
    for (int a = 0; a < 16; a += 5)
        for (int b = 0; b < 16; b += 3)
            for (int c = 0; c < 16; c += 7) {
                const double x = p[0].x(a), y = p[0].x(b), z = p[0].x(c);
                EXPECT_NEAR(p[0].at(a, b, c), std::sin(x) * std::cos(y) * std::cos(z), 1e-14);
                EXPECT_NEAR(p[1].at(a, b, c), -std::cos(x) * std::sin(y) * std::cos(z), 1e-14);
                EXPECT_NEAR(p[2].at(a, b, c), 0.0, 1e-14);
            }
}

TEST(InitialData, RandomTailDeterministicAndWellFormed) {
    const Grid g(32, 2 * kPi);
    DataParams p;
    p.seed = 7;
    const auto a = make_initial_data(DataKind::random_sobolev_tail, g, p);
    const auto b = make_initial_data(DataKind::random_sobolev_tail, g, p);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a[j].data(), b[j].data());
    p.seed = 8;
    EXPECT_GT(oracle::max_abs_diff(a, make_initial_data(DataKind::random_sobolev_tail, g, p)), 0.0);
    EXPECT_LE(divergence_defect(a), 1e-14);
    EXPECT_LE(a.hermitian_defect(), 1e-15);
    const double hi = g.dealias_fraction() * g.kmax_axis();
    for_each_mode(g, [&](const Mode& m) {
        double mag = 0;
        for (int j = 0; j < 3; ++j) mag += std::norm(a[j].data()[m.idx]);
        mag = std::sqrt(mag);
        if (m.ksq == 0 || m.kabs() < 1 || m.kabs() > hi || g.is_nyquist(m.i1) || g.is_nyquist(m.i2) ||
            g.is_nyquist(m.i3)) {
            EXPECT_EQ(mag, 0.0);
        } else {
            EXPECT_LE(mag, std::sqrt(3.0) * std::pow(m.kabs(), -2.5) * (1 + 1e-12));
        }
    });
    EXPECT_THROW(
        [&] {
            DataParams q;
            q.k_hi = 1e3;
            make_initial_data(DataKind::random_sobolev_tail, g, q);
        }(),
        DomainError);
}

TEST(InitialData, SingleModeAndCompactSpectrum) {
    const Grid g(16, 2 * kPi);
    DataParams p;
    p.mode = {1, 2, 0};
    p.amplitude = 2.0;
    const auto u = make_initial_data(DataKind::single_mode, g, p);
    EXPECT_LE(divergence_defect(u), 1e-15);
    EXPECT_NEAR(l2_norm(u), std::sqrt(2.0), 1e-14);  // mean of (2 cos)^2 is 2
    p.mode = {8, 0, 0};
    EXPECT_THROW(make_initial_data(DataKind::single_mode, g, p), DomainError);
    DataParams c;
    c.k_cut = 3.0;
    const auto w = make_initial_data(DataKind::compact_spectrum, g, c);
    EXPECT_FALSE(w.is_zero());
    for_each_mode(g, [&](const Mode& m) {
        if (m.kabs() <= 3.0) return;
        for (int j = 0; j < 3; ++j) EXPECT_EQ(w[j].data()[m.idx], cplx{});
    });
}

class ScenarioTest : public ::testing::Test {
  protected:
    ScenarioConfig base(const std::string& name) {
        ScenarioConfig c = parse_config_text("grid.n = 16\nsolver.T = 0.01\nsolver.n_times = 11\n"
                                             "diagnostics.sample_times = 0.002, 0.005, 0.01\n"
                                             "diagnostics.J_values = 4, 8, 16\n");
        dir_ = scratch(name);
        c.directory = dir_.string();
        return c;
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST_F(ScenarioTest, HeatScenarioWritesCompleteArtifacts) {
    auto c = base("heat");
    c.coeffs = "zero";
    const auto a = run_scenario(c);
    EXPECT_EQ(a.exit_code, kExitOk);
    EXPECT_EQ(a.status, "ok");
    ASSERT_TRUE(a.picard);
    EXPECT_EQ(a.picard->iterates, 2);
    for (const char* f : {"config.cfg", "norms.csv", "bound_report.csv", "bound_report.json", "manifest.json",
                          "plot/ratio.dat", "plot/radii.dat", "plot/eta_J.dat"})
        EXPECT_TRUE(fs::exists(dir_ / f)) << f;
    // taylor-green heat flow keeps its single shell: every radius is capped
    ASSERT_TRUE(a.diagnostics.bound);
    for (const auto& r : a.diagnostics.bound->rows) EXPECT_TRUE(r.capped);
    // no temporary directory is left beside the target
    for (const auto& e : fs::directory_iterator(dir_.parent_path()))
        EXPECT_EQ(e.path().filename().string().find(dir_.filename().string() + ".tmp-"), std::string::npos);
    // plot files: one row per sample (ratio, radii), one per J (eta_J)
    auto rows = [&](const char* f) {
        std::istringstream is(slurp(dir_ / f));
        std::string line;
        int n = 0;
        while (std::getline(is, line))
            if (!line.empty() && line[0] != '#') ++n;
        return n;
    };
    EXPECT_EQ(rows("plot/ratio.dat"), 3);
    EXPECT_EQ(rows("plot/radii.dat"), 3);
    EXPECT_EQ(rows("plot/eta_J.dat"), 3);
    EXPECT_NE(slurp(dir_ / "plot/ratio.dat").find(" inf\n"), std::string::npos);
    const auto m = nlohmann::json::parse(slurp(dir_ / "manifest.json"));
    EXPECT_EQ(m["config_hash"], a.hash);
    EXPECT_EQ(m["exit_code"], 0);
    EXPECT_EQ(parse_config_text(m["config"].get<std::string>()), c);
    // the stored config parses back to the run's configuration
    EXPECT_EQ(parse_config(dir_ / "config.cfg"), c);
}

TEST_F(ScenarioTest, NonConvergenceExitsWithHistory) {
    auto c = base("diverge");
    c.solver.T = 1.0;
    c.solver.max_iter = 8;
    c.sample_times = {};
    c.data.amplitude = 200.0;
    const auto a = run_scenario(c);
    EXPECT_EQ(a.exit_code, kExitNonConvergence);
    EXPECT_FALSE(a.picard_deltas.empty());
    const auto m = nlohmann::json::parse(slurp(dir_ / "manifest.json"));
    EXPECT_EQ(m["exit_code"], 3);
    EXPECT_EQ(m["picard"]["converged"], false);
    EXPECT_FALSE(m["picard"]["per_iterate_delta"].empty());
}

TEST_F(ScenarioTest, CrossCheckAndCheckpointsAndDeterminism) {
    auto c = base("ns");
    c.kind = DataKind::random_sobolev_tail;
    c.data.seed = 3;
    c.data.k_hi = 5;
    c.cross_check = true;
    c.solver.dt = 1e-4;
    c.formats.checkpoints = true;
    c.checkpoint_stride = 5;
    c.fit_lo = 1.5;
    c.fit_hi = 5;
    c.radius.n_shells = 12;
    const auto a = run_scenario(c, {}, true);
    ASSERT_TRUE(a.oracle_disagreement);
    EXPECT_LE(*a.oracle_disagreement, c.oracle_tol);
    const auto first = snapshot(dir_);
    EXPECT_TRUE(first.count("trajectory/manifest.json"));
    const auto loaded = load_trajectory(dir_ / "trajectory" / "manifest.json");
    EXPECT_EQ(loaded.config_hash, a.hash);
    EXPECT_EQ(loaded.trajectory.size(), 3u);  // states 0, 5, 10
    EXPECT_EQ(oracle::max_abs_diff(loaded.trajectory.state(2), a.trajectory->state(10)), 0.0);
    run_scenario(c);
    EXPECT_EQ(snapshot(dir_), first);
}
