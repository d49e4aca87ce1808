#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>

#include "oracles.hpp"

using namespace gns;
constexpr double kPi = std::numbers::pi;

namespace {

QCoefficients random_coeffs(std::uint64_t seed) {
    std::array<double, QCoefficients::kSize> a{};
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = counter_normal(seed, i, 0);
    return QCoefficients::from_array(a);
}

}  // namespace

TEST(QSymbol, Examples) {
    QCoefficients zero;
    EXPECT_EQ(q_symbol(zero, {1, 2, 3}, 0, 1, 2, 0), 0.0);
    QCoefficients a;
    a(0, 0, 0, 0, 0, 0) = 1.0;
    EXPECT_DOUBLE_EQ(q_symbol(a, {1, 0, 0}, 0, 0, 0, 0), 1.0);
    QCoefficients b;
    b(0, 0, 0, 1, 0, 0) = 1.0;
    EXPECT_DOUBLE_EQ(q_symbol(b, {1, 1, 0}, 0, 0, 0, 0), 0.5);
    EXPECT_EQ(q_symbol(a, {0, 0, 0}, 0, 0, 0, 0), 0.0);
}

TEST(QCoefficients, RejectsNonFiniteAndRoundTripsJson) {
    std::array<double, QCoefficients::kSize> a{};
    a[5] = std::nan("");
    EXPECT_THROW(QCoefficients::from_array(a), DomainError);
    const auto q = random_coeffs(3);
    EXPECT_EQ(q_coefficients_from_json(to_json(q)), q);
    const auto path = std::filesystem::temp_directory_path() / "gns_q_roundtrip.json";
    save_q_coefficients(path, q);
    EXPECT_EQ(load_q_coefficients(path), q);
    std::filesystem::remove(path);
    EXPECT_THROW(q_coefficients_from_json(nlohmann::json::array({1, 2})), IoError);
}

TEST(ApplyQ, MatchesBruteForceConvolution) {
    // fields whose products alias are still compared exactly, since the
    // oracle applies the same lattice index arithmetic and truncation
    const Grid g(8, 2 * kPi);
    const auto coeffs = random_coeffs(11);
    const auto u = oracle::random_velocity(g, 2, 1);
    const auto v = oracle::random_velocity(g, 3, 2);
    const auto q = apply_Q(coeffs, u, v);
    const auto ref = oracle::brute_force_Q(coeffs, u, v);
    EXPECT_LE(oracle::max_abs_diff(q, ref), 1e-12 * oracle::max_abs(ref));
    EXPECT_LE(q.hermitian_defect(), 1e-12 * oracle::max_abs(ref));
}

TEST(ApplyQ, ZeroArgumentAndBilinearity) {
    const Grid g(16, 2 * kPi);
    const auto coeffs = random_coeffs(5);
    const auto u = oracle::random_velocity(g, 4, 3);
    const auto v = oracle::random_velocity(g, 4, 4);
    const auto w = oracle::random_velocity(g, 4, 5);
    EXPECT_TRUE(apply_Q(coeffs, u, VelocityField(g)).is_zero());
    const auto quv = apply_Q(coeffs, u, v);
    const double scale = oracle::max_abs(quv);
    EXPECT_LE(oracle::max_abs_diff(apply_Q(coeffs, 2.5 * u, v), 2.5 * quv), 1e-12 * 2.5 * scale);
    EXPECT_LE(oracle::max_abs_diff(apply_Q(coeffs, u, -3.0 * v), -3.0 * quv), 1e-12 * 3.0 * scale);
    EXPECT_LE(oracle::max_abs_diff(apply_Q(coeffs, u + w, v), quv + apply_Q(coeffs, w, v)), 1e-12 * scale);
    EXPECT_LE(oracle::max_abs_diff(apply_Q(coeffs, u, v + w), quv + apply_Q(coeffs, u, w)), 1e-12 * scale);
}

TEST(ApplyQ, OrderSensitive) {
    const Grid g(8, 2 * kPi);
    QCoefficients a;
    a(0, 0, 0, 0, 0, 1) = 1.0;  // only u^1 v^2 enters
    const auto u = oracle::random_velocity(g, 2, 8);
    const auto v = oracle::random_velocity(g, 2, 9);
    EXPECT_GT(oracle::max_abs_diff(apply_Q(a, u, v), apply_Q(a, v, u)), 1e-6);
}

TEST(ApplyQ, GridMismatch) {
    const auto c = navier_stokes_coeffs();
    EXPECT_THROW(apply_Q(c, VelocityField(Grid(8, 1.0)), VelocityField(Grid(8, 2.0))), GridMismatchError);
}

TEST(NavierStokes, TaylorGreenMatchesLerayConvection) {
    const Grid g(16, 2 * kPi);
    const auto ns = navier_stokes_coeffs();
    VelocityField u(g);
    // classical 3-D Taylor-Green, written from its physical form
    std::array<PhysicalField, 3> p{PhysicalField(g), PhysicalField(g), PhysicalField(g)};
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            for (int c = 0; c < 16; ++c) {
                const double x = p[0].x(a), y = p[0].x(b), z = p[0].x(c);
                p[0].at(a, b, c) = std::sin(x) * std::cos(y) * std::cos(z);
                p[1].at(a, b, c) = -std::cos(x) * std::sin(y) * std::cos(z);
            }
    u = from_physical(p);
    const auto q = apply_Q(ns, u, u);
    const auto ref = oracle::leray_convection(u);
    EXPECT_GT(oracle::max_abs(ref), 0.01);  // nonzero nonlinearity
    EXPECT_LE(oracle::max_abs_diff(q, ref), 1e-12);
    EXPECT_LE(divergence_defect(q), 1e-10);
}

TEST(NavierStokes, RandomDivergenceFreeMatchesOracle) {
    const Grid g(16, 2 * kPi);
    const auto ns = navier_stokes_coeffs();
    const auto u = oracle::random_velocity(g, 3, 21, true);
    const auto q = apply_Q(ns, u, u);
    const auto ref = oracle::leray_convection(u);
    EXPECT_LE(oracle::max_abs_diff(q, ref), 1e-12 * oracle::max_abs(ref));
}

TEST(NavierStokes, ConstantFieldGivesZeroAndAnyFieldIsSolenoidal) {
    const Grid g(16, 2 * kPi);
    const auto ns = navier_stokes_coeffs();
    VelocityField c(g);
    c[0].at(0, 0, 0) = 1.0;
    c[2].at(0, 0, 0) = -2.0;
    EXPECT_LE(oracle::max_abs(apply_Q(ns, c, c)), 1e-15);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto u = oracle::random_velocity(g, 7, 40 + seed);  // not divergence-free
        const auto q = apply_Q(ns, u, u);
        double worst = 0;
        for (const auto& v : divergence(q).data()) worst = std::max(worst, std::abs(v));
        EXPECT_LE(worst, 1e-10 * l2_norm(q));
    }
}

TEST(NavierStokes, ZeroModeNeverFed) {
    const Grid g(8, 2 * kPi);
    const auto u = oracle::random_velocity(g, 3, 77);
    const auto q = apply_Q(random_coeffs(2), u, u);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(q[j].at(0, 0, 0), cplx(0.0));
}

TEST(Leray, GradientRemovedSolenoidalKept) {
    const Grid g(16, 2 * kPi);
    const auto phi = oracle::random_scalar(g, 6, 3);
    VelocityField grad(g);
    const cplx I(0, 1);
    for_each_mode(g, [&](const Mode& m) {
        if (g.is_nyquist(m.i1) || g.is_nyquist(m.i2) || g.is_nyquist(m.i3)) return;
        grad[0].data()[m.idx] = I * m.k1 * phi.data()[m.idx];
        grad[1].data()[m.idx] = I * m.k2 * phi.data()[m.idx];
        grad[2].data()[m.idx] = I * m.k3 * phi.data()[m.idx];
    });
    EXPECT_LE(oracle::max_abs(leray_project(grad)), 1e-14 * oracle::max_abs(grad));
    const auto u = oracle::random_velocity(g, 6, 4, true);
    EXPECT_LE(oracle::max_abs_diff(leray_project(u), u), 1e-14 * oracle::max_abs(u));
}

TEST(Leray, IdempotentAndSelfAdjoint) {
    const Grid g(16, 2 * kPi);
    const auto u = oracle::random_velocity(g, 7, 5);
    const auto v = oracle::random_velocity(g, 7, 6);
    const auto pu = leray_project(u);
    EXPECT_LE(oracle::max_abs_diff(leray_project(pu), pu), 1e-14 * oracle::max_abs(u));
    EXPECT_LE(divergence_defect(pu), 1e-10);
    auto inner = [&](const VelocityField& a, const VelocityField& b) {
        cplx s = 0;
        oracle::for_each_full_mode(g, [&](int i, int j, int k, double, double, double) {
            for (int c = 0; c < 3; ++c) s += a[c].full(i, j, k) * std::conj(b[c].full(i, j, k));
        });
        return s;
    };
    const cplx lhs = inner(pu, v), rhs = inner(u, leray_project(v));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(lhs));
}

TEST(Heat, IdentityDecayAndSemigroup) {
    const Grid g(16, 2 * kPi);
    const auto u = oracle::random_velocity(g, 7, 8);
    EXPECT_EQ(oracle::max_abs_diff(heat_semigroup(u, 0.0), u), 0.0);
    VelocityField one(g);
    one[0].set_full(1, 0, 0, 1.0);
    EXPECT_NEAR(heat_semigroup(one, 1.0)[0].full(1, 0, 0).real(), std::exp(-1.0), 1e-16);
    const auto a = heat_semigroup(heat_semigroup(u, 0.013), 0.021);
    const auto b = heat_semigroup(u, 0.034);
    EXPECT_LE(oracle::max_abs_diff(a, b), 1e-14 * oracle::max_abs(u));
    EXPECT_THROW(heat_semigroup(u, -1e-3), DomainError);
    // contraction of every Sobolev norm
    double prev = 1e300;
    for (double t : {0.0, 0.01, 0.1, 1.0}) {
        const double n = sobolev_norm(heat_semigroup(u, t), 1.5, false);
        EXPECT_LE(n, prev);
        prev = n;
    }
}

TEST(Scaling, RelabellingCommutesWithQ) {
    // u on the box of side 2*pi versus its rescaled copy 2 u(2x) on the box of side pi:
    // identical index data, amplitudes doubled, wavenumbers doubled. Q is
    // quadratic with one derivative, so Q scales by 2 * 2 * 2 = 8.
    const Grid g1(16, 2 * kPi), g2(16, kPi);
    const auto ns = navier_stokes_coeffs();
    const auto u1 = oracle::random_velocity(g1, 4, 12, true);
    VelocityField u2(g2);
    for (int j = 0; j < 3; ++j) u2[j].data() = u1[j].data();
    u2 *= 2.0;
    const auto q1 = apply_Q(ns, u1, u1);
    const auto q2 = apply_Q(ns, u2, u2);
    double worst = 0;
    for (int j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < q1[j].data().size(); ++i)
            worst = std::max(worst, std::abs(q2[j].data()[i] - 8.0 * q1[j].data()[i]));
    EXPECT_LE(worst, 1e-12 * 8.0 * oracle::max_abs(q1));
}
