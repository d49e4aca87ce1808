#pragma once

// Slow, independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "gns/gns.hpp"

namespace oracle {

using gns::cplx;

/// Direct O(N^2) DFT with the library's normalisation (constant -> coeff(0)).
inline std::vector<cplx> naive_dft(const gns::PhysicalField& f) {
    const int n = f.grid.n();
    std::vector<cplx> out(static_cast<std::size_t>(n) * n * n);
    const double w = 2.0 * std::numbers::pi / n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                cplx s = 0.0;
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        for (int z = 0; z < n; ++z)
                            s += f.at(x, y, z) * std::polar(1.0, -w * (a * x + b * y + c * z));
                out[(static_cast<std::size_t>(a) * n + b) * n + c] = s / static_cast<double>(n * n * n);
            }
    return out;
}

/// Visits the whole n^3 lattice (not just the stored half).
template <class Fn>
void for_each_full_mode(const gns::Grid& g, Fn&& fn) {
    const int n = g.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const double k1 = g.wavenumber(a), k2 = g.wavenumber(b), k3 = g.wavenumber(c);
                fn(a, b, c, k1, k2, k3);
            }
}

/// (sum over the full lattice, |k| >= cutoff, of |k|^{2s} |u(k)|^2)^{1/2}, three components.
inline double full_lattice_norm(const gns::VelocityField& u, double s, bool homogeneous, double cutoff = 0.0) {
    long double acc = 0.0L;
    for_each_full_mode(u.grid(), [&](int a, int b, int c, double k1, double k2, double k3) {
        const double ksq = k1 * k1 + k2 * k2 + k3 * k3;
        if (std::sqrt(ksq) < cutoff) return;
        const double w = homogeneous ? (s == 0.0 ? 1.0 : std::pow(ksq, s)) : std::pow(1.0 + ksq, s);
        for (int j = 0; j < 3; ++j) acc += w * std::norm(u[j].full(a, b, c));
    });
    return std::sqrt(static_cast<double>(acc));
}

/// Random real scalar field with integer-index support |i| <= K per axis.
inline gns::SpectralField random_scalar(const gns::Grid& g, int K, std::uint64_t seed, double decay = 0.0) {
    gns::SpectralField f(g);
    const int n = g.n();
    for (int a = -K; a <= K; ++a)
        for (int b = -K; b <= K; ++b)
            for (int c = 0; c <= K; ++c) {
                const auto idx = static_cast<std::uint64_t>(((a + n) % n * n + (b + n) % n) * n + c);
                const double mag = std::exp(-decay * std::sqrt(double(a * a + b * b + c * c)));
                const cplx v(gns::counter_normal(seed, idx, 0) * mag, gns::counter_normal(seed, idx, 1) * mag);
                if (c == 0) {
                    // keep one representative of each conjugate pair
                    if (a < 0 || (a == 0 && b < 0)) continue;
                }
                f.set_full((a + n) % n, (b + n) % n, c, v);
            }
    return f;
}

inline gns::VelocityField random_velocity(const gns::Grid& g, int K, std::uint64_t seed, bool project = false) {
    gns::VelocityField u(random_scalar(g, K, seed), random_scalar(g, K, seed + 101), random_scalar(g, K, seed + 202));
    return project ? gns::leray_project(std::move(u)) : u;
}

/// Q(u,v) by brute-force convolution over the full lattice, with the same
/// 2/3 truncation applied to the product spectra and Nyquist/zero modes
/// dropped from the output.
inline gns::VelocityField brute_force_Q(const gns::QCoefficients& a, const gns::VelocityField& u,
                                        const gns::VelocityField& v) {
    const gns::Grid& g = u.grid();
    const int n = g.n();
    // collect support
    struct Entry { int a, b, c; cplx val[3]; };
    auto support = [&](const gns::VelocityField& w) {
        std::vector<Entry> s;
        for_each_full_mode(g, [&](int i1, int i2, int i3, double, double, double) {
            Entry e{g.signed_index(i1), g.signed_index(i2), g.signed_index(i3), {}};
            bool nz = false;
            for (int j = 0; j < 3; ++j) {
                e.val[j] = w[j].full(i1, i2, i3);
                nz = nz || e.val[j] != cplx{};
            }
            if (nz) s.push_back(e);
        });
        return s;
    };
    const auto su = support(u), sv = support(v);
    // products P^{kl}(k) on the full lattice (aliased index arithmetic)
    std::map<std::array<int, 3>, std::array<cplx, 9>> prod;
    for (const auto& p : su)
        for (const auto& q : sv) {
            const int s1 = ((p.a + q.a) % n + n) % n, s2 = ((p.b + q.b) % n + n) % n, s3 = ((p.c + q.c) % n + n) % n;
            auto& P = prod[{s1, s2, s3}];
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) P[k * 3 + l] += p.val[k] * q.val[l];
        }
    gns::VelocityField out(g);
    const cplx I(0.0, 1.0);
    for (const auto& [key, P] : prod) {
        const int i1 = key[0], i2 = key[1], i3 = key[2];
        if (i3 > n / 2) continue;
        if (!g.passes_dealias(i1, i2, i3)) continue;
        if (g.is_nyquist(i1) || g.is_nyquist(i2) || g.is_nyquist(i3)) continue;
        const gns::Wavevector xi{g.wavenumber(i1), g.wavenumber(i2), g.wavenumber(i3)};
        if (xi[0] == 0 && xi[1] == 0 && xi[2] == 0) continue;
        for (int j = 0; j < 3; ++j) {
            cplx s = 0.0;
            for (int m = 0; m < 3; ++m)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) s += I * xi[m] * gns::q_symbol(a, xi, j, m, k, l) * P[k * 3 + l];
            out[j].at(i1, i2, i3) = s;
        }
    }
    return out;
}

/// -P div(u (x) u) evaluated as -P[(u . grad) u] with spectral derivatives
/// and a physical-space product; valid for divergence-free u.
inline gns::VelocityField leray_convection(const gns::VelocityField& u) {
    const gns::Grid& g = u.grid();
    const auto up = gns::to_physical(u);
    std::array<gns::PhysicalField, 3> conv{gns::PhysicalField(g), gns::PhysicalField(g), gns::PhysicalField(g)};
    const cplx I(0.0, 1.0);
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m) {
            gns::SpectralField d = u[j];
            gns::for_each_mode(g, [&](const gns::Mode& md) {
                const double km[3] = {md.k1, md.k2, md.k3};
                d.data()[md.idx] *= I * km[m];
                if (g.is_nyquist(md.i1) || g.is_nyquist(md.i2) || g.is_nyquist(md.i3)) d.data()[md.idx] = 0.0;
            });
            const auto dp = gns::inverse_transform(d);
            for (std::size_t x = 0; x < dp.values.size(); ++x) conv[j].values[x] += up[m].values[x] * dp.values[x];
        }
    gns::VelocityField out = gns::from_physical(conv);
    for (int j = 0; j < 3; ++j) out[j] = gns::dealias(out[j]);
    out = gns::leray_project(std::move(out));
    out *= -1.0;
    for (int j = 0; j < 3; ++j)
        gns::for_each_mode(g, [&](const gns::Mode& md) {
            if (g.is_nyquist(md.i1) || g.is_nyquist(md.i2) || g.is_nyquist(md.i3) || md.ksq == 0.0)
                out[j].data()[md.idx] = 0.0;
        });
    return out;
}

inline double max_abs_diff(const gns::VelocityField& a, const gns::VelocityField& b) {
    double d = 0.0;
    for (int j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < a[j].data().size(); ++i) d = std::max(d, std::abs(a[j].data()[i] - b[j].data()[i]));
    return d;
}

inline double max_abs(const gns::VelocityField& a) {
    double d = 0.0;
    for (int j = 0; j < 3; ++j)
        for (const auto& v : a[j].data()) d = std::max(d, std::abs(v));
    return d;
}

inline double rel_l2(const gns::VelocityField& a, const gns::VelocityField& ref) {
    return gns::l2_norm(a - ref) / gns::l2_norm(ref);
}

}  // namespace oracle
