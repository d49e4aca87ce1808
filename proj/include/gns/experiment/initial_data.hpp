#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "gns/operator/gns_operator.hpp"
#include "gns/util/random.hpp"

namespace gns {

enum class DataKind { taylor_green, single_mode, random_sobolev_tail, compact_spectrum };

inline std::string_view to_string(DataKind k) {
    switch (k) {
        case DataKind::taylor_green: return "taylor_green";
        case DataKind::single_mode: return "single_mode";
        case DataKind::random_sobolev_tail: return "random_sobolev_tail";
        case DataKind::compact_spectrum: return "compact_spectrum";
    }
    return "?";
}

inline DataKind data_kind_from_string(std::string_view s) {
    if (s == "taylor_green") return DataKind::taylor_green;
    if (s == "single_mode") return DataKind::single_mode;
    if (s == "random_sobolev_tail") return DataKind::random_sobolev_tail;
    if (s == "compact_spectrum") return DataKind::compact_spectrum;
    throw DomainError("unknown data kind '" + std::string(s) + "'");
}

struct DataParams {
    double amplitude = 1.0;
    std::uint64_t seed = 0;
    double gamma = 1.0;
    /// |u(k)| ~ |k|^{-exponent}; NaN means gamma + 3/2.
    double spectral_exponent = std::numeric_limits<double>::quiet_NaN();
    /// band in |k| for the random kinds; k_hi <= 0 means the dealiased axis limit
    double k_lo = 1.0;
    double k_hi = 0.0;
    /// compact_spectrum support radius
    double k_cut = 4.0;
    /// single_mode integer wavevector (lattice units)
    std::array<int, 3> mode{1, 0, 0};

    double exponent() const { return std::isnan(spectral_exponent) ? gamma + 1.5 : spectral_exponent; }
    bool operator==(const DataParams&) const = default;
};

namespace detail {

/// A |k|^{-p} e^{i phi_j(k)} on k_lo <= |k| <= k_hi, phases keyed by
/// (seed, full-lattice index, component); Nyquist modes zeroed; projected.
inline VelocityField random_band(const Grid& g, double amplitude, double p, double k_lo, double k_hi,
                                 std::uint64_t seed) {
    VelocityField u(g);
    const int n = g.n();
    for_each_mode(g, [&](const Mode& m) {
        const double kabs = m.kabs();
        if (kabs == 0.0 || kabs < k_lo || kabs > k_hi) return;
        if (g.is_nyquist(m.i1) || g.is_nyquist(m.i2) || g.is_nyquist(m.i3)) return;
        if (m.i3 == 0) {
            // one representative per conjugate pair in the redundant plane
            const std::size_t mirror = g.index((n - m.i1) % n, (n - m.i2) % n, 0);
            if (mirror < m.idx) return;
        }
        const std::uint64_t key = (static_cast<std::uint64_t>(m.i1) * n + m.i2) * n + m.i3;
        const double mag = amplitude * std::pow(kabs, -p);
        for (int j = 0; j < 3; ++j)
            u[j].set_full(m.i1, m.i2, m.i3, std::polar(mag, counter_phase(seed, key, j)));
    });
    return leray_project(std::move(u));
}

}  // namespace detail

/// A (sin x cos y cos z, -cos x sin y cos z, 0) in units of the box's lowest
/// wavenumber, written directly in spectral space.
inline VelocityField taylor_green(const Grid& g, double amplitude) {
    VelocityField u(g);
    const int n = g.n();
    const cplx I(0.0, 1.0);
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1})
            for (int s3 : {-1, 1}) {
                const int i1 = (s1 + n) % n, i2 = (s2 + n) % n, i3 = (s3 + n) % n;
                u[0].set_full(i1, i2, i3, -I * (amplitude * s1 / 8.0));
                u[1].set_full(i1, i2, i3, I * (amplitude * s2 / 8.0));
            }
    return u;
}

/// One real divergence-free Fourier pair A e cos(k.x), e a unit vector orthogonal to k.
inline VelocityField single_mode(const Grid& g, double amplitude, std::array<int, 3> mode) {
    const int n = g.n();
    for (int a : mode)
        if (std::abs(a) >= n / 2) throw DomainError("single_mode: wavevector at or beyond Nyquist");
    if (mode == std::array<int, 3>{0, 0, 0}) throw DomainError("single_mode: zero wavevector");
    const double k[3] = {double(mode[0]), double(mode[1]), double(mode[2])};
    // cross k with the axis least aligned with it
    int ax = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(k[i]) < std::abs(k[ax])) ax = i;
    double a[3] = {0, 0, 0};
    a[ax] = 1.0;
    double e[3] = {k[1] * a[2] - k[2] * a[1], k[2] * a[0] - k[0] * a[2], k[0] * a[1] - k[1] * a[0]};
    const double en = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    VelocityField u(g);
    const int i1 = (mode[0] + n) % n, i2 = (mode[1] + n) % n, i3 = (mode[2] + n) % n;
    for (int j = 0; j < 3; ++j) u[j].set_full(i1, i2, i3, cplx(0.5 * amplitude * e[j] / en, 0.0));
    return u;
}

/// Initial data factory. All kinds are divergence-free, Hermitian and free
/// of Nyquist content; the random kinds depend only on (grid, params).
inline VelocityField make_initial_data(DataKind kind, const Grid& g, const DataParams& p) {
    const double kmax = g.kmax_diag();
    switch (kind) {
        case DataKind::taylor_green: return taylor_green(g, p.amplitude);
        case DataKind::single_mode: return single_mode(g, p.amplitude, p.mode);
        case DataKind::random_sobolev_tail: {
            const double hi = p.k_hi > 0.0 ? p.k_hi : g.dealias_fraction() * g.kmax_axis();
            if (hi > kmax || !(p.k_lo >= 0.0) || !(p.k_lo < hi))
                throw DomainError("random_sobolev_tail: band [" + std::to_string(p.k_lo) + ", " +
                                  std::to_string(hi) + "] invalid for this grid");
            return detail::random_band(g, p.amplitude, p.exponent(), p.k_lo, hi, p.seed);
        }
        case DataKind::compact_spectrum: {
            if (!(p.k_cut > 0.0) || p.k_cut > kmax)
                throw DomainError("compact_spectrum: k_cut outside the lattice");
            return detail::random_band(g, p.amplitude, p.exponent(), std::min(p.k_lo, p.k_cut), p.k_cut, p.seed);
        }
    }
    throw DomainError("make_initial_data: unknown kind");
}

}  // namespace gns
