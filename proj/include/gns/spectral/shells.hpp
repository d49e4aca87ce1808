#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "gns/spectral/spectral_field.hpp"

namespace gns {

/// Sharp truncation: zero every mode with some |signed index| above
/// dealias_fraction * n/2.
inline SpectralField dealias(SpectralField s) {
    const Grid& g = s.grid();
    auto& c = s.data();
    for_each_mode(g, [&](const Mode& m) {
        if (!g.passes_dealias(m.i1, m.i2, m.i3)) c[m.idx] = 0.0;
    });
    return s;
}

/// Per-shell reduction over uniform |k| shells of width k_max / n_shells.
struct ShellSpectrum {
    std::vector<double> edges;       // n_shells + 1 increasing magnitudes
    std::vector<double> values;      // one nonnegative value per shell
    std::vector<char> nonempty;      // shell contains at least one lattice mode
    std::vector<double> min_k;       // smallest lattice |k| in the shell
    std::vector<double> argmax_k;    // |k| of the mode attaining the shell max

    std::size_t size() const { return values.size(); }
};

namespace detail {

inline ShellSpectrum empty_shells(int n_shells, double k_max) {
    ShellSpectrum s;
    s.edges.resize(n_shells + 1);
    for (int i = 0; i <= n_shells; ++i) s.edges[i] = k_max * i / n_shells;
    s.values.assign(n_shells, 0.0);
    s.nonempty.assign(n_shells, 0);
    s.min_k.assign(n_shells, 0.0);
    s.argmax_k.assign(n_shells, 0.0);
    return s;
}

inline int shell_of(double kabs, int n_shells, double k_max) {
    const int s = static_cast<int>(std::floor(kabs / k_max * n_shells));
    return std::clamp(s, 0, n_shells - 1);
}

inline void accumulate_max(ShellSpectrum& out, const SpectralField& f, double k_max) {
    const int ns = static_cast<int>(out.size());
    const auto& c = f.data();
    for_each_mode(f.grid(), [&](const Mode& m) {
        const double kabs = m.kabs();
        if (kabs > k_max) return;
        const int s = shell_of(kabs, ns, k_max);
        const double a = std::abs(c[m.idx]);
        if (!out.nonempty[s] || kabs < out.min_k[s]) out.min_k[s] = kabs;
        if (!out.nonempty[s]) out.argmax_k[s] = kabs;
        out.nonempty[s] = 1;
        if (a > out.values[s] || (a == out.values[s] && kabs < out.argmax_k[s])) {
            out.values[s] = a;
            out.argmax_k[s] = kabs;
        }
    });
}

}  // namespace detail

/// Maximum |coeff| per shell. Shells beyond the lattice hold 0 and are
/// flagged empty. k_max defaults to the cube-corner wavenumber so every
/// mode lands in some shell.
inline ShellSpectrum shell_reduce_max(const SpectralField& f, int n_shells,
                                      std::optional<double> k_max = std::nullopt) {
    if (n_shells < 2) throw DomainError("shell_reduce_max: n_shells must be >= 2");
    const double km = k_max.value_or(f.grid().kmax_diag());
    auto out = detail::empty_shells(n_shells, km);
    detail::accumulate_max(out, f, km);
    return out;
}

/// (sum_{|k| >= cutoff} w(k)^{2s} |coeff(k)|^2)^{1/2} over the full lattice,
/// with w = |k| (homogeneous) or <k> = (1+|k|^2)^{1/2}.
inline double shell_reduce_weighted_l2(const SpectralField& f, double s, bool homogeneous,
                                       double cutoff = 0.0) {
    const auto& c = f.data();
    if (homogeneous && s < 0.0 && cutoff <= 0.0 && std::abs(c[0]) != 0.0)
        throw DomainError("homogeneous Sobolev norm with s < 0 needs a vanishing mean");
    long double acc = 0.0L;
    for_each_mode(f.grid(), [&](const Mode& m) {
        const double kabs = m.kabs();
        if (kabs < cutoff) return;
        const double a2 = std::norm(c[m.idx]);
        if (a2 == 0.0) return;
        double w2;
        if (homogeneous)
            w2 = (s == 0.0) ? 1.0 : std::pow(m.ksq, s);
        else
            w2 = (s == 0.0) ? 1.0 : std::pow(1.0 + m.ksq, s);
        acc += static_cast<long double>(m.multiplicity) * w2 * a2;
    });
    return std::sqrt(static_cast<double>(acc));
}

}  // namespace gns
