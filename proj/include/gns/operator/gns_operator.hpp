#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gns/operator/q_coefficients.hpp"
#include "gns/operator/velocity_field.hpp"

namespace gns {

using Wavevector = std::array<double, 3>;

/// q^{j,m}_{k,l}(xi) = sum_{n,p} alpha xi_n xi_p / |xi|^2, and 0 at xi = 0.
inline double q_symbol(const QCoefficients& a, const Wavevector& xi, int j, int m, int k, int l) {
    const double ksq = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (ksq == 0.0) return 0.0;
    double s = 0.0;
    for (int n = 0; n < 3; ++n)
        for (int p = 0; p < 3; ++p) s += a(j, m, n, p, k, l) * xi[n] * xi[p];
    return s / ksq;
}

namespace detail {

struct QTerm {
    int j, m, n, p;
    double alpha;
};

/// Nonzero alpha entries grouped by the product u^k v^l they act on.
inline std::map<std::pair<int, int>, std::vector<QTerm>> compile_q(const QCoefficients& a) {
    std::map<std::pair<int, int>, std::vector<QTerm>> terms;
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n)
                for (int p = 0; p < 3; ++p)
                    for (int k = 0; k < 3; ++k)
                        for (int l = 0; l < 3; ++l) {
                            const double v = a(j, m, n, p, k, l);
                            if (v != 0.0) terms[{k, l}].push_back({j, m, n, p, v});
                        }
    return terms;
}

inline PhysicalField pointwise_product(const PhysicalField& a, const PhysicalField& b) {
    PhysicalField out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] * b.values[i];
    return out;
}

}  // namespace detail

/// Pseudo-spectral evaluation of Q(u, v): products u^k v^l are formed in
/// physical space, transformed and dealiased, then
///   Q^j(k) = sum_{m,k,l} i k_m q^{j,m}_{k,l}(k) FT(u^k v^l)(k).
/// The zero mode and Nyquist modes of the result are zero. Q is treated as
/// order-sensitive: no k <-> l symmetry of alpha is assumed.
inline VelocityField apply_Q(const QCoefficients& a, const VelocityField& u, const VelocityField& v) {
    require_same_grid(u.grid(), v.grid(), "apply_Q");
    const Grid& g = u.grid();
    VelocityField out(g);
    const auto terms = detail::compile_q(a);
    if (terms.empty()) return out;

    const bool same = (&u == &v);
    std::array<std::optional<PhysicalField>, 3> pu, pv;
    auto phys_u = [&](int k) -> const PhysicalField& {
        if (!pu[k]) pu[k] = inverse_transform(u[k]);
        return *pu[k];
    };
    auto phys_v = [&](int l) -> const PhysicalField& {
        if (same) return phys_u(l);
        if (!pv[l]) pv[l] = inverse_transform(v[l]);
        return *pv[l];
    };

    std::map<std::pair<int, int>, SpectralField> products;
    auto product = [&](int k, int l) -> const SpectralField& {
        std::pair<int, int> key{k, l};
        if (same && k > l) key = {l, k};
        auto it = products.find(key);
        if (it != products.end()) return it->second;
        auto p = forward_transform(detail::pointwise_product(phys_u(key.first), phys_v(key.second)));
        return products.emplace(key, std::move(p)).first->second;
    };

    const cplx I(0.0, 1.0);
    std::array<std::vector<cplx>*, 3> dst{&out[0].data(), &out[1].data(), &out[2].data()};
    for (const auto& [kl, list] : terms) {
        const auto& P = product(kl.first, kl.second).data();
        for_each_mode(g, [&](const Mode& md) {
            if (md.ksq == 0.0 || !g.passes_dealias(md.i1, md.i2, md.i3)) return;
            if (g.is_nyquist(md.i1) || g.is_nyquist(md.i2) || g.is_nyquist(md.i3)) return;
            const double kv[3] = {md.k1, md.k2, md.k3};
            double f[3] = {0.0, 0.0, 0.0};
            for (const auto& t : list) f[t.j] += t.alpha * kv[t.m] * kv[t.n] * kv[t.p];
            const cplx pk = I * P[md.idx] / md.ksq;
            for (int j = 0; j < 3; ++j)
                if (f[j] != 0.0) (*dst[j])[md.idx] += f[j] * pk;
        });
    }
    return out;
}

/// Mode-wise (I - k k^T / |k|^2); the zero mode is left unchanged.
inline VelocityField leray_project(VelocityField u) {
    auto& a = u[0].data();
    auto& b = u[1].data();
    auto& c = u[2].data();
    for_each_mode(u.grid(), [&](const Mode& m) {
        if (m.ksq == 0.0) return;
        const cplx dot = (m.k1 * a[m.idx] + m.k2 * b[m.idx] + m.k3 * c[m.idx]) / m.ksq;
        a[m.idx] -= m.k1 * dot;
        b[m.idx] -= m.k2 * dot;
        c[m.idx] -= m.k3 * dot;
    });
    return u;
}

inline SpectralField heat_semigroup(SpectralField f, double t) {
    if (!(t >= 0.0)) throw DomainError("heat_semigroup: t must be nonnegative");
    if (t == 0.0) return f;
    auto& c = f.data();
    for_each_mode(f.grid(), [&](const Mode& m) { c[m.idx] *= std::exp(-t * m.ksq); });
    return f;
}

/// e^{t Delta} u: each mode multiplied by exp(-t |k|^2).
inline VelocityField heat_semigroup(VelocityField u, double t) {
    if (!(t >= 0.0)) throw DomainError("heat_semigroup: t must be nonnegative");
    if (t == 0.0) return u;
    auto& a = u[0].data();
    auto& b = u[1].data();
    auto& c = u[2].data();
    for_each_mode(u.grid(), [&](const Mode& m) {
        const double e = std::exp(-t * m.ksq);
        a[m.idx] *= e;
        b[m.idx] *= e;
        c[m.idx] *= e;
    });
    return u;
}

}  // namespace gns
