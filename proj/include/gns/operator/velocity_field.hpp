#pragma once

#include <array>

#include "gns/spectral/fft.hpp"
#include "gns/spectral/shells.hpp"

namespace gns {

/// Three spectral components of the unknown u on a shared grid.
class VelocityField {
  public:
    VelocityField() = default;
    explicit VelocityField(const Grid& g) : c_{SpectralField(g), SpectralField(g), SpectralField(g)} {}
    VelocityField(SpectralField a, SpectralField b, SpectralField c)
        : c_{std::move(a), std::move(b), std::move(c)} {
        require_same_grid(c_[0].grid(), c_[1].grid(), "VelocityField");
        require_same_grid(c_[0].grid(), c_[2].grid(), "VelocityField");
    }

    const Grid& grid() const { return c_[0].grid(); }
    SpectralField& operator[](int j) { return c_[j]; }
    const SpectralField& operator[](int j) const { return c_[j]; }

    VelocityField& operator+=(const VelocityField& o) {
        for (int j = 0; j < 3; ++j) c_[j] += o.c_[j];
        return *this;
    }
    VelocityField& operator-=(const VelocityField& o) {
        for (int j = 0; j < 3; ++j) c_[j] -= o.c_[j];
        return *this;
    }
    VelocityField& operator*=(double a) {
        for (auto& f : c_) f *= a;
        return *this;
    }
    void axpy(double a, const VelocityField& o) {
        for (int j = 0; j < 3; ++j) c_[j].axpy(a, o.c_[j]);
    }
    friend VelocityField operator+(VelocityField a, const VelocityField& b) { return a += b; }
    friend VelocityField operator-(VelocityField a, const VelocityField& b) { return a -= b; }
    friend VelocityField operator*(double s, VelocityField a) { return a *= s; }

    bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }

    double hermitian_defect() const {
        return std::max({c_[0].hermitian_defect(), c_[1].hermitian_defect(),
                         c_[2].hermitian_defect()});
    }

  private:
    std::array<SpectralField, 3> c_;
};

/// Spectral L2 norm of the three components in quadrature.
inline double l2_norm(const VelocityField& u) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double c = shell_reduce_weighted_l2(u[j], 0.0, false);
        s += c * c;
    }
    return std::sqrt(s);
}

/// Sum_j i k_j u_j(k).
inline SpectralField divergence(const VelocityField& u) {
    SpectralField d(u.grid());
    auto& out = d.data();
    const auto& a = u[0].data();
    const auto& b = u[1].data();
    const auto& c = u[2].data();
    const cplx I(0.0, 1.0);
    const Grid& g = u.grid();
    for_each_mode(g, [&](const Mode& m) {
        if (g.is_nyquist(m.i1) || g.is_nyquist(m.i2) || g.is_nyquist(m.i3)) return;
        out[m.idx] = I * (m.k1 * a[m.idx] + m.k2 * b[m.idx] + m.k3 * c[m.idx]);
    });
    return d;
}

/// max_k |k . u(k)| relative to the L2 norm of u (0 for the zero field).
inline double divergence_defect(const VelocityField& u) {
    const double norm = l2_norm(u);
    if (norm == 0.0) return 0.0;
    double worst = 0.0;
    const auto d = divergence(u);
    for (const auto& v : d.data()) worst = std::max(worst, std::abs(v));
    return worst / norm;
}

inline std::array<PhysicalField, 3> to_physical(const VelocityField& u) {
    return {inverse_transform(u[0]), inverse_transform(u[1]), inverse_transform(u[2])};
}

inline VelocityField from_physical(const std::array<PhysicalField, 3>& p) {
    return VelocityField(forward_transform(p[0]), forward_transform(p[1]), forward_transform(p[2]));
}

}  // namespace gns
