#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "gns/error.hpp"

namespace gns {

/// The 729 real numbers alpha^{j,m,n,p}_{k,l} defining the bilinear map
///   Q^j(u,v) = sum_{k,l,m} q^{j,m}_{k,l}(D) d_m (u^k v^l),
///   q^{j,m}_{k,l}(xi) = sum_{n,p} alpha^{j,m,n,p}_{k,l} xi_n xi_p / |xi|^2.
/// Indices are 0-based here; storage order is (j, m, n, p, k, l), l fastest.
class QCoefficients {
  public:
    static constexpr std::size_t kSize = 729;

    QCoefficients() { alpha_.fill(0.0); }

    static constexpr std::size_t offset(int j, int m, int n, int p, int k, int l) {
        return ((((static_cast<std::size_t>(j) * 3 + m) * 3 + n) * 3 + p) * 3 + k) * 3 + l;
    }

    double& operator()(int j, int m, int n, int p, int k, int l) {
        return alpha_[offset(j, m, n, p, k, l)];
    }
    double operator()(int j, int m, int n, int p, int k, int l) const {
        return alpha_[offset(j, m, n, p, k, l)];
    }

    const std::array<double, kSize>& raw() const { return alpha_; }

    static QCoefficients from_array(const std::array<double, kSize>& a) {
        QCoefficients q;
        for (std::size_t i = 0; i < kSize; ++i) {
            if (!std::isfinite(a[i]))
                throw DomainError("QCoefficients: entry " + std::to_string(i) + " is not finite");
            q.alpha_[i] = a[i];
        }
        return q;
    }

    bool operator==(const QCoefficients&) const = default;

  private:
    std::array<double, kSize> alpha_;
};

/// alpha such that Q(u,u) = -P div(u (x) u) for divergence-free u:
///   q^{j,m}_{k,l}(xi) = -delta_{ml} (delta_{jk} - xi_j xi_k / |xi|^2),
/// with delta_{jk} written as delta_{jk} sum_n xi_n xi_n / |xi|^2.
inline QCoefficients navier_stokes_coeffs() {
    QCoefficients q;
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n)
                for (int p = 0; p < 3; ++p)
                    for (int k = 0; k < 3; ++k)
                        for (int l = 0; l < 3; ++l) {
                            if (m != l) continue;
                            const double v = (j == k && n == p ? 1.0 : 0.0) -
                                             (j == n && k == p ? 1.0 : 0.0);
                            q(j, m, n, p, k, l) = -v;
                        }
    return q;
}

inline nlohmann::json to_json(const QCoefficients& q) {
    return nlohmann::json(q.raw());
}

inline QCoefficients q_coefficients_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != QCoefficients::kSize)
        throw IoError("QCoefficients: expected a JSON array of 729 numbers");
    std::array<double, QCoefficients::kSize> a{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!j[i].is_number()) throw IoError("QCoefficients: entry " + std::to_string(i) + " is not a number");
        a[i] = j[i].get<double>();
    }
    return QCoefficients::from_array(a);
}

inline void save_q_coefficients(const std::filesystem::path& path, const QCoefficients& q) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path.string());
    os << to_json(q).dump() << '\n';
}

inline QCoefficients load_q_coefficients(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path.string());
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("QCoefficients: " + std::string(e.what()));
    }
    return q_coefficients_from_json(j);
}

}  // namespace gns
