#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "gns/error.hpp"

namespace gns {

/// Periodic cube [0, L)^3 sampled with n points per axis.
///
/// Spectral data is stored in the real-to-complex half layout: indices
/// (i1, i2, i3) with i1, i2 in [0, n) and i3 in [0, n/2]. The remaining
/// modes follow from Hermitian symmetry. Index i maps to the signed alias
/// in [-n/2, n/2), and the wavenumber is (2*pi/L) times that alias.
class Grid {
  public:
    Grid() = default;

    Grid(int n_per_axis, double period, double dealias_fraction = 2.0 / 3.0)
        : n_(n_per_axis), period_(period), dealias_(dealias_fraction) {
        if (n_per_axis < 4 || n_per_axis % 2 != 0)
            throw DomainError("grid: n_per_axis must be even and >= 4, got " +
                              std::to_string(n_per_axis));
        if (!(period > 0.0) || !std::isfinite(period))
            throw DomainError("grid: period must be positive and finite");
        if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
            throw DomainError("grid: dealias_fraction must lie in (0, 1]");
    }

    int n() const { return n_; }
    double period() const { return period_; }
    double dealias_fraction() const { return dealias_; }

    /// Number of complex coefficients along the last (halved) axis.
    int nh() const { return n_ / 2 + 1; }
    std::size_t physical_size() const {
        return static_cast<std::size_t>(n_) * n_ * n_;
    }
    std::size_t spectral_size() const {
        return static_cast<std::size_t>(n_) * n_ * nh();
    }

    double unit() const { return 2.0 * std::numbers::pi / period_; }

    int signed_index(int i) const { return i < n_ / 2 ? i : i - n_; }
    double wavenumber(int i) const { return unit() * signed_index(i); }

    /// Largest wavenumber magnitude along one axis, (2*pi/L) * n/2.
    double kmax_axis() const { return unit() * (n_ / 2); }
    /// Largest |k| on the lattice (cube corner).
    double kmax_diag() const { return kmax_axis() * std::sqrt(3.0); }

    std::size_t index(int i1, int i2, int i3) const {
        return (static_cast<std::size_t>(i1) * n_ + i2) * nh() + i3;
    }

    /// Number of full-lattice modes represented by stored index i3.
    int multiplicity(int i3) const { return (i3 == 0 || i3 == n_ / 2) ? 1 : 2; }

    bool is_nyquist(int i) const { return i == n_ / 2; }

    /// Whether a stored mode survives the sharp dealiasing filter.
    bool passes_dealias(int i1, int i2, int i3) const {
        const double cut = dealias_ * (n_ / 2);
        return std::abs(signed_index(i1)) <= cut && std::abs(signed_index(i2)) <= cut &&
               std::abs(signed_index(i3)) <= cut;
    }

    bool operator==(const Grid&) const = default;

  private:
    int n_ = 0;
    double period_ = 2.0 * std::numbers::pi;
    double dealias_ = 2.0 / 3.0;
};

inline Grid build_grid(int n_per_axis, double period, double dealias_fraction = 2.0 / 3.0) {
    return Grid(n_per_axis, period, dealias_fraction);
}

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) throw GridMismatchError(std::string(where) + ": grid mismatch");
}

/// One stored lattice mode as seen by for_each_mode.
struct Mode {
    std::size_t idx;
    int i1, i2, i3;
    double k1, k2, k3;
    double ksq;
    int multiplicity;
    double kabs() const { return std::sqrt(ksq); }
};

/// Visits every stored mode in index order.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
    const int n = g.n();
    const int nh = g.nh();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = g.wavenumber(i2);
            for (int i3 = 0; i3 < nh; ++i3, ++idx) {
                const double k3 = g.wavenumber(i3);
                fn(Mode{idx, i1, i2, i3, k1, k2, k3, k1 * k1 + k2 * k2 + k3 * k3,
                        g.multiplicity(i3)});
            }
        }
    }
}

}  // namespace gns
