#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "gns/spectral/grid.hpp"

namespace gns {

using cplx = std::complex<double>;

/// Real samples of one scalar field, row-major over (x1, x2, x3).
struct PhysicalField {
    Grid grid;
    std::vector<double> values;

    PhysicalField() = default;
    explicit PhysicalField(const Grid& g) : grid(g), values(g.physical_size(), 0.0) {}
    PhysicalField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != g.physical_size())
            throw ShapeError("physical field: expected " + std::to_string(g.physical_size()) +
                             " samples, got " + std::to_string(values.size()));
    }

    double& at(int j1, int j2, int j3) {
        return values[(static_cast<std::size_t>(j1) * grid.n() + j2) * grid.n() + j3];
    }
    double at(int j1, int j2, int j3) const {
        return values[(static_cast<std::size_t>(j1) * grid.n() + j2) * grid.n() + j3];
    }
    /// Coordinate of sample j along any axis.
    double x(int j) const { return grid.period() * j / grid.n(); }
};

/// Fourier coefficients of a real scalar field in the half layout of Grid.
///
/// Normalised so that a constant field c has coeff(0) = c; the full lattice
/// coefficient at -k is the conjugate of the one at k.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid_(g), c_(g.spectral_size(), cplx{}) {}

    const Grid& grid() const { return grid_; }
    std::vector<cplx>& data() { return c_; }
    const std::vector<cplx>& data() const { return c_; }

    cplx& at(int i1, int i2, int i3) { return c_[grid_.index(i1, i2, i3)]; }
    const cplx& at(int i1, int i2, int i3) const { return c_[grid_.index(i1, i2, i3)]; }

    /// Coefficient for any full-lattice index triple (each in [0, n)).
    cplx full(int i1, int i2, int i3) const {
        const int n = grid_.n();
        if (i3 <= n / 2) return at(i1, i2, i3);
        return std::conj(at((n - i1) % n, (n - i2) % n, n - i3));
    }

    /// Sets the coefficient at a full-lattice index and its mirror so that
    /// the field stays real.
    void set_full(int i1, int i2, int i3, cplx value) {
        const int n = grid_.n();
        const int m1 = (n - i1) % n, m2 = (n - i2) % n, m3 = (n - i3) % n;
        if (i3 <= n / 2) at(i1, i2, i3) = value;
        if (m3 <= n / 2) at(m1, m2, m3) = std::conj(value);
        if (i1 == m1 && i2 == m2 && i3 == m3) at(i1, i2, i3) = value.real();
    }

    SpectralField& operator+=(const SpectralField& o) {
        require_same_grid(grid_, o.grid_, "SpectralField +=");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        require_same_grid(grid_, o.grid_, "SpectralField -=");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& v : c_) v *= a;
        return *this;
    }
    /// this += a * o
    void axpy(double a, const SpectralField& o) {
        require_same_grid(grid_, o.grid_, "SpectralField axpy");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a * o.c_[i];
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const cplx& v) { return v == cplx{}; });
    }

    /// Largest |c(k) - conj(c(-k))| over the planes i3 = 0 and i3 = n/2,
    /// the only places where the half layout stores both partners.
    double hermitian_defect() const {
        const int n = grid_.n();
        double worst = 0.0;
        for (int i3 : {0, n / 2}) {
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2) {
                    const cplx a = at(i1, i2, i3);
                    const cplx b = at((n - i1) % n, (n - i2) % n, i3);
                    worst = std::max(worst, std::abs(a - std::conj(b)));
                }
        }
        return worst;
    }

    /// Replaces each mirrored pair in the redundant planes by its Hermitian part.
    void symmetrize() {
        const int n = grid_.n();
        for (int i3 : {0, n / 2}) {
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2) {
                    const int m1 = (n - i1) % n, m2 = (n - i2) % n;
                    if (grid_.index(m1, m2, i3) < grid_.index(i1, i2, i3)) continue;
                    const cplx a = at(i1, i2, i3);
                    const cplx b = at(m1, m2, i3);
                    const cplx h = 0.5 * (a + std::conj(b));
                    at(i1, i2, i3) = h;
                    at(m1, m2, i3) = std::conj(h);
                }
        }
    }

  private:
    Grid grid_;
    std::vector<cplx> c_;
};

}  // namespace gns
