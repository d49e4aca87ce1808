#pragma once

#include <cmath>
#include <vector>

#include "gns/operator/velocity_field.hpp"

namespace gns {

/// Time-ordered samples (t_i, u(t_i)) on a shared grid, starting at t = 0.
class Trajectory {
  public:
    Trajectory() = default;

    void push_back(double t, VelocityField u) {
        if (times_.empty()) {
            if (t != 0.0) throw DomainError("trajectory: first time must be 0");
        } else {
            if (!(t > times_.back())) throw DomainError("trajectory: times must increase strictly");
            require_same_grid(states_.front().grid(), u.grid(), "trajectory");
        }
        times_.push_back(t);
        states_.push_back(std::move(u));
    }

    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }
    const std::vector<double>& times() const { return times_; }
    const VelocityField& state(std::size_t i) const { return states_[i]; }
    VelocityField& state(std::size_t i) { return states_[i]; }
    const Grid& grid() const { return states_.front().grid(); }
    double horizon() const { return times_.empty() ? 0.0 : times_.back(); }

    /// Index of the lattice time equal to t within a relative 1e-9, if any.
    std::ptrdiff_t find_time(double t) const {
        const double tol = 1e-9 * std::abs(t);
        for (std::size_t i = 0; i < times_.size(); ++i)
            if (std::abs(times_[i] - t) <= tol) return static_cast<std::ptrdiff_t>(i);
        return -1;
    }

  private:
    std::vector<double> times_;
    std::vector<VelocityField> states_;
};

/// t_i = i T / (n_times - 1), i = 0 .. n_times-1.
inline std::vector<double> uniform_lattice(double T, int n_times) {
    if (n_times < 2 || !(T > 0.0)) throw DomainError("time lattice needs T > 0 and n_times >= 2");
    std::vector<double> t(n_times);
    for (int i = 0; i < n_times; ++i) t[i] = T * i / (n_times - 1);
    t.back() = T;
    return t;
}

}  // namespace gns
