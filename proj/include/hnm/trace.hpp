#pragma once

#include "hnm/coupling.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace hnm {

/// Uniform samples t_k = k dt, k = 0..n_steps.
class TimeGrid {
public:
    TimeGrid(double dt, std::size_t n_steps);

    /// Grid with step dt covering [0, t_max]; the last node is the largest k dt <= t_max
    /// (up to a relative slack of 1e-9, so t_max = 3 with dt = 1/2000 lands exactly).
    static TimeGrid covering(double dt, double t_max);

    double dt() const noexcept { return dt_; }
    std::size_t n_steps() const noexcept { return n_steps_; }
    std::size_t size() const noexcept { return n_steps_ + 1; }
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt_; }
    double end() const noexcept { return time(n_steps_); }

private:
    double dt_;
    std::size_t n_steps_;
};

enum class Backend { Series, Laplace, Volterra, Modes };

std::string_view to_string(Backend backend) noexcept;
Backend backend_from_string(std::string_view name);

/// Survival amplitude a(t) on a grid. values[0] == 1 and |a| <= 1 + 1e-9 everywhere.
class AmplitudeTrace {
public:
    AmplitudeTrace(TimeGrid grid, std::vector<complex> values, Backend backend);

    const TimeGrid& grid() const noexcept { return grid_; }
    const std::vector<complex>& values() const noexcept { return values_; }
    Backend backend() const noexcept { return backend_; }

    complex operator[](std::size_t k) const noexcept { return values_[k]; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    TimeGrid grid_;
    std::vector<complex> values_;
    Backend backend_;
};

inline constexpr double kAmplitudeSlack = 1e-9;

} // namespace hnm
