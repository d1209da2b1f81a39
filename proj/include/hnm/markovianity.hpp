#pragma once

#include "hnm/coupling.hpp"
#include "hnm/trace.hpp"

#include <cstddef>
#include <vector>

namespace hnm {

inline constexpr double kSeriesDefectTolerance = 1e-10;
inline constexpr double kLaplaceDefectTolerance = 1e-4;

/// |a(t + s) - a(t) a(s)| with t = t_index dt, s = s_index dt.
/// Throws IndexOutOfRange unless t_index + s_index <= n_steps.
double semigroup_defect(const AmplitudeTrace& trace, std::size_t t_index, std::size_t s_index);

/// ||Lambda_{t+s} - Lambda_t Lambda_s||_F of the 4x4 channel superoperators.
/// Lies between sqrt(2) and sqrt(10) times the scalar defect.
double operator_defect(const AmplitudeTrace& trace, std::size_t t_index, std::size_t s_index);

struct DefectPair {
    double t = 0.0;
    double s = 0.0;
    double defect = 0.0;
};

/// Worst pair for every total time t + s on the grid, plus the horizon at tolerance_used.
struct DefectReport {
    std::vector<DefectPair> pairs;
    double horizon_estimate = 0.0;
    double tolerance_used = 0.0;
};

/// Largest tau <= grid end such that every sampled pair with t + s <= tau has a defect
/// <= tol. Stops at the first violating diagonal. Throws BadParameter unless tol > 0.
double hidden_horizon(const AmplitudeTrace& trace, double tol);

/// Same scan over the whole triangle, keeping the worst pair per diagonal.
DefectReport defect_report(const AmplitudeTrace& trace, double tol);

/// Tolerance matching a backend's accuracy.
double default_defect_tolerance(Backend backend) noexcept;

struct BoundStateReport {
    bool predicted = false;     // Sinusoidal, |alpha| = 1, eps0 T = 0 mod 2 pi
    double tail_min_abs2 = 0.0; // min |a|^2 over the last period of the trace
    double tail_max_abs2 = 0.0;
    bool consistent = true;     // predicted implies tail_min_abs2 >= threshold
};

inline constexpr double kDefaultBoundStateThreshold = 0.01;

/// Needs a trace spanning at least 10 T (TraceTooShort). A Flat coupling uses its period_T
/// as time unit and throws BadParameter when that is unset.
BoundStateReport bound_state_check(const ModelParams& params, const AmplitudeTrace& trace,
                                   double threshold = kDefaultBoundStateThreshold);

} // namespace hnm
