#include "hnm/markovianity.hpp"

#include "hnm/channel.hpp"
#include "hnm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hnm {

namespace {

void check_pair(const AmplitudeTrace& trace, std::size_t t_index, std::size_t s_index)
{
    if (t_index > trace.grid().n_steps() || s_index > trace.grid().n_steps() - t_index) {
        std::ostringstream msg;
        msg << "pair (" << t_index << ", " << s_index << ") exceeds n_steps = "
            << trace.grid().n_steps();
        throw Error(ErrorKind::IndexOutOfRange, msg.str());
    }
}

// Worst defect on the diagonal t_index + s_index = total; symmetric, so half suffices.
DefectPair worst_on_diagonal(const AmplitudeTrace& trace, std::size_t total)
{
    const auto& a = trace.values();
    const double dt = trace.grid().dt();
    DefectPair worst{0.0, trace.grid().time(total), 0.0};
    for (std::size_t i = 1; 2 * i <= total; ++i) {
        const double d = std::abs(a[total] - a[i] * a[total - i]);
        if (d > worst.defect) worst = {static_cast<double>(i) * dt,
                                       static_cast<double>(total - i) * dt, d};
    }
    return worst;
}

void check_tolerance(double tol)
{
    if (!(tol > 0.0)) throw Error(ErrorKind::BadParameter, "defect tolerance must be positive");
}

} // namespace

double semigroup_defect(const AmplitudeTrace& trace, std::size_t t_index, std::size_t s_index)
{
    check_pair(trace, t_index, s_index);
    return std::abs(trace[t_index + s_index] - trace[t_index] * trace[s_index]);
}

double operator_defect(const AmplitudeTrace& trace, std::size_t t_index, std::size_t s_index)
{
    check_pair(trace, t_index, s_index);
    const Superoperator joint = channel_superoperator(trace[t_index + s_index]);
    const Superoperator product =
        channel_superoperator(trace[t_index]) * channel_superoperator(trace[s_index]);
    return (joint - product).norm();
}

double hidden_horizon(const AmplitudeTrace& trace, double tol)
{
    check_tolerance(tol);
    const TimeGrid& grid = trace.grid();
    for (std::size_t total = 2; total <= grid.n_steps(); ++total)
        if (worst_on_diagonal(trace, total).defect > tol) return grid.time(total - 1);
    return grid.end();
}

DefectReport defect_report(const AmplitudeTrace& trace, double tol)
{
    check_tolerance(tol);
    const TimeGrid& grid = trace.grid();
    DefectReport report;
    report.tolerance_used = tol;
    report.horizon_estimate = grid.end();
    report.pairs.reserve(grid.size());
    bool crossed = false;
    for (std::size_t total = 0; total <= grid.n_steps(); ++total) {
        report.pairs.push_back(worst_on_diagonal(trace, total));
        if (!crossed && report.pairs.back().defect > tol) {
            crossed = true;
            report.horizon_estimate = grid.time(total - 1);
        }
    }
    return report;
}

double default_defect_tolerance(Backend backend) noexcept
{
    return backend == Backend::Series ? kSeriesDefectTolerance : kLaplaceDefectTolerance;
}

BoundStateReport bound_state_check(const ModelParams& params, const AmplitudeTrace& trace,
                                   double threshold)
{
    const auto& spec = params.coupling.spec();
    const double period = params.coupling.period();
    if (!(period > 0.0))
        throw Error(ErrorKind::BadParameter,
                    "bound-state check needs period_T > 0 as the time unit");
    const TimeGrid& grid = trace.grid();
    if (grid.end() < 10.0 * period * (1.0 - 1e-9)) {
        std::ostringstream msg;
        msg << "trace ends at " << grid.end() << " < 10 T = " << 10.0 * period;
        throw Error(ErrorKind::TraceTooShort, msg.str());
    }

    BoundStateReport report;
    if (spec.kind == CouplingKind::Sinusoidal && std::abs(std::abs(spec.alpha) - 1.0) <= 1e-9) {
        const double two_pi = 2.0 * std::numbers::pi;
        const double phase = params.eps0 * period;
        const double offset = phase - two_pi * std::round(phase / two_pi);
        report.predicted = std::abs(offset) <= 1e-9;
    }

    const double tail_start = grid.end() - period * (1.0 + 1e-9);
    report.tail_min_abs2 = 1.0;
    report.tail_max_abs2 = 0.0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        if (grid.time(k) < tail_start) continue;
        const double p = std::norm(trace[k]);
        report.tail_min_abs2 = std::min(report.tail_min_abs2, p);
        report.tail_max_abs2 = std::max(report.tail_max_abs2, p);
    }
    report.consistent = !report.predicted || report.tail_min_abs2 >= threshold;
    return report;
}

} // namespace hnm
