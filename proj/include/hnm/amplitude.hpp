#pragma once

#include "hnm/coupling.hpp"
#include "hnm/trace.hpp"

#include <cstddef>
#include <optional>

namespace hnm {

/// Piecewise-analytic solution
///   a(t) = e^{-lt} + sum_{n <= t/T} e^{-l(t - nT)} phi_n(gamma0 (t - nT)),  l = gamma0/2 + i eps0.
/// The step function is taken as theta(0) = 1; phi_n(0) = 0 so this is immaterial.
AmplitudeTrace amplitude_series(const ModelParams& params, const TimeGrid& grid);

struct LaplaceOptions {
    /// Upper bound on the contour height y. Default 2 gamma0.
    std::optional<double> contour_height;
    /// Half-width of the truncated contour. Default 0.1 n_quad y (node spacing 0.2 y).
    std::optional<double> omega_cutoff;
    std::size_t n_quad = 200000;
};

struct LaplaceResult {
    AmplitudeTrace trace;
    /// Estimate of the contour truncation error, max over the grid.
    double tail_error_estimate = 0.0;
};

/// Bromwich inversion a(t) = (1/2 pi i) int_{R + iy} e^{-izt} / (eps0 - z - Sigma(z)) dz.
///
/// The resolvent is split as 1/D + i gamma0 S / D^2 + Q with D = eps0 - z - i gamma0/2 and
/// S the periodic part of Sigma. The first two terms are inverted by residues; Q decays like
/// |z|^-3 and is integrated by the trapezoid rule on [-W, W] + iy. Output times are processed
/// in blocks; each block uses y = min(contour_height, 3 / t_block_end) to bound the e^{yt}
/// amplification of rounding error.
LaplaceResult amplitude_laplace(const ModelParams& params, const TimeGrid& grid,
                                const LaplaceOptions& options = {});

/// Time-domain march of
///   a(t) = e^{-lt} - gamma0 sum_n c_n theta(t - nT) [a * e^{-l .}](t - nT)
/// with trapezoidal convolution. Requires dt to divide T (GridMismatch otherwise),
/// so every delay lands on a node. Sequential in t.
AmplitudeTrace amplitude_volterra(const ModelParams& params, const TimeGrid& grid);

} // namespace hnm
