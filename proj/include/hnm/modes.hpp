#pragma once

#include "hnm/coupling.hpp"
#include "hnm/trace.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hnm {

inline constexpr std::size_t kMaxModeDimension = 20000;

/// One-excitation sector of a qubit coupled to finitely many bath modes:
/// diagonal (eps0, w_1..w_n), first row and column (g_1..g_n).
struct DiscreteModeSystem {
    double eps0 = 0.0;
    std::vector<double> mode_freqs;     // strictly increasing
    std::vector<double> mode_couplings; // >= 0

    std::size_t dimension() const noexcept { return mode_freqs.size() + 1; }
};

/// Checks the invariants and returns the system. Throws BadParameter.
DiscreteModeSystem make_mode_system(double eps0, std::vector<double> freqs,
                                    std::vector<double> couplings);

/// Bath of 2K+1 modes representing the model's coupling.
///
/// ExpComb with beta = 0: the density is (gamma0/T) sum_k delta(w - 2 pi k / T) by Poisson
/// summation, so modes sit at 2 pi k / T with g_k^2 = gamma0 / T, k = -K..K. This is exact
/// for the comb; only the truncation |k| <= K is approximate.
///
/// Flat: uniform grid w_k = k dw on [-W, W], dw = W / K, g_k^2 = gamma0 dw / 2 pi. Default
/// half-width W = max(100 gamma0, 4 |eps0|). Valid for t below the recurrence time 2 pi / dw.
///
/// Throws UnsupportedKind for Sinusoidal, CustomFourier and ExpComb with beta > 0.
DiscreteModeSystem build_discrete_modes(const ModelParams& params, int K,
                                        std::optional<double> flat_half_width = {});

enum class ModeOutput {
    AmplitudeOnly,
    BathPopulation, // sum_k |c_k(t)|^2 per time
    ModeAmplitudes, // every c_k(t); memory grows as modes x times
};

struct ModesResult {
    AmplitudeTrace trace;
    std::size_t n_modes = 0;
    std::vector<double> bath_population;   // per time, when requested
    std::vector<complex> mode_amplitudes;  // row-major [time][mode], when requested

    complex mode_amplitude(std::size_t time_index, std::size_t mode) const
    {
        return mode_amplitudes[time_index * n_modes + mode];
    }
};

/// Diagonalises the system once and evaluates a(t) = sum_j |<e0|v_j>|^2 e^{-i E_j t}.
/// Throws DimensionTooLarge above kMaxModeDimension.
ModesResult amplitude_modes(const DiscreteModeSystem& system, const TimeGrid& grid,
                            ModeOutput output = ModeOutput::AmplitudeOnly);

} // namespace hnm
