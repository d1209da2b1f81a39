#include "hnm/modes.hpp"

#include "hnm/arrowhead.hpp"
#include "hnm/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hnm {

namespace {

constexpr std::size_t kTimeBlock = 256;
constexpr std::size_t kModeBlock = 512;

} // namespace

DiscreteModeSystem make_mode_system(double eps0, std::vector<double> freqs,
                                    std::vector<double> couplings)
{
    if (!std::isfinite(eps0))
        throw Error(ErrorKind::BadParameter, "eps0 must be finite");
    if (freqs.size() != couplings.size())
        throw Error(ErrorKind::BadParameter, "mode frequencies and couplings differ in length");
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        if (!std::isfinite(freqs[k]) || !std::isfinite(couplings[k]) || couplings[k] < 0.0)
            throw Error(ErrorKind::BadParameter, "mode couplings must be finite and nonnegative");
        if (k > 0 && !(freqs[k] > freqs[k - 1]))
            throw Error(ErrorKind::BadParameter, "mode frequencies must be strictly increasing");
    }
    return DiscreteModeSystem{eps0, std::move(freqs), std::move(couplings)};
}

DiscreteModeSystem build_discrete_modes(const ModelParams& params, int K,
                                        std::optional<double> flat_half_width)
{
    if (K < 1) throw Error(ErrorKind::BadParameter, "mode count K must be positive");
    if (2 * static_cast<std::size_t>(K) + 2 > kMaxModeDimension)
        throw Error(ErrorKind::DimensionTooLarge,
                    "2K + 2 = " + std::to_string(2 * K + 2) + " exceeds " +
                        std::to_string(kMaxModeDimension));

    const ValidatedCoupling& coupling = params.coupling;
    const std::size_t count = 2 * static_cast<std::size_t>(K) + 1;
    std::vector<double> freqs(count), couplings(count);

    if (coupling.kind() == CouplingKind::ExpComb && coupling.spec().beta == 0.0) {
        const double spacing = 2.0 * std::numbers::pi / coupling.period();
        const double g = std::sqrt(coupling.gamma0() / coupling.period());
        for (std::size_t i = 0; i < count; ++i) {
            freqs[i] = spacing * (static_cast<double>(i) - K);
            couplings[i] = g;
        }
    } else if (coupling.kind() == CouplingKind::Flat) {
        const double half = flat_half_width.value_or(
            std::max(100.0 * coupling.gamma0(), 4.0 * std::abs(params.eps0)));
        if (!(half > 0.0) || !std::isfinite(half))
            throw Error(ErrorKind::BadParameter, "flat discretisation window must be positive");
        const double spacing = half / K;
        const double g = std::sqrt(coupling.gamma0() * spacing / (2.0 * std::numbers::pi));
        for (std::size_t i = 0; i < count; ++i) {
            freqs[i] = spacing * (static_cast<double>(i) - K);
            couplings[i] = g;
        }
    } else {
        throw Error(ErrorKind::UnsupportedKind,
                    "mode discretisation exists only for flat and exp_comb(beta = 0) couplings");
    }
    return make_mode_system(params.eps0, std::move(freqs), std::move(couplings));
}

ModesResult amplitude_modes(const DiscreteModeSystem& system, const TimeGrid& grid,
                            ModeOutput output)
{
    if (system.dimension() > kMaxModeDimension)
        throw Error(ErrorKind::DimensionTooLarge,
                    "dimension " + std::to_string(system.dimension()) + " exceeds " +
                        std::to_string(kMaxModeDimension));
    const auto spectrum =
        ArrowheadSpectrum::solve(system.eps0, system.mode_freqs, system.mode_couplings);
    const std::size_t n_eig = spectrum.size();
    const std::size_t n_modes = system.mode_freqs.size();
    const std::size_t n_times = grid.size();
    const double dt = grid.dt();

    std::vector<double> energy(n_eig), weight(n_eig);
    for (std::size_t j = 0; j < n_eig; ++j) {
        energy[j] = spectrum.eigenvalue(j);
        weight[j] = spectrum.head_weight(j);
    }

    // a(t): per eigenvalue phasor recurrence, reseeded exactly at each block start.
    std::vector<double> re(n_times, 0.0), im(n_times, 0.0);
    for (std::size_t j = 0; j < n_eig; ++j) {
        const double cr = std::cos(energy[j] * dt), ci = -std::sin(energy[j] * dt);
        for (std::size_t k0 = 0; k0 < n_times; k0 += kTimeBlock) {
            const std::size_t k1 = std::min(n_times, k0 + kTimeBlock);
            const double phase = energy[j] * grid.time(k0);
            double pr = weight[j] * std::cos(phase), pi = -weight[j] * std::sin(phase);
            for (std::size_t k = k0; k < k1; ++k) {
                re[k] += pr;
                im[k] += pi;
                const double nr = pr * cr - pi * ci;
                pi = pr * ci + pi * cr;
                pr = nr;
            }
        }
    }
    std::vector<complex> a(n_times);
    for (std::size_t k = 0; k < n_times; ++k) a[k] = complex(re[k], im[k]);
    a[0] = 1.0;

    ModesResult result{AmplitudeTrace(grid, std::move(a), Backend::Modes), n_modes, {}, {}};
    if (output == ModeOutput::AmplitudeOnly) return result;

    // c_k(t) = g_k sum_j w_j e^{-i E_j t} / (E_j - w_k), as (modes x eig) * (eig x times).
    if (output == ModeOutput::BathPopulation) result.bath_population.assign(n_times, 0.0);
    if (output == ModeOutput::ModeAmplitudes) result.mode_amplitudes.assign(n_times * n_modes, 0.0);

    Eigen::MatrixXd phase_re, phase_im, kernel, block_re, block_im;
    for (std::size_t k0 = 0; k0 < n_times; k0 += kTimeBlock) {
        const std::size_t len = std::min(n_times, k0 + kTimeBlock) - k0;
        phase_re.resize(static_cast<Eigen::Index>(n_eig), static_cast<Eigen::Index>(len));
        phase_im.resizeLike(phase_re);
        for (std::size_t j = 0; j < n_eig; ++j)
            for (std::size_t k = 0; k < len; ++k) {
                const double phase = energy[j] * grid.time(k0 + k);
                phase_re(j, k) = weight[j] * std::cos(phase);
                phase_im(j, k) = -weight[j] * std::sin(phase);
            }

        for (std::size_t m0 = 0; m0 < n_modes; m0 += kModeBlock) {
            const std::size_t rows = std::min(n_modes, m0 + kModeBlock) - m0;
            kernel.setZero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n_eig));
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t mode = m0 + r;
                if (spectrum.deflated(mode)) continue;
                const double g = spectrum.coupling(mode);
                for (std::size_t j = 0; j < n_eig; ++j) kernel(r, j) = g / spectrum.gap(j, mode);
            }
            block_re.noalias() = kernel * phase_re;
            block_im.noalias() = kernel * phase_im;
            for (std::size_t k = 0; k < len; ++k) {
                if (output == ModeOutput::BathPopulation) {
                    double sum = 0.0;
                    for (std::size_t r = 0; r < rows; ++r)
                        sum += block_re(r, k) * block_re(r, k) + block_im(r, k) * block_im(r, k);
                    result.bath_population[k0 + k] += sum;
                } else {
                    for (std::size_t r = 0; r < rows; ++r)
                        result.mode_amplitudes[(k0 + k) * n_modes + m0 + r] =
                            complex(block_re(r, k), block_im(r, k));
                }
            }
        }
    }
    return result;
}

} // namespace hnm
