#include "hnm/amplitude.hpp"
#include "hnm/error.hpp"
#include "hnm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hnm {

namespace {

constexpr std::size_t kBlock = 256;
// y t stays below this within a block, so e^{yt} never exceeds e^3.
constexpr double kHeightTimeProduct = 3.0;
// Automatic cutoff W = kCutoffFraction * n_quad * y gives node spacing 0.2 y.
constexpr double kCutoffFraction = 0.1;

void check_options(const LaplaceOptions& options)
{
    if (options.contour_height && !(*options.contour_height > 0.0 &&
                                    std::isfinite(*options.contour_height)))
        throw Error(ErrorKind::BadQuadrature, "contour height must be positive");
    if (options.omega_cutoff && !(*options.omega_cutoff > 0.0 &&
                                  std::isfinite(*options.omega_cutoff)))
        throw Error(ErrorKind::BadQuadrature, "frequency cutoff must be positive");
    if (options.n_quad < 2)
        throw Error(ErrorKind::BadQuadrature, "need at least two quadrature nodes");
}

// Inverse transforms of 1/D and i gamma0 S / D^2, i.e. the free decay and the terms
// linear in the Fourier coefficients.
complex residue_part(const ModelParams& params, double t)
{
    const ValidatedCoupling& coupling = params.coupling;
    const complex rate(0.5 * coupling.gamma0(), params.eps0);
    complex value = std::exp(-rate * t);
    if (!coupling.is_periodic()) return value;
    const int last = coupling.last_coefficient();
    for (int n = 1; last < 0 || n <= last; ++n) {
        const double tau = t - n * coupling.period();
        if (tau < 0.0) break;
        value -= coupling.gamma0() * coupling.fourier_coefficient(n) * tau * std::exp(-rate * tau);
    }
    return value;
}

} // namespace

LaplaceResult amplitude_laplace(const ModelParams& params, const TimeGrid& grid,
                                const LaplaceOptions& options)
{
    check_options(options);
    const ValidatedCoupling& coupling = params.coupling;
    const double gamma0 = coupling.gamma0();
    const double cap = options.contour_height.value_or(2.0 * gamma0);
    const std::size_t n_nodes = options.n_quad + 1;

    std::vector<complex> a(grid.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = residue_part(params, grid.time(k));

    double tail_estimate = 0.0;
    if (coupling.is_periodic()) {
        std::vector<double> acc_re, acc_im;
        for (std::size_t k0 = 0; k0 < grid.size(); k0 += kBlock) {
            const std::size_t k1 = std::min(grid.size(), k0 + kBlock);
            const std::size_t len = k1 - k0;
            const double t_end = grid.time(k1 - 1);
            const double y =
                t_end > 0.0 ? std::min(cap, kHeightTimeProduct / t_end) : cap;
            const double cutoff =
                options.omega_cutoff.value_or(kCutoffFraction * options.n_quad * y);
            const double h = 2.0 * cutoff / static_cast<double>(options.n_quad);
            const double t0 = grid.time(k0);
            const double dt = grid.dt();

            std::vector<std::vector<double>> part_re(thread_budget()), part_im(thread_budget());
            const std::size_t workers = parallel_chunks(
                n_nodes, [&](std::size_t w, std::size_t begin, std::size_t end) {
                    std::vector<double> re(len, 0.0), im(len, 0.0);
                    for (std::size_t j = begin; j < end; ++j) {
                        const double x = -cutoff + h * static_cast<double>(j);
                        const complex z(x, y);
                        const complex d = params.eps0 - z - complex(0.0, 0.5 * gamma0);
                        const complex coupling_term = complex(0.0, gamma0) * coupling.periodic_part(z);
                        const complex denom = d - coupling_term;
                        if (std::abs(denom) < 1e-14) {
                            std::ostringstream msg;
                            msg << "resolvent pole at z = " << x << " + " << y << "i";
                            throw Error(ErrorKind::ResolventPole, msg.str());
                        }
                        const double weight = (j == 0 || j == n_nodes - 1) ? 0.5 * h : h;
                        const complex q =
                            weight * coupling_term * coupling_term / (denom * d * d) *
                            std::exp(complex(0.0, -x * t0));
                        double qr = q.real(), qi = q.imag();
                        const double cr = std::cos(x * dt), ci = -std::sin(x * dt);
                        for (std::size_t k = 0; k < len; ++k) {
                            re[k] += qr;
                            im[k] += qi;
                            const double nr = qr * cr - qi * ci;
                            qi = qr * ci + qi * cr;
                            qr = nr;
                        }
                    }
                    part_re[w] = std::move(re);
                    part_im[w] = std::move(im);
                });

            acc_re.assign(len, 0.0);
            acc_im.assign(len, 0.0);
            for (std::size_t w = 0; w < workers; ++w)
                for (std::size_t k = 0; k < len; ++k) {
                    acc_re[k] += part_re[w][k];
                    acc_im[k] += part_im[w][k];
                }
            for (std::size_t k = 0; k < len; ++k) {
                const double t = grid.time(k0 + k);
                // e^{yt} / (2 pi i) times the accumulated sum
                const complex integral(acc_re[k], acc_im[k]);
                a[k0 + k] += std::exp(y * t) * integral / complex(0.0, 2.0 * std::numbers::pi);
            }

            const double bound = coupling.periodic_part_bound(y);
            tail_estimate = std::max(tail_estimate, std::exp(y * t_end) * gamma0 * gamma0 *
                                                        bound * bound /
                                                        (2.0 * std::numbers::pi * cutoff * cutoff));
        }
    }
    a[0] = 1.0;
    return LaplaceResult{AmplitudeTrace(grid, std::move(a), Backend::Laplace), tail_estimate};
}

} // namespace hnm
