#include "hnm/amplitude.hpp"
#include "hnm/error.hpp"

#include <cmath>
#include <sstream>

namespace hnm {

AmplitudeTrace amplitude_volterra(const ModelParams& params, const TimeGrid& grid)
{
    const ValidatedCoupling& coupling = params.coupling;
    const double gamma0 = coupling.gamma0();
    const double dt = grid.dt();
    const complex rate(0.5 * gamma0, params.eps0);

    std::vector<complex> a(grid.size());
    a[0] = 1.0;
    if (!coupling.is_periodic()) {
        for (std::size_t k = 1; k < a.size(); ++k) a[k] = std::exp(-rate * grid.time(k));
        return AmplitudeTrace(grid, std::move(a), Backend::Volterra);
    }

    const double steps_per_period = coupling.period() / dt;
    const double rounded = std::round(steps_per_period);
    if (rounded < 1.0 || std::abs(steps_per_period - rounded) > 1e-9 * steps_per_period) {
        std::ostringstream msg;
        msg << "dt = " << dt << " does not divide T = " << coupling.period();
        throw Error(ErrorKind::GridMismatch, msg.str());
    }
    const auto lag = static_cast<std::size_t>(rounded);

    // Delays n T that fit in the grid, with their coefficients.
    std::vector<double> coeff;
    const int last = coupling.last_coefficient();
    for (std::size_t n = 1; n * lag <= grid.n_steps(); ++n) {
        if (last >= 0 && static_cast<int>(n) > last) break;
        coeff.push_back(coupling.fourier_coefficient(static_cast<int>(n)));
    }

    // conv[k] = trapezoid approximation of int_0^{t_k} a(s) e^{-l (t_k - s)} ds,
    // advanced by its one-step recursion (identical to the full-history sum).
    std::vector<complex> conv(grid.size());
    const complex decay = std::exp(-rate * dt);
    conv[0] = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
        complex value = std::exp(-rate * grid.time(k));
        for (std::size_t n = 1; n <= coeff.size() && n * lag <= k; ++n)
            value -= gamma0 * coeff[n - 1] * conv[k - n * lag];
        a[k] = value;
        conv[k] = decay * conv[k - 1] + 0.5 * dt * (decay * a[k - 1] + a[k]);
    }
    return AmplitudeTrace(grid, std::move(a), Backend::Volterra);
}

} // namespace hnm
