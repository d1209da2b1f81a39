#include "hnm/amplitude.hpp"
#include "hnm/combinatorics.hpp"
#include "hnm/error.hpp"

#include <cmath>

namespace hnm {

AmplitudeTrace amplitude_series(const ModelParams& params, const TimeGrid& grid)
{
    const ValidatedCoupling& coupling = params.coupling;
    const double gamma0 = coupling.gamma0();
    const complex rate(0.5 * gamma0, params.eps0);

    std::vector<complex> a(grid.size());
    a[0] = 1.0;
    if (!coupling.is_periodic()) {
        for (std::size_t k = 1; k < a.size(); ++k) a[k] = std::exp(-rate * grid.time(k));
        return AmplitudeTrace(grid, std::move(a), Backend::Series);
    }

    const double period = coupling.period();
    const int orders = static_cast<int>(std::floor(grid.end() / period));
    if (orders > kMaxPhiOrder)
        throw Error(ErrorKind::OutOfRange, "series needs more orders than the phi table holds");
    const PhiTable table = PhiTable::build(coupling, orders);

    for (std::size_t k = 1; k < a.size(); ++k) {
        const double t = grid.time(k);
        complex sum = std::exp(-rate * t);
        for (int n = 1; n <= orders; ++n) {
            const double tau = t - n * period;
            if (tau < 0.0) break;
            sum += std::exp(-rate * tau) * table.phi(n, gamma0 * tau);
        }
        a[k] = sum;
    }
    return AmplitudeTrace(grid, std::move(a), Backend::Series);
}

} // namespace hnm
