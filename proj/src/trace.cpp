#include "hnm/trace.hpp"

#include "hnm/error.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace hnm {

TimeGrid::TimeGrid(double dt, std::size_t n_steps) : dt_(dt), n_steps_(n_steps)
{
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw Error(ErrorKind::BadParameter, "time step must be positive");
    if (n_steps < 1)
        throw Error(ErrorKind::BadParameter, "time grid needs at least one step");
}

TimeGrid TimeGrid::covering(double dt, double t_max)
{
    if (!(dt > 0.0) || !(t_max > 0.0) || dt > t_max)
        throw Error(ErrorKind::BadParameter, "need 0 < dt <= t_max");
    const double steps = t_max / dt;
    const auto n = static_cast<std::size_t>(std::floor(steps * (1.0 + 1e-9)));
    return TimeGrid(dt, n);
}

std::string_view to_string(Backend backend) noexcept
{
    switch (backend) {
    case Backend::Series: return "series";
    case Backend::Laplace: return "laplace";
    case Backend::Volterra: return "volterra";
    case Backend::Modes: return "modes";
    }
    return "unknown";
}

Backend backend_from_string(std::string_view name)
{
    if (name == "series") return Backend::Series;
    if (name == "laplace") return Backend::Laplace;
    if (name == "volterra") return Backend::Volterra;
    if (name == "modes") return Backend::Modes;
    throw Error(ErrorKind::BadParameter, "unknown backend '" + std::string(name) + "'");
}

AmplitudeTrace::AmplitudeTrace(TimeGrid grid, std::vector<complex> values, Backend backend)
    : grid_(grid), values_(std::move(values)), backend_(backend)
{
    if (values_.size() != grid_.size())
        throw Error(ErrorKind::BadParameter, "trace length does not match its grid");
    if (values_.front() != complex(1.0, 0.0))
        throw Error(ErrorKind::InvalidAmplitude, "survival amplitude must start at a(0) = 1");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double mag = std::abs(values_[k]);
        if (!(mag <= 1.0 + kAmplitudeSlack)) {
            std::ostringstream msg;
            msg << "|a| = " << mag << " exceeds 1 at t = " << grid_.time(k) << " ("
                << to_string(backend_) << " backend)";
            throw Error(ErrorKind::InvalidAmplitude, msg.str());
        }
    }
}

} // namespace hnm
