#include "hnm/coupling.hpp"

#include "hnm/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hnm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Density of a finite cosine series in units of gamma0 / 2pi.
double cosine_series(const std::vector<double>& c, double theta)
{
    double sum = 1.0;
    for (std::size_t n = 0; n < c.size(); ++n)
        sum += 2.0 * c[n] * std::cos(static_cast<double>(n + 1) * theta);
    return sum;
}

[[noreturn]] void bad_parameter(const std::string& what)
{
    throw Error(ErrorKind::BadParameter, what);
}

} // namespace

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorKind::DistributionalDensity: return "DistributionalDensity";
    case ErrorKind::LowerHalfPlane: return "LowerHalfPlane";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BadQuadrature: return "BadQuadrature";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::InvalidAmplitude: return "InvalidAmplitude";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::TraceTooShort: return "TraceTooShort";
    case ErrorKind::ResolventPole: return "ResolventPole";
    case ErrorKind::AmplitudeNearZero: return "AmplitudeNearZero";
    case ErrorKind::PhaseJump: return "PhaseJump";
    case ErrorKind::CrosscheckFailed: return "CrosscheckFailed";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::UnknownSubcommand: return "UnknownSubcommand";
    }
    return "Unknown";
}

bool is_numerical(ErrorKind kind) noexcept
{
    return kind == ErrorKind::ResolventPole || kind == ErrorKind::AmplitudeNearZero ||
           kind == ErrorKind::PhaseJump || kind == ErrorKind::CrosscheckFailed;
}

CouplingSpec CouplingSpec::flat(double gamma0, double period_T)
{
    CouplingSpec s;
    s.kind = CouplingKind::Flat;
    s.gamma0 = gamma0;
    s.period_T = period_T;
    return s;
}

CouplingSpec CouplingSpec::sinusoidal(double gamma0, double period_T, double alpha)
{
    CouplingSpec s;
    s.kind = CouplingKind::Sinusoidal;
    s.gamma0 = gamma0;
    s.period_T = period_T;
    s.alpha = alpha;
    return s;
}

CouplingSpec CouplingSpec::exp_comb(double gamma0, double period_T, double beta)
{
    CouplingSpec s;
    s.kind = CouplingKind::ExpComb;
    s.gamma0 = gamma0;
    s.period_T = period_T;
    s.beta = beta;
    return s;
}

CouplingSpec CouplingSpec::custom(double gamma0, double period_T, std::vector<double> coeffs)
{
    CouplingSpec s;
    s.kind = CouplingKind::CustomFourier;
    s.gamma0 = gamma0;
    s.period_T = period_T;
    s.coeffs = std::move(coeffs);
    return s;
}

ValidatedCoupling validate_coupling(const CouplingSpec& spec, int n_samples)
{
    if (!(spec.gamma0 > 0.0) || !std::isfinite(spec.gamma0))
        bad_parameter("gamma0 must be positive and finite");
    if (n_samples < 1)
        bad_parameter("n_samples must be positive");

    if (spec.kind == CouplingKind::Flat) {
        if (spec.period_T < 0.0 || !std::isfinite(spec.period_T))
            bad_parameter("period_T must be nonnegative for a flat coupling");
        return ValidatedCoupling(spec);
    }

    if (!(spec.period_T > 0.0) || !std::isfinite(spec.period_T))
        bad_parameter("period_T must be positive and finite");

    switch (spec.kind) {
    case CouplingKind::Sinusoidal:
        if (!(std::abs(spec.alpha) <= 1.0))
            bad_parameter("sinusoidal coupling requires |alpha| <= 1");
        break;
    case CouplingKind::ExpComb:
        if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta))
            bad_parameter("exp_comb coupling requires beta >= 0");
        break;
    case CouplingKind::CustomFourier: {
        for (double c : spec.coeffs)
            if (!std::isfinite(c))
                bad_parameter("custom Fourier coefficients must be finite");
        // Tolerance -1e-12 in units of gamma0/2pi.
        for (int k = 0; k < n_samples; ++k) {
            const double theta = kTwoPi * k / n_samples;
            const double value = cosine_series(spec.coeffs, theta);
            if (value < -1e-12) {
                std::ostringstream msg;
                msg << "form factor is negative (" << value * spec.gamma0 / kTwoPi
                    << ") at omega = " << theta / spec.period_T;
                throw Error(ErrorKind::NonPositiveDensity, msg.str());
            }
        }
        break;
    }
    case CouplingKind::Flat: break;
    }
    return ValidatedCoupling(spec);
}

double ValidatedCoupling::fourier_coefficient(int n) const noexcept
{
    if (n < 1) return 0.0;
    switch (spec_.kind) {
    case CouplingKind::Flat: return 0.0;
    case CouplingKind::Sinusoidal: return n == 1 ? -0.5 * spec_.alpha : 0.0;
    case CouplingKind::ExpComb: return std::exp(-spec_.beta * n);
    case CouplingKind::CustomFourier:
        return static_cast<std::size_t>(n) <= spec_.coeffs.size() ? spec_.coeffs[n - 1] : 0.0;
    }
    return 0.0;
}

int ValidatedCoupling::last_coefficient() const noexcept
{
    switch (spec_.kind) {
    case CouplingKind::Flat: return 0;
    case CouplingKind::Sinusoidal: return spec_.alpha != 0.0 ? 1 : 0;
    case CouplingKind::ExpComb: return -1;
    case CouplingKind::CustomFourier: {
        int last = 0;
        for (std::size_t n = 0; n < spec_.coeffs.size(); ++n)
            if (spec_.coeffs[n] != 0.0) last = static_cast<int>(n + 1);
        return last;
    }
    }
    return 0;
}

complex ValidatedCoupling::periodic_part(complex z) const
{
    if (spec_.kind == CouplingKind::Flat) return 0.0;
    const complex ratio = std::exp(complex(0.0, spec_.period_T) * z);
    switch (spec_.kind) {
    case CouplingKind::Sinusoidal: return -0.5 * spec_.alpha * ratio;
    case CouplingKind::ExpComb: {
        const complex q = std::exp(-spec_.beta) * ratio;
        return q / (1.0 - q);
    }
    case CouplingKind::CustomFourier: {
        complex sum = 0.0;
        complex power = ratio;
        for (double c : spec_.coeffs) {
            sum += c * power;
            power *= ratio;
        }
        return sum;
    }
    case CouplingKind::Flat: break;
    }
    return 0.0;
}

double ValidatedCoupling::periodic_part_bound(double y) const
{
    if (spec_.kind == CouplingKind::Flat) return 0.0;
    const double r = std::exp(-spec_.period_T * y);
    switch (spec_.kind) {
    case CouplingKind::Sinusoidal: return 0.5 * std::abs(spec_.alpha) * r;
    case CouplingKind::ExpComb: {
        const double q = std::exp(-spec_.beta) * r;
        return q / (1.0 - q);
    }
    case CouplingKind::CustomFourier: {
        double sum = 0.0;
        double power = r;
        for (double c : spec_.coeffs) {
            sum += std::abs(c) * power;
            power *= r;
        }
        return sum;
    }
    case CouplingKind::Flat: break;
    }
    return 0.0;
}

double spectral_density(const ValidatedCoupling& coupling, double omega)
{
    const CouplingSpec& s = coupling.spec();
    const double scale = s.gamma0 / kTwoPi;
    const double theta = s.period_T * omega;
    switch (s.kind) {
    case CouplingKind::Flat: return scale;
    case CouplingKind::Sinusoidal: return scale * (1.0 - s.alpha * std::cos(theta));
    case CouplingKind::ExpComb: {
        if (s.beta == 0.0)
            throw Error(ErrorKind::DistributionalDensity,
                        "exp_comb with beta = 0 is a Dirac comb; no pointwise density");
        // Poisson kernel: 1 + 2 sum r^n cos(n theta) = (1 - r^2) / (1 - 2 r cos theta + r^2)
        const double r = std::exp(-s.beta);
        return scale * (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(theta) + r * r);
    }
    case CouplingKind::CustomFourier: return scale * cosine_series(s.coeffs, theta);
    }
    return scale;
}

complex self_energy(const ValidatedCoupling& coupling, complex z)
{
    if (!(z.imag() > 0.0))
        throw Error(ErrorKind::LowerHalfPlane, "self-energy requires Im z > 0");
    const complex half_width(0.0, 0.5 * coupling.gamma0());
    return half_width * (1.0 + 2.0 * coupling.periodic_part(z));
}

double reconstruct_density(const ValidatedCoupling& coupling, double omega, double delta)
{
    if (coupling.kind() == CouplingKind::ExpComb && coupling.spec().beta == 0.0)
        throw Error(ErrorKind::DistributionalDensity,
                    "exp_comb with beta = 0 has no pointwise density to reconstruct");
    return self_energy(coupling, complex(omega, delta)).imag() / std::numbers::pi;
}

} // namespace hnm
