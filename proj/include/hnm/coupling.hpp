#pragma once

#include <complex>
#include <vector>

namespace hnm {

using complex = std::complex<double>;

enum class CouplingKind { Flat, Sinusoidal, ExpComb, CustomFourier };

/// Form factor |g(w)|^2 = (gamma0 / 2pi) (1 + 2 sum_n c_n cos(n T w)).
///
/// Flat has no cosine terms. Sinusoidal has c_1 = -alpha/2 and nothing else.
/// ExpComb has c_n = exp(-beta n); at beta = 0 the density is a Dirac comb.
/// CustomFourier takes c_1..c_N verbatim.
///
/// period_T is ignored by the dynamics of a Flat coupling, but when positive
/// it is kept as the natural time unit (figures, bound-state tail window).
struct CouplingSpec {
    CouplingKind kind = CouplingKind::Flat;
    double gamma0 = 1.0;
    double period_T = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> coeffs;

    static CouplingSpec flat(double gamma0, double period_T = 0.0);
    static CouplingSpec sinusoidal(double gamma0, double period_T, double alpha);
    static CouplingSpec exp_comb(double gamma0, double period_T, double beta);
    static CouplingSpec custom(double gamma0, double period_T, std::vector<double> coeffs);
};

inline constexpr int kDefaultPositivitySamples = 4096;

class ValidatedCoupling;

/// Checks parameter ranges and, for CustomFourier, samples the density at
/// n_samples points of one period. Throws BadParameter / NonPositiveDensity.
ValidatedCoupling validate_coupling(const CouplingSpec& spec,
                                    int n_samples = kDefaultPositivitySamples);

/// A CouplingSpec that passed validate_coupling. Immutable.
class ValidatedCoupling {
public:
    const CouplingSpec& spec() const noexcept { return spec_; }
    CouplingKind kind() const noexcept { return spec_.kind; }
    double gamma0() const noexcept { return spec_.gamma0; }
    double period() const noexcept { return spec_.period_T; }

    /// True for every kind with a cosine series (all but Flat).
    bool is_periodic() const noexcept { return spec_.kind != CouplingKind::Flat; }

    /// Fourier coefficient c_n, n >= 1; zero beyond the defined terms.
    double fourier_coefficient(int n) const noexcept;

    /// Index of the last nonzero c_n, or -1 when the series is infinite (ExpComb).
    int last_coefficient() const noexcept;

    /// sum_n c_n exp(i n T z) for Im z > 0, summed in closed form where one exists.
    complex periodic_part(complex z) const;

    /// sum_n |c_n| exp(-n T y): bound on |periodic_part| along Im z = y.
    double periodic_part_bound(double y) const;

private:
    friend ValidatedCoupling validate_coupling(const CouplingSpec&, int);
    explicit ValidatedCoupling(CouplingSpec spec) : spec_(std::move(spec)) {}

    CouplingSpec spec_;
};

/// Full physical input: a validated form factor plus the dressed qubit energy.
struct ModelParams {
    ValidatedCoupling coupling;
    double eps0 = 0.0;
};

/// |g(w)|^2. Throws DistributionalDensity for ExpComb with beta = 0.
double spectral_density(const ValidatedCoupling& coupling, double omega);

/// Dressed self-energy (i gamma0 / 2)(1 + 2 sum_n c_n e^{i n T z}), Im z > 0.
/// Throws LowerHalfPlane otherwise.
complex self_energy(const ValidatedCoupling& coupling, complex z);

/// (1/pi) Im Sigma(omega + i delta); tends to spectral_density as delta -> 0.
double reconstruct_density(const ValidatedCoupling& coupling, double omega, double delta);

} // namespace hnm
