#include "hnm/amplitude.hpp"
#include "hnm/channel.hpp"
#include "hnm/error.hpp"

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

using namespace hnm;

namespace {

template <class F>
ErrorKind kind_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an hnm::Error");
    return ErrorKind::BadParameter;
}

complex random_amplitude(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

} // namespace

TEST_CASE("density matrix invariants")
{
    CHECK_NOTHROW(DensityMatrix::make(0.5, complex(0.2, 0.1), complex(0.2, -0.1), 0.5));
    CHECK(kind_of([] { DensityMatrix::make(0.6, 0.0, 0.0, 0.6); }) == ErrorKind::InvalidState);
    CHECK(kind_of([] { DensityMatrix::make(0.5, 0.1, 0.2, 0.5); }) == ErrorKind::InvalidState);
    CHECK(kind_of([] { DensityMatrix::make(1.2, 0.0, 0.0, -0.2); }) == ErrorKind::InvalidState);
    CHECK(kind_of([] { DensityMatrix::make(0.5, 0.6, 0.6, 0.5); }) == ErrorKind::InvalidState);
}

TEST_CASE("evolve moves excited population to the ground level")
{
    const DensityMatrix out = evolve(DensityMatrix::excited(), complex(0.6, 0.0));
    CHECK(out(0, 0).real() == doctest::Approx(0.36));
    CHECK(out(1, 1).real() == doctest::Approx(0.64));
    CHECK(std::abs(out(0, 1)) == 0.0);

    const DensityMatrix ground = evolve(DensityMatrix::ground(), complex(0.3, 0.4));
    CHECK(ground(1, 1).real() == 1.0);
    CHECK(kind_of([] { evolve(DensityMatrix::excited(), 1.1); }) == ErrorKind::InvalidAmplitude);
    CHECK_NOTHROW(evolve(DensityMatrix::excited(), 0.0));
}

TEST_CASE("generator entries")
{
    const double g = 0.8, e = 1.7;
    const Superoperator G = gkls_generator(g, e);
    Superoperator expected = Superoperator::Zero();
    expected(0, 0) = -g;
    expected(1, 1) = complex(-g / 2, -e);
    expected(2, 2) = complex(-g / 2, e);
    expected(3, 0) = g;
    CHECK((G - expected).norm() < 1e-15);
    // trace preserving: (1, 0, 0, 1) is a left null vector
    CHECK((Eigen::RowVector4cd(1, 0, 0, 1) * G).norm() < 1e-15);
}

TEST_CASE("channel equals the exponential of commuting generators")
{
    const Superoperator L = -gkls_generator(1.0, 0.0);
    const Superoperator ad = complex(0.0, 1.0) * gkls_generator(0.0, 1.0);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const complex a = random_amplitude(rng);
        const Superoperator expo =
            (std::log(std::norm(a)) * L + complex(0.0, std::arg(a)) * ad).exp();
        CHECK((channel_superoperator(a) - expo).norm() < 1e-12);
    }
    CHECK(kind_of([] { channel_superoperator(0.0); }) == ErrorKind::InvalidAmplitude);
    CHECK(kind_of([] { channel_superoperator(1.5); }) == ErrorKind::InvalidAmplitude);
}

TEST_CASE("channel composition multiplies amplitudes")
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const complex a1 = random_amplitude(rng), a2 = random_amplitude(rng);
        CHECK((channel_superoperator(a1) * channel_superoperator(a2) -
               channel_superoperator(a1 * a2))
                  .norm() < 1e-12);
    }
}

TEST_CASE("superoperator acts like evolve")
{
    const DensityMatrix rho = DensityMatrix::make(0.3, complex(0.1, 0.2), complex(0.1, -0.2), 0.7);
    const complex a(0.4, -0.5);
    const OperatorVector v = channel_superoperator(a) * rho.vectorized();
    CHECK((v - evolve(rho, a).vectorized()).norm() < 1e-15);
}

TEST_CASE("choi spectrum")
{
    for (const complex a : {complex(0.0), complex(0.5, 0.5), complex(0.0, 1.0)}) {
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> s(choi_matrix(a));
        const double p = std::norm(a);
        CHECK(s.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(s.eigenvalues()(1) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(s.eigenvalues()(2) == doctest::Approx(1 - p));
        CHECK(s.eigenvalues()(3) == doctest::Approx(1 + p));
    }
    CHECK(min_eigenvalue(choi_matrix(1.1)) < -0.2);
}

TEST_CASE("rates of a flat coupling are constant")
{
    const ModelParams p{validate_coupling(CouplingSpec::flat(1.0)), 2.0};
    const RateFunctions r = extract_rates(amplitude_series(p, TimeGrid::covering(1e-3, 2.0)));
    for (std::size_t k = 0; k < r.gamma.size(); ++k) {
        CHECK(std::abs(r.gamma[k] - 1.0) < 1e-6);
        CHECK(std::abs(r.eps[k] - 2.0) < 1e-6);
    }
}

TEST_CASE("rate extraction failures")
{
    const TimeGrid g(0.1, 3);
    const AmplitudeTrace zero(g, {1.0, 0.5, 0.0, 0.2}, Backend::Series);
    CHECK(kind_of([&] { extract_rates(zero); }) == ErrorKind::AmplitudeNearZero);
    const AmplitudeTrace jump(g, {1.0, std::polar(0.9, 2.0), std::polar(0.8, 4.0), 0.7},
                              Backend::Series);
    CHECK(kind_of([&] { extract_rates(jump); }) == ErrorKind::PhaseJump);
    const AmplitudeTrace short_trace(TimeGrid(0.1, 1), {1.0, 0.9}, Backend::Series);
    CHECK(kind_of([&] { extract_rates(short_trace); }) == ErrorKind::BadParameter);
}

TEST_CASE("phase is unwrapped across the branch cut")
{
    // eps = 3, the phase passes -pi at t ~ 1.05
    const ModelParams p{validate_coupling(CouplingSpec::flat(0.2)), 3.0};
    const RateFunctions r = extract_rates(amplitude_series(p, TimeGrid::covering(1e-2, 3.0)));
    for (double e : r.eps) CHECK(std::abs(e - 3.0) < 1e-9);
}

TEST_CASE("master residual")
{
    const ModelParams flat{validate_coupling(CouplingSpec::flat(1.0)), 0.5};
    const AmplitudeTrace tr = amplitude_series(flat, TimeGrid::covering(1e-3, 2.0));
    const DensityMatrix rho = DensityMatrix::make(0.6, complex(0.2, 0.3), complex(0.2, -0.3), 0.4);
    CHECK(master_residual(flat, tr, rho) < 1e-6);
    CHECK(master_residual(flat, tr, DensityMatrix::ground()) <= 1e-12);
}
