#include "hnm/amplitude.hpp"
#include "hnm/error.hpp"
#include "hnm/markovianity.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace hnm;

namespace {

constexpr double pi = std::numbers::pi;

AmplitudeTrace series(const CouplingSpec& spec, double eps0, double dt, double t_max)
{
    return amplitude_series({validate_coupling(spec), eps0}, TimeGrid::covering(dt, t_max));
}

// max defect over pairs with t + s <= tau
double max_defect_up_to(const AmplitudeTrace& tr, std::size_t total)
{
    double worst = 0.0;
    for (std::size_t n = 0; n <= total; ++n)
        for (std::size_t i = 0; i <= n; ++i) worst = std::max(worst, semigroup_defect(tr, i, n - i));
    return worst;
}

} // namespace

TEST_CASE("defect of a sinusoidal trace past the delay")
{
    const AmplitudeTrace tr = series(CouplingSpec::sinusoidal(1.0, 1.0, 1.0), 0.0, 0.25, 2.0);
    CHECK(semigroup_defect(tr, 3, 3) == doctest::Approx(0.25 * std::exp(-0.25)).epsilon(1e-14));
    CHECK(semigroup_defect(tr, 2, 2) < 1e-15);
    CHECK_THROWS_AS(semigroup_defect(tr, 5, 4), Error);
    try {
        semigroup_defect(tr, 9, 0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndexOutOfRange);
    }
}

TEST_CASE("flat coupling has no defect")
{
    const AmplitudeTrace tr = series(CouplingSpec::flat(1.0), 0.7, 0.01, 3.0);
    CHECK(max_defect_up_to(tr, tr.grid().n_steps()) < 1e-12);
    CHECK(hidden_horizon(tr, 1e-10) == tr.grid().end());
}

TEST_CASE("hidden horizon sits at the delay")
{
    const double dt = 1.0 / 200;
    for (const auto& spec : {CouplingSpec::sinusoidal(1.0, 1.0, 1.0),
                             CouplingSpec::exp_comb(4.0, 1.0, 2.0),
                             CouplingSpec::custom(1.0, 1.0, {0.0, 0.3})}) {
        const AmplitudeTrace tr = series(spec, 0.4, dt, 3.0);
        const double expected = spec.kind == CouplingKind::CustomFourier ? 2.0 : 1.0;
        CHECK(std::abs(hidden_horizon(tr, 1e-10) - expected) <= dt * (1 + 1e-9));
    }
    const AmplitudeTrace tr = series(CouplingSpec::sinusoidal(1.0, 1.0, 1.0), 0.0, dt, 3.0);
    CHECK_THROWS_AS(hidden_horizon(tr, 0.0), Error);
}

TEST_CASE("defect onset is monotone")
{
    const AmplitudeTrace tr = series(CouplingSpec::sinusoidal(1.0, 1.0, 1.0), 0.0, 0.02, 1.5);
    CHECK(max_defect_up_to(tr, 50) <= 1e-12);
    CHECK(max_defect_up_to(tr, 60) > 1e-3);
}

TEST_CASE("scalar and operator defects vanish together")
{
    const AmplitudeTrace tr = series(CouplingSpec::sinusoidal(1.0, 1.0, 0.8), 0.9, 0.01, 3.0);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> pick(0, tr.grid().n_steps());
    for (int i = 0; i < 100; ++i) {
        const std::size_t t = pick(rng);
        const std::size_t s = std::uniform_int_distribution<std::size_t>(0, tr.grid().n_steps() - t)(rng);
        const double scalar = semigroup_defect(tr, t, s);
        const double op = operator_defect(tr, t, s);
        CHECK((scalar <= 1e-12) == (op <= 1e-12));
        CHECK(op >= std::sqrt(2.0) * scalar * (1 - 1e-9) - 1e-15);
        CHECK(op <= std::sqrt(10.0) * scalar * (1 + 1e-9) + 1e-15);
    }
}

TEST_CASE("larger beta suppresses the defect")
{
    double previous = 0.0;
    for (double beta : {1.0, 2.0, 3.0}) {
        const AmplitudeTrace tr = series(CouplingSpec::exp_comb(1.0, 1.0, beta), 0.0, 0.25, 1.5);
        const double d = semigroup_defect(tr, 3, 3);
        if (previous > 0.0) CHECK(previous / d >= std::exp(0.5));
        previous = d;
    }
}

TEST_CASE("defect report")
{
    const AmplitudeTrace tr = series(CouplingSpec::sinusoidal(1.0, 1.0, 1.0), 0.0, 0.05, 2.0);
    const DefectReport r = defect_report(tr, 1e-10);
    CHECK(r.pairs.size() == tr.size());
    CHECK(r.tolerance_used == 1e-10);
    CHECK(r.horizon_estimate == doctest::Approx(hidden_horizon(tr, 1e-10)));
    for (const DefectPair& p : r.pairs) CHECK(p.defect >= 0.0);
    CHECK(default_defect_tolerance(Backend::Series) == 1e-10);
    CHECK(default_defect_tolerance(Backend::Laplace) == 1e-4);
}

TEST_CASE("bound state prediction")
{
    const double dt = 0.01;
    const CouplingSpec sin = CouplingSpec::sinusoidal(1.0, 1.0, 1.0);
    const ModelParams trapped{validate_coupling(sin), 2 * pi};
    const BoundStateReport yes = bound_state_check(trapped, amplitude_series(trapped, TimeGrid::covering(dt, 10.0)));
    CHECK(yes.predicted);
    CHECK(yes.consistent);
    CHECK(yes.tail_min_abs2 > 0.4);

    const ModelParams leaky{validate_coupling(sin), pi};
    const BoundStateReport no = bound_state_check(leaky, amplitude_series(leaky, TimeGrid::covering(dt, 10.0)));
    CHECK_FALSE(no.predicted);
    CHECK(no.tail_max_abs2 < yes.tail_min_abs2);

    const ModelParams flat{validate_coupling(CouplingSpec::flat(1.0, 1.0)), 0.0};
    const BoundStateReport f = bound_state_check(flat, amplitude_series(flat, TimeGrid::covering(dt, 10.0)));
    CHECK_FALSE(f.predicted);
    CHECK(f.tail_min_abs2 == doctest::Approx(std::exp(-10.0)).epsilon(1e-9));

    try {
        bound_state_check(trapped, amplitude_series(trapped, TimeGrid::covering(dt, 9.0)));
        FAIL("expected TraceTooShort");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TraceTooShort);
    }
    const ModelParams no_unit{validate_coupling(CouplingSpec::flat(1.0)), 0.0};
    CHECK_THROWS_AS(bound_state_check(no_unit, amplitude_series(no_unit, TimeGrid::covering(dt, 10.0))),
                    Error);
}
