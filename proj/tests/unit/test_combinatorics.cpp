#include "hnm/combinatorics.hpp"
#include "hnm/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace hnm;

namespace {

double brute_force_b(const std::vector<double>& c, int n, int m)
{
    double sum = 0.0;
    for (const auto& comp : compositions(n, m)) {
        double term = 1.0;
        for (int h : comp) term *= h <= static_cast<int>(c.size()) ? c[h - 1] : 0.0;
        sum += term;
    }
    return sum;
}

double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace

TEST_CASE("compositions of 4 into 2 parts")
{
    const std::vector<std::vector<int>> expected{{1, 3}, {2, 2}, {3, 1}};
    CHECK(compositions(4, 2) == expected);
    CHECK(compositions(3, 3) == std::vector<std::vector<int>>{{1, 1, 1}});
    CHECK(compositions(5, 1) == std::vector<std::vector<int>>{{5}});
}

TEST_CASE("composition counts follow stars and bars")
{
    for (int n = 1; n <= 12; ++n) {
        double total = 0.0;
        for (int m = 1; m <= n; ++m) {
            const auto set = compositions(n, m);
            CHECK(static_cast<double>(set.size()) == binomial(n - 1, m - 1));
            for (const auto& comp : set) {
                CHECK(static_cast<int>(comp.size()) == m);
                CHECK(std::accumulate(comp.begin(), comp.end(), 0) == n);
            }
            total += static_cast<double>(set.size());
        }
        CHECK(total == std::ldexp(1.0, n - 1));
    }
}

TEST_CASE("b coefficient equals brute-force enumeration exactly")
{
    // dyadic values keep every product and sum exact
    const std::vector<double> c{0.5, -1.5, 0.25, 2.0, -0.75};
    for (int n = 1; n <= 12; ++n)
        for (int m = 1; m <= n; ++m) CHECK(b_coefficient(c, n, m) == brute_force_b(c, n, m));
}

TEST_CASE("compositions rejects bad orders")
{
    CHECK_THROWS_AS(compositions(0, 1), Error);
    CHECK_THROWS_AS(compositions(3, 4), Error);
    CHECK_THROWS_AS(compositions(kMaxCompositionOrder + 1, 1), Error);
}

TEST_CASE("sinusoidal phi matches the table sum")
{
    const double alpha = 0.7;
    const ModelParams sin{validate_coupling(CouplingSpec::sinusoidal(1.0, 1.0, alpha)), 0.0};
    const ModelParams custom{validate_coupling(CouplingSpec::custom(1.0, 1.0, {-alpha / 2})), 0.0};
    for (int n = 1; n <= 8; ++n)
        for (double x : {0.0, 0.3, 2.5}) {
            const double closed = std::pow(alpha * x / 2, n) / factorial(n);
            CHECK(phi(sin, n, x) == doctest::Approx(closed).epsilon(1e-14));
            CHECK(phi(custom, n, x) == doctest::Approx(closed).epsilon(1e-12));
        }
}

TEST_CASE("comb phi matches the binomial sum")
{
    const double beta = 0.3;
    const ModelParams p{validate_coupling(CouplingSpec::exp_comb(1.0, 1.0, beta)), 0.0};
    for (int n = 1; n <= 10; ++n)
        for (double x : {0.1, 1.0, 4.0}) {
            double sum = 0.0;
            for (int m = 1; m <= n; ++m)
                sum += binomial(n - 1, m - 1) * std::pow(-x, m) / factorial(m);
            CHECK(phi(p, n, x) == doctest::Approx(std::exp(-beta * n) * sum).epsilon(1e-11));
        }
}

TEST_CASE("phi table agrees with b coefficients")
{
    const auto c = validate_coupling(CouplingSpec::custom(1.0, 1.0, {0.25, -0.125, 0.0625}));
    const PhiTable table = PhiTable::build(c, 9);
    const std::vector<double> coeffs{0.25, -0.125, 0.0625};
    for (int n = 1; n <= 9; ++n)
        for (int m = 1; m <= n; ++m) CHECK(table.b(n, m) == b_coefficient(coeffs, n, m));
}

TEST_CASE("phi order limits")
{
    const ModelParams p{validate_coupling(CouplingSpec::sinusoidal(1.0, 1.0, 1.0)), 0.0};
    for (int n : {0, kMaxPhiOrder + 1}) {
        try {
            phi(p, n, 1.0);
            FAIL("expected OutOfRange");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::OutOfRange);
        }
    }
    CHECK(phi(p, 1, 0.0) == 0.0);
}
