#pragma once

#include "hnm/coupling.hpp"

#include <span>
#include <vector>

namespace hnm {

/// Largest n accepted by compositions(); the set size grows like 2^(n-1).
inline constexpr int kMaxCompositionOrder = 20;

/// Largest order held by a PhiTable.
inline constexpr int kMaxPhiOrder = 512;

/// All ordered m-tuples of positive integers summing to n, in lexicographic order.
/// Requires 1 <= m <= n <= kMaxCompositionOrder.
std::vector<std::vector<int>> compositions(int n, int m);

/// b_n^(m) = sum over compositions (h_1..h_m) of n of c_{h_1} ... c_{h_m}, where
/// coeffs[h-1] = c_h and c_h = 0 past the end. Computed as the coefficient of
/// x^n in (sum_h c_h x^h)^m.
double b_coefficient(std::span<const double> coeffs, int n, int m);

/// Exact binomial coefficient in double precision for the ranges used here.
double binomial(int n, int k);

/// Coefficients b_n^(m) for 1 <= m <= n <= max_order, plus evaluation of
///   phi_n(x) = sum_m b_n^(m) (-x)^m / m!.
class PhiTable {
public:
    static PhiTable build(const ValidatedCoupling& coupling, int max_order);

    int max_order() const noexcept { return max_order_; }
    double b(int n, int m) const;

    /// Closed forms for Sinusoidal and ExpComb, table sum for CustomFourier.
    double phi(int n, double x) const;

private:
    PhiTable(CouplingSpec spec, int max_order, std::vector<double> b)
        : spec_(std::move(spec)), max_order_(max_order), b_(std::move(b)) {}

    std::size_t index(int n, int m) const noexcept
    {
        return static_cast<std::size_t>((n - 1) * n / 2 + (m - 1));
    }

    CouplingSpec spec_;
    int max_order_;
    std::vector<double> b_; // packed lower triangle, row n holds m = 1..n
};

/// phi_n(x) for the model's coupling. Throws OutOfRange for n < 1 or n > kMaxPhiOrder.
double phi(const ModelParams& params, int n, double x);

} // namespace hnm
