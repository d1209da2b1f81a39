#include "hnm/combinatorics.hpp"

#include "hnm/error.hpp"

#include <cmath>
#include <string>

namespace hnm {

namespace {

void check_order(int n, int m, int limit)
{
    if (m < 1 || n < m || n > limit)
        throw Error(ErrorKind::OutOfRange,
                    "need 1 <= m <= n <= " + std::to_string(limit) + ", got n = " +
                        std::to_string(n) + ", m = " + std::to_string(m));
}

void extend(std::vector<int>& prefix, int remaining, int slots,
            std::vector<std::vector<int>>& out)
{
    if (slots == 1) {
        prefix.push_back(remaining);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int h = 1; h <= remaining - (slots - 1); ++h) {
        prefix.push_back(h);
        extend(prefix, remaining - h, slots - 1, out);
        prefix.pop_back();
    }
}

// (-x)^n / n! as a running product, without overflow in n!.
double scaled_power(double x, int n)
{
    double v = 1.0;
    for (int i = 1; i <= n; ++i) v *= -x / i;
    return v;
}

// -x L^{(1)}_{n-1}(x) / n, which equals sum_m C(n-1, m-1) (-x)^m / m!.
double laguerre_phi(int n, double x)
{
    double prev = 1.0;      // L_0
    double cur = 2.0 - x;   // L_1
    if (n == 1) return -x;
    for (int k = 1; k < n - 1; ++k) {
        const double next = ((2.0 * k + 2.0 - x) * cur - (k + 1.0) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return -x * cur / n;
}

} // namespace

std::vector<std::vector<int>> compositions(int n, int m)
{
    check_order(n, m, kMaxCompositionOrder);
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(binomial(n - 1, m - 1)));
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(m));
    extend(prefix, n, m, out);
    return out;
}

double binomial(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v < 9e15 ? std::round(v) : v;
}

double b_coefficient(std::span<const double> coeffs, int n, int m)
{
    check_order(n, m, kMaxPhiOrder);
    // power[j] = coefficient of x^j in C(x)^k, built up k = 1..m.
    auto c = [&](int h) {
        return h >= 1 && static_cast<std::size_t>(h) <= coeffs.size() ? coeffs[h - 1] : 0.0;
    };
    std::vector<double> power(static_cast<std::size_t>(n + 1), 0.0);
    for (int j = 1; j <= n; ++j) power[j] = c(j);
    for (int k = 2; k <= m; ++k) {
        std::vector<double> next(power.size(), 0.0);
        for (int j = k; j <= n; ++j) {
            double sum = 0.0;
            for (int h = 1; h <= j - (k - 1); ++h) sum += c(h) * power[j - h];
            next[j] = sum;
        }
        power.swap(next);
    }
    return power[n];
}

PhiTable PhiTable::build(const ValidatedCoupling& coupling, int max_order)
{
    if (max_order < 0 || max_order > kMaxPhiOrder)
        throw Error(ErrorKind::OutOfRange,
                    "phi table order must lie in [0, " + std::to_string(kMaxPhiOrder) + "]");
    const CouplingSpec& spec = coupling.spec();
    const auto size = static_cast<std::size_t>(max_order) * (max_order + 1) / 2;
    std::vector<double> b(size, 0.0);
    auto at = [&](int n, int m) -> double& {
        return b[static_cast<std::size_t>((n - 1) * n / 2 + (m - 1))];
    };

    switch (spec.kind) {
    case CouplingKind::Flat: break;
    case CouplingKind::Sinusoidal: {
        double v = 1.0;
        for (int n = 1; n <= max_order; ++n) {
            v *= -0.5 * spec.alpha;
            at(n, n) = v;
        }
        break;
    }
    case CouplingKind::ExpComb:
        for (int n = 1; n <= max_order; ++n) {
            const double weight = std::exp(-spec.beta * n);
            for (int m = 1; m <= n; ++m) at(n, m) = binomial(n - 1, m - 1) * weight;
        }
        break;
    case CouplingKind::CustomFourier: {
        // b(n, 1) = c_n;  b(n, m) = sum_h c_h b(n - h, m - 1)
        for (int n = 1; n <= max_order; ++n) {
            at(n, 1) = coupling.fourier_coefficient(n);
            for (int m = 2; m <= n; ++m) {
                double sum = 0.0;
                for (int h = 1; h <= n - m + 1; ++h) {
                    const double c = coupling.fourier_coefficient(h);
                    if (c != 0.0) sum += c * at(n - h, m - 1);
                }
                at(n, m) = sum;
            }
        }
        break;
    }
    }
    return PhiTable(spec, max_order, std::move(b));
}

double PhiTable::b(int n, int m) const
{
    check_order(n, m, max_order_);
    return b_[index(n, m)];
}

double PhiTable::phi(int n, double x) const
{
    if (n < 1 || n > max_order_)
        throw Error(ErrorKind::OutOfRange,
                    "phi order " + std::to_string(n) + " exceeds table capacity " +
                        std::to_string(max_order_));
    switch (spec_.kind) {
    case CouplingKind::Flat: return 0.0;
    case CouplingKind::Sinusoidal: return scaled_power(-0.5 * spec_.alpha * x, n);
    case CouplingKind::ExpComb: return std::exp(-spec_.beta * n) * laguerre_phi(n, x);
    case CouplingKind::CustomFourier: {
        double sum = 0.0;
        double term = 1.0;
        for (int m = 1; m <= n; ++m) {
            term *= -x / m;
            sum += b_[index(n, m)] * term;
        }
        return sum;
    }
    }
    return 0.0;
}

double phi(const ModelParams& params, int n, double x)
{
    if (n < 1 || n > kMaxPhiOrder)
        throw Error(ErrorKind::OutOfRange,
                    "phi order must lie in [1, " + std::to_string(kMaxPhiOrder) + "]");
    const CouplingSpec& spec = params.coupling.spec();
    switch (spec.kind) {
    case CouplingKind::Flat: return 0.0;
    case CouplingKind::Sinusoidal: return scaled_power(-0.5 * spec.alpha * x, n);
    case CouplingKind::ExpComb: return std::exp(-spec.beta * n) * laguerre_phi(n, x);
    case CouplingKind::CustomFourier: break;
    }
    return PhiTable::build(params.coupling, n).phi(n, x);
}

} // namespace hnm
