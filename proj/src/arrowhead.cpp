#include "hnm/arrowhead.hpp"

#include "hnm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hnm {

namespace {

struct Secular {
    double head;
    const std::vector<double>& poles;     // active poles
    const std::vector<double>& squared;   // active c_k^2

    // f and f' at E = poles[a] + delta
    void eval(std::size_t a, double delta, double& f, double& df) const
    {
        f = (poles[a] - head) + delta;
        df = 1.0;
        for (std::size_t l = 0; l < poles.size(); ++l) {
            const double inv = 1.0 / ((poles[a] - poles[l]) + delta);
            const double term = squared[l] * inv;
            f -= term;
            df += term * inv;
        }
    }
};

// Root of the increasing function f on (lo, hi) in the offset variable.
double find_root(const Secular& s, std::size_t anchor, double lo, double hi)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        double f, df;
        s.eval(anchor, x, f, df);
        if (f == 0.0) return x;
        if (f > 0.0) hi = x; else lo = x;
        if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi))) break;
        double next = x - f / df;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    return x;
}

} // namespace

ArrowheadSpectrum ArrowheadSpectrum::solve(double head, std::span<const double> poles,
                                           std::span<const double> couplings)
{
    if (poles.size() != couplings.size())
        throw Error(ErrorKind::BadParameter, "arrowhead: poles and couplings differ in length");
    for (std::size_t k = 0; k < poles.size(); ++k) {
        if (!std::isfinite(poles[k]) || !std::isfinite(couplings[k]) || couplings[k] < 0.0)
            throw Error(ErrorKind::BadParameter, "arrowhead: couplings must be finite and >= 0");
        if (k > 0 && !(poles[k] > poles[k - 1]))
            throw Error(ErrorKind::BadParameter, "arrowhead: poles must be strictly increasing");
    }

    ArrowheadSpectrum out;
    out.n_poles_ = poles.size();
    out.poles_.assign(poles.begin(), poles.end());
    out.coupling_.assign(couplings.begin(), couplings.end());

    std::vector<std::size_t> active;
    std::vector<double> p, c2;
    double norm2 = 0.0;
    for (std::size_t k = 0; k < poles.size(); ++k) {
        if (couplings[k] == 0.0) continue;
        active.push_back(k);
        p.push_back(poles[k]);
        c2.push_back(couplings[k] * couplings[k]);
        norm2 += c2.back();
    }
    const std::size_t m = active.size();
    out.anchor_.resize(m + 1);
    out.offset_.resize(m + 1);
    out.weight_.resize(m + 1);

    if (m == 0) {
        // Only the head: a single eigenvalue, anchored at an artificial pole.
        out.poles_.push_back(head);
        out.coupling_.push_back(0.0);
        out.anchor_[0] = out.poles_.size() - 1;
        out.offset_[0] = 0.0;
        out.weight_[0] = 1.0;
        return out;
    }

    const Secular secular{head, p, c2};
    const double spread = std::sqrt(norm2) * (1.0 + 1e-12) + 1e-300;
    std::vector<std::size_t> local_anchor(m + 1);

    for (std::size_t j = 0; j <= m; ++j) {
        std::size_t a;
        double lo, hi;
        if (j == 0) {
            a = 0;
            lo = std::min(head - p[0], 0.0) - spread;
            hi = 0.0;
        } else if (j == m) {
            a = m - 1;
            lo = 0.0;
            hi = std::max(head - p[m - 1], 0.0) + spread;
        } else {
            const double half = 0.5 * (p[j] - p[j - 1]);
            double f, df;
            secular.eval(j - 1, half, f, df);
            if (f >= 0.0) {
                a = j - 1;
                lo = 0.0;
                hi = half;
            } else {
                a = j;
                lo = -half;
                hi = 0.0;
            }
        }
        local_anchor[j] = a;
        out.anchor_[j] = active[a];
        out.offset_[j] = find_root(secular, a, lo, hi);
    }

    // p_k - E_j in the active index space
    auto pole_minus_eig = [&](std::size_t k, std::size_t j) {
        return (p[k] - p[local_anchor[j]]) - out.offset_[j];
    };

    // Recompute couplings: c_k^2 = -prod_j (p_k - E_j) / prod_{l != k} (p_k - p_l),
    // with factors paired so the running product stays O(1).
    for (std::size_t k = 0; k < m; ++k) {
        double prod = pole_minus_eig(k, k) * pole_minus_eig(k, k + 1);
        for (std::size_t j = 0; j < k; ++j) prod *= pole_minus_eig(k, j) / (p[k] - p[j]);
        for (std::size_t j = k + 2; j <= m; ++j) prod *= pole_minus_eig(k, j) / (p[k] - p[j - 1]);
        const double squared = -prod;
        out.coupling_[active[k]] = squared > 0.0 ? std::sqrt(squared) : std::sqrt(c2[k]);
    }

    for (std::size_t j = 0; j <= m; ++j) {
        double norm = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double comp = out.coupling_[active[k]] / out.gap(j, active[k]);
            norm += comp * comp;
        }
        out.weight_[j] = 1.0 / norm;
    }
    return out;
}

} // namespace hnm
