#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hnm {

/// Eigen-decomposition of the real symmetric arrowhead matrix
///
///     [ head   c^T      ]
///     [ c      diag(p)  ]
///
/// with strictly increasing poles p and couplings c >= 0. Modes with c_k = 0 are
/// deflated (eigenpair (p_k, e_k)). The remaining eigenvalues interlace the active
/// poles and solve the secular equation
///
///     E - head = sum_k c_k^2 / (E - p_k).
///
/// Each eigenvalue is stored as pole + offset so that E_j - p_k keeps full relative
/// accuracy, and the couplings are recomputed from the computed eigenvalues
/// (Gu & Eisenstat) so the eigenvectors are orthogonal to working precision.
/// Eigenvector j of the active block is proportional to (1, c_k / (E_j - p_k)).
class ArrowheadSpectrum {
public:
    static ArrowheadSpectrum solve(double head, std::span<const double> poles,
                                   std::span<const double> couplings);

    /// Number of non-deflated eigenvalues (active poles + 1).
    std::size_t size() const noexcept { return anchor_.size(); }
    std::size_t pole_count() const noexcept { return n_poles_; }

    double eigenvalue(std::size_t j) const noexcept { return poles_[anchor_[j]] + offset_[j]; }

    /// E_j - p_k, accurate even when E_j sits next to p_k.
    double gap(std::size_t j, std::size_t k) const noexcept
    {
        return (poles_[anchor_[j]] - poles_[k]) + offset_[j];
    }

    /// Squared first component of normalised eigenvector j.
    double head_weight(std::size_t j) const noexcept { return weight_[j]; }

    /// Recomputed coupling of pole k (zero for deflated poles).
    double coupling(std::size_t k) const noexcept { return coupling_[k]; }
    bool deflated(std::size_t k) const noexcept { return coupling_[k] == 0.0; }

private:
    std::size_t n_poles_ = 0;
    std::vector<double> poles_;
    std::vector<double> coupling_;
    std::vector<std::size_t> anchor_;
    std::vector<double> offset_;
    std::vector<double> weight_;
};

} // namespace hnm
