#pragma once

#include "hnm/coupling.hpp"
#include "hnm/trace.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace hnm {

/// Column-vectorised qubit operators use the ordering (r00, r01, r10, r11) throughout.
/// |0> is the excited level (H_q = |0><0|), |1> the ground level.
using Superoperator = Eigen::Matrix4cd;
using OperatorVector = Eigen::Vector4cd;

inline constexpr double kStateTolerance = 1e-12;

/// Hermitian, unit-trace, positive semidefinite 2x2 matrix (tolerance 1e-12).
class DensityMatrix {
public:
    /// Throws InvalidState if the invariants fail.
    static DensityMatrix make(complex r00, complex r01, complex r10, complex r11);
    static DensityMatrix from_vector(const OperatorVector& v);

    static DensityMatrix excited() { return make(1.0, 0.0, 0.0, 0.0); }
    static DensityMatrix ground() { return make(0.0, 0.0, 0.0, 1.0); }

    complex operator()(int row, int col) const noexcept { return e_[2 * row + col]; }
    OperatorVector vectorized() const { return {e_[0], e_[1], e_[2], e_[3]}; }
    Eigen::Matrix2cd matrix() const;

private:
    explicit DensityMatrix(std::array<complex, 4> e) : e_(e) {}
    std::array<complex, 4> e_;
};

/// rho(t) = [[|a|^2 r00, a r01], [a* r10, r11 + (1 - |a|^2) r00]].
/// Throws InvalidAmplitude if |a| > 1 + 1e-9.
DensityMatrix evolve(const DensityMatrix& rho0, complex a);

struct RateFunctions {
    TimeGrid grid;
    std::vector<double> gamma;
    std::vector<double> eps;
};

/// gamma = -2 d ln|a| / dt and eps = -d arg a / dt by second-order finite differences
/// (central inside, one-sided at the ends). Throws AmplitudeNearZero when |a| <= 1e-10
/// anywhere and PhaseJump when the phase moves by more than pi/2 in one step.
RateFunctions extract_rates(const AmplitudeTrace& trace);

/// -i eps ad_{H_q} - gamma L with L(rho) = -s_- rho s_+ + {s_+ s_-, rho} / 2.
Superoperator gkls_generator(double gamma, double eps);

/// The qubit map for a given survival amplitude; equals
/// exp(ln|a|^2 L + i arg(a) ad_{H_q}). Throws InvalidAmplitude unless 0 < |a| <= 1 + 1e-9.
Superoperator channel_superoperator(complex a);

/// Choi matrix sum_ij |i><j| (x) Lambda(|i><j|) of the map above, without range checks
/// (|a| > 1 yields a non-positive matrix). Rows/cols indexed 2 i + k.
Eigen::Matrix4cd choi_matrix(complex a);

double min_eigenvalue(const Eigen::Matrix4cd& hermitian);

/// Largest ||d rho/dt - gkls_generator(gamma_k, eps_k) rho_k||_F over interior grid points,
/// with d rho/dt by central differences and the rates from extract_rates.
/// For periodic couplings points within 2 dt of a delay n T are skipped.
double master_residual(const ModelParams& params, const AmplitudeTrace& trace,
                       const DensityMatrix& rho0);

} // namespace hnm
