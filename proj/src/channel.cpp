#include "hnm/channel.hpp"

#include "hnm/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hnm {

namespace {

constexpr double kNearZeroAmplitude = 1e-10;
constexpr double kMaxPhaseStep = 0.5 * std::numbers::pi;

Eigen::Matrix2cd unit(int row, int col)
{
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(row, col) = 1.0;
    return m;
}

OperatorVector vec(const Eigen::Matrix2cd& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

// Second-order derivative estimate at every sample.
std::vector<double> differentiate(const std::vector<double>& f, double dt)
{
    const std::size_t n = f.size();
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dt);
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * dt);
    return d;
}

} // namespace

DensityMatrix DensityMatrix::make(complex r00, complex r01, complex r10, complex r11)
{
    const double tol = kStateTolerance;
    std::ostringstream why;
    if (std::abs(r10 - std::conj(r01)) > tol || std::abs(r00.imag()) > tol ||
        std::abs(r11.imag()) > tol)
        why << "not Hermitian";
    else if (std::abs(r00.real() + r11.real() - 1.0) > tol)
        why << "trace " << r00.real() + r11.real() << " != 1";
    else if (r00.real() < -tol || r11.real() < -tol ||
             r00.real() * r11.real() - std::norm(r01) < -tol)
        why << "not positive semidefinite";
    if (!why.str().empty()) throw Error(ErrorKind::InvalidState, "density matrix " + why.str());
    return DensityMatrix({r00, r01, r10, r11});
}

DensityMatrix DensityMatrix::from_vector(const OperatorVector& v)
{
    return make(v(0), v(1), v(2), v(3));
}

Eigen::Matrix2cd DensityMatrix::matrix() const
{
    Eigen::Matrix2cd m;
    m << e_[0], e_[1], e_[2], e_[3];
    return m;
}

DensityMatrix evolve(const DensityMatrix& rho0, complex a)
{
    if (!(std::abs(a) <= 1.0 + kAmplitudeSlack))
        throw Error(ErrorKind::InvalidAmplitude, "survival amplitude exceeds 1 in modulus");
    const double p = std::norm(a);
    return DensityMatrix::make(p * rho0(0, 0), a * rho0(0, 1), std::conj(a) * rho0(1, 0),
                               rho0(1, 1) + (1.0 - p) * rho0(0, 0));
}

RateFunctions extract_rates(const AmplitudeTrace& trace)
{
    const TimeGrid& grid = trace.grid();
    if (trace.size() < 3)
        throw Error(ErrorKind::BadParameter, "rate extraction needs at least three samples");
    std::vector<double> log_mag(trace.size()), phase(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const double mag = std::abs(trace[k]);
        if (!(mag > kNearZeroAmplitude)) {
            std::ostringstream msg;
            msg << "|a| = " << mag << " at t = " << grid.time(k) << "; rates undefined";
            throw Error(ErrorKind::AmplitudeNearZero, msg.str());
        }
        log_mag[k] = std::log(mag);
        if (k == 0) {
            phase[k] = std::arg(trace[k]);
            continue;
        }
        const double step = std::arg(trace[k] / trace[k - 1]);
        if (std::abs(step) > kMaxPhaseStep) {
            std::ostringstream msg;
            msg << "phase changes by " << step << " between t = " << grid.time(k - 1)
                << " and t = " << grid.time(k) << "; grid too coarse";
            throw Error(ErrorKind::PhaseJump, msg.str());
        }
        phase[k] = phase[k - 1] + step;
    }

    RateFunctions rates{grid, differentiate(log_mag, grid.dt()), differentiate(phase, grid.dt())};
    for (double& g : rates.gamma) g *= -2.0;
    for (double& e : rates.eps) e = -e;
    return rates;
}

Superoperator gkls_generator(double gamma, double eps)
{
    const Eigen::Matrix2cd h = unit(0, 0);           // H_q = s_+ s_-
    const Eigen::Matrix2cd lower = unit(1, 0);       // s_-
    const Eigen::Matrix2cd raise = unit(0, 1);       // s_+
    const complex i(0.0, 1.0);
    Superoperator g;
    for (int col = 0; col < 4; ++col) {
        const Eigen::Matrix2cd rho = unit(col / 2, col % 2);
        const Eigen::Matrix2cd commutator = h * rho - rho * h;
        const Eigen::Matrix2cd lindblad =
            -lower * rho * raise + 0.5 * (raise * lower * rho + rho * raise * lower);
        g.col(col) = vec(-i * eps * commutator - gamma * lindblad);
    }
    return g;
}

Superoperator channel_superoperator(complex a)
{
    const double mag = std::abs(a);
    if (!(mag > 0.0) || !(mag <= 1.0 + kAmplitudeSlack))
        throw Error(ErrorKind::InvalidAmplitude,
                    "channel superoperator needs 0 < |a| <= 1 (use evolve for a = 0)");
    const double p = mag * mag;
    Superoperator m = Superoperator::Zero();
    m(0, 0) = p;
    m(1, 1) = a;
    m(2, 2) = std::conj(a);
    m(3, 0) = 1.0 - p;
    m(3, 3) = 1.0;
    return m;
}

Eigen::Matrix4cd choi_matrix(complex a)
{
    const double p = std::norm(a);
    Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            // image of |i><j| under the map, without the state checks of evolve
            Eigen::Matrix2cd image = Eigen::Matrix2cd::Zero();
            if (i == 0 && j == 0) {
                image(0, 0) = p;
                image(1, 1) = 1.0 - p;
            } else if (i == 0 && j == 1) {
                image(0, 1) = a;
            } else if (i == 1 && j == 0) {
                image(1, 0) = std::conj(a);
            } else {
                image(1, 1) = 1.0;
            }
            choi.block<2, 2>(2 * i, 2 * j) = image;
        }
    return choi;
}

double min_eigenvalue(const Eigen::Matrix4cd& hermitian)
{
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(hermitian,
                                                                 Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double master_residual(const ModelParams& params, const AmplitudeTrace& trace,
                       const DensityMatrix& rho0)
{
    const RateFunctions rates = extract_rates(trace);
    const TimeGrid& grid = trace.grid();
    const double dt = grid.dt();

    std::vector<OperatorVector> rho(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) rho[k] = evolve(rho0, trace[k]).vectorized();

    const bool periodic = params.coupling.is_periodic();
    const double period = params.coupling.period();
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < trace.size(); ++k) {
        const double t = grid.time(k);
        if (periodic) {
            const double nearest = std::round(t / period);
            if (nearest >= 1.0 && std::abs(t - nearest * period) <= 2.0 * dt * (1.0 + 1e-9))
                continue;
        }
        const OperatorVector derivative = (rho[k + 1] - rho[k - 1]) / (2.0 * dt);
        const OperatorVector rhs = gkls_generator(rates.gamma[k], rates.eps[k]) * rho[k];
        worst = std::max(worst, (derivative - rhs).norm());
    }
    return worst;
}

} // namespace hnm
