#include "bellvol/quantum.hpp"

#include "bellvol/errors.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <random>

namespace bellvol {

namespace {

using cd = std::complex<double>;

constexpr double kUnitTol = 1e-12;
constexpr double kPsdTol = 1e-10;

const std::array<Eigen::Matrix2cd, 3>& pauli() {
    static const std::array<Eigen::Matrix2cd, 3> s = [] {
        Eigen::Matrix2cd x, y, z;
        x << 0, 1, 1, 0;
        y << 0, cd(0, -1), cd(0, 1), 0;
        z << 1, 0, 0, -1;
        return std::array<Eigen::Matrix2cd, 3>{x, y, z};
    }();
    return s;
}

// Box-Muller on two stream outputs; avoids depending on the standard library's
// distribution algorithms so samples are reproducible across toolchains.
double standard_normal(CounterStream& rng) {
    const double u1 = 1.0 - rng.uniform01();  // (0, 1]
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

BlochDirection random_direction(CounterStream& rng) {
    for (;;) {
        Eigen::Vector3d v(standard_normal(rng), standard_normal(rng), standard_normal(rng));
        if (v.norm() > 1e-8) return BlochDirection::normalized(v);
    }
}

}  // namespace

BlochDirection::BlochDirection(double x, double y, double z) : BlochDirection(Eigen::Vector3d(x, y, z)) {}

BlochDirection::BlochDirection(const Eigen::Vector3d& v) : v_(v) {
    if (!(std::abs(v_.norm() - 1.0) <= kUnitTol))
        throw DomainError("Bloch direction must have unit norm");
}

BlochDirection BlochDirection::normalized(const Eigen::Vector3d& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw DomainError("cannot normalize a zero vector");
    return BlochDirection(Eigen::Vector3d(v / n));
}

Eigen::Matrix2cd BlochDirection::observable() const {
    const auto& s = pauli();
    return v_.x() * s[0] + v_.y() * s[1] + v_.z() * s[2];
}

TwoQubitState::TwoQubitState(const Eigen::Matrix4cd& rho) : rho_(rho) {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kUnitTol)
        throw DomainError("density matrix is not Hermitian");
    if (std::abs(rho_.trace() - cd(1.0, 0.0)) > kUnitTol)
        throw DomainError("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw DomainError("density matrix is not positive semidefinite");
}

TwoQubitState TwoQubitState::pure(const Eigen::Vector4cd& psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) throw DomainError("state vector is zero");
    const Eigen::Vector4cd u = psi / n;
    Eigen::Matrix4cd rho = u * u.adjoint();
    // Remove rounding asymmetry before validation.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return TwoQubitState(rho);
}

TwoQubitState TwoQubitState::mixture(double lambda, const TwoQubitState& r1, const TwoQubitState& r2) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("mixing weight must lie in [0, 1]");
    return TwoQubitState(lambda * r1.rho_ + (1.0 - lambda) * r2.rho_);
}

double TwoQubitState::purity() const { return (rho_ * rho_).trace().real(); }

double correlation_expectation(const TwoQubitState& rho, const BlochDirection& a, const BlochDirection& b) {
    const Eigen::Matrix4cd ab = Eigen::kroneckerProduct(a.observable(), b.observable()).eval();
    const cd e = (rho.matrix() * ab).trace();
    // The imaginary part is rounding noise of order 1e-16 for a Hermitian product.
    return std::clamp(e.real(), -1.0, 1.0);
}

CorrelationPoint correlations(const TwoQubitState& rho, const MeasurementSettings& m) {
    return CorrelationPoint(correlation_expectation(rho, m.a0, m.b0), correlation_expectation(rho, m.a0, m.b1),
                            correlation_expectation(rho, m.a1, m.b0), correlation_expectation(rho, m.a1, m.b1));
}

TwoQubitState singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd psi(0.0, r, -r, 0.0);  // basis |00>, |01>, |10>, |11>
    return TwoQubitState::pure(psi);
}

MeasurementSettings chsh_optimal_settings() {
    const double r = 1.0 / std::sqrt(2.0);
    return MeasurementSettings{
        BlochDirection(0.0, 0.0, 1.0),
        BlochDirection(1.0, 0.0, 0.0),
        BlochDirection::normalized(Eigen::Vector3d(-r, 0.0, -r)),
        BlochDirection::normalized(Eigen::Vector3d(r, 0.0, -r)),
    };
}

QuantumSample sample_quantum(CounterStream& rng) {
    Eigen::Vector4cd psi;
    for (int k = 0; k < 4; ++k) {
        const double re = standard_normal(rng);
        const double im = standard_normal(rng);
        psi[k] = cd(re, im);
    }
    TwoQubitState state = TwoQubitState::pure(psi);
    const BlochDirection a0 = random_direction(rng);
    const BlochDirection a1 = random_direction(rng);
    const BlochDirection b0 = random_direction(rng);
    const BlochDirection b1 = random_direction(rng);
    MeasurementSettings m{a0, a1, b0, b1};
    const CorrelationPoint p = correlations(state, m);
    return QuantumSample{std::move(state), m, p};
}

CorrelationPoint sample_quantum_point(CounterStream& rng) { return sample_quantum(rng).point; }

}  // namespace bellvol
