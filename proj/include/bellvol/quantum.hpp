#pragma once

// Two-qubit states and projective spin measurements, used to produce correlation
// points that quantum mechanics actually attains.

#include "bellvol/membership.hpp"
#include "bellvol/random.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace bellvol {

class BlochDirection {
public:
    /// Throws DomainError unless |v| = 1 within 1e-12.
    BlochDirection(double x, double y, double z);
    explicit BlochDirection(const Eigen::Vector3d& v);

    /// Normalizes any nonzero vector.
    static BlochDirection normalized(const Eigen::Vector3d& v);

    const Eigen::Vector3d& vector() const noexcept { return v_; }
    BlochDirection operator-() const { return BlochDirection(Eigen::Vector3d(-v_)); }

    /// v . sigma
    Eigen::Matrix2cd observable() const;

private:
    Eigen::Vector3d v_;
};

class TwoQubitState {
public:
    /// Throws DomainError unless rho is Hermitian, has unit trace, and is positive semidefinite
    /// (Hermiticity and trace within 1e-12, eigenvalues >= -1e-10).
    explicit TwoQubitState(const Eigen::Matrix4cd& rho);

    static TwoQubitState pure(const Eigen::Vector4cd& psi);
    /// lambda rho1 + (1 - lambda) rho2, lambda in [0, 1].
    static TwoQubitState mixture(double lambda, const TwoQubitState& rho1, const TwoQubitState& rho2);

    const Eigen::Matrix4cd& matrix() const noexcept { return rho_; }
    double purity() const;

private:
    Eigen::Matrix4cd rho_;
};

struct MeasurementSettings {
    BlochDirection a0, a1, b0, b1;
};

/// tr(rho (a.sigma ⊗ b.sigma)).
double correlation_expectation(const TwoQubitState& rho, const BlochDirection& a,
                               const BlochDirection& b);

CorrelationPoint correlations(const TwoQubitState& rho, const MeasurementSettings& m);

/// (|01> - |10>)/sqrt 2; its correlations are E(a, b) = -a . b.
TwoQubitState singlet();

/// Settings reaching CHSH value 2 sqrt 2 on the singlet at (i, j) = (1, 1).
MeasurementSettings chsh_optimal_settings();

struct QuantumSample {
    TwoQubitState state;
    MeasurementSettings settings;
    CorrelationPoint point;
};

/// Random pure state (normalized complex Gaussian 4-vector) and four random unit directions
/// (normalized Gaussian 3-vectors), all drawn from `rng`.
QuantumSample sample_quantum(CounterStream& rng);
CorrelationPoint sample_quantum_point(CounterStream& rng);

}  // namespace bellvol
