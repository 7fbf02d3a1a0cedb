#include "bellvol/errors.hpp"
#include "bellvol/membership.hpp"
#include "bellvol/quantum.hpp"

#include <gtest/gtest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <random>

using namespace bellvol;
using cd = std::complex<double>;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

Eigen::Vector3d random_unit(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    Eigen::Vector3d v(n(g), n(g), n(g));
    return v.normalized();
}

Eigen::Matrix2cd random_su2(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    Eigen::Vector4d q(n(g), n(g), n(g), n(g));
    q.normalize();
    Eigen::Matrix2cd u;
    u << cd(q[0], q[3]), cd(q[2], q[1]), cd(-q[2], q[1]), cd(q[0], -q[3]);
    return u;
}

// Rotation R with U (v . sigma) U^dagger = (R v) . sigma.
Eigen::Matrix3d rotation_of(const Eigen::Matrix2cd& u) {
    const BlochDirection axes[3] = {BlochDirection(1, 0, 0), BlochDirection(0, 1, 0), BlochDirection(0, 0, 1)};
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = 0.5 * (axes[i].observable() * u * axes[j].observable() * u.adjoint()).trace().real();
    return r;
}

}  // namespace

TEST(BlochDirection, Validation) {
    EXPECT_NO_THROW(BlochDirection(0, 0, 1));
    EXPECT_THROW(BlochDirection(0, 0, 1.001), DomainError);
    EXPECT_THROW(BlochDirection::normalized(Eigen::Vector3d::Zero()), DomainError);
    const auto d = BlochDirection::normalized(Eigen::Vector3d(3, 4, 0));
    EXPECT_NEAR(d.vector().norm(), 1.0, 1e-15);
    EXPECT_NEAR(d.vector().x(), 0.6, 1e-15);
    EXPECT_EQ((-d).vector(), -d.vector());
}

TEST(TwoQubitState, Validation) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity() / 4.0;
    EXPECT_NO_THROW(TwoQubitState{rho});
    Eigen::Matrix4cd bad = rho;
    bad(0, 1) = cd(0.1, 0.0);
    EXPECT_THROW(TwoQubitState{bad}, DomainError);  // not Hermitian
    EXPECT_THROW(TwoQubitState{Eigen::Matrix4cd(rho * 2.0)}, DomainError);
    Eigen::Matrix4cd neg = Eigen::Matrix4cd::Zero();
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(TwoQubitState{neg}, DomainError);
    EXPECT_THROW(TwoQubitState::pure(Eigen::Vector4cd::Zero()), DomainError);
    EXPECT_THROW(TwoQubitState::mixture(1.5, singlet(), singlet()), DomainError);
}

TEST(CorrelationExpectation, Examples) {
    const auto s = singlet();
    const BlochDirection z(0, 0, 1), x(1, 0, 0);
    EXPECT_NEAR(correlation_expectation(s, z, z), -1.0, 1e-12);
    EXPECT_NEAR(correlation_expectation(s, x, x), -1.0, 1e-12);
    const auto zz = TwoQubitState::pure(Eigen::Vector4cd(1, 0, 0, 0));
    EXPECT_NEAR(correlation_expectation(zz, z, z), 1.0, 1e-12);
    const auto diag = BlochDirection::normalized(Eigen::Vector3d(1, 0, 1));
    EXPECT_NEAR(correlation_expectation(s, z, diag), -r2, 1e-12);
}

TEST(CorrelationExpectation, TraceIsReal) {
    std::mt19937_64 g(4);
    CounterStream rng(4);
    for (int k = 0; k < 200; ++k) {
        const auto sample = sample_quantum(rng);
        const BlochDirection a(random_unit(g)), b(random_unit(g));
        const Eigen::Matrix4cd ab = Eigen::kroneckerProduct(a.observable(), b.observable()).eval();
        EXPECT_LT(std::abs((sample.state.matrix() * ab).trace().imag()), 1e-12);
        const double e = correlation_expectation(sample.state, a, b);
        EXPECT_GE(e, -1.0);
        EXPECT_LE(e, 1.0);
    }
}

TEST(Singlet, PureAndAntiCorrelated) {
    const auto s = singlet();
    EXPECT_NEAR(s.matrix().trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(s.purity(), 1.0, 1e-12);
    EXPECT_NEAR(correlation_expectation(s, BlochDirection(1, 0, 0), BlochDirection(0, 1, 0)), 0.0, 1e-12);
    std::mt19937_64 g(1);
    for (int k = 0; k < 1000; ++k) {
        const Eigen::Vector3d a = random_unit(g), b = random_unit(g);
        ASSERT_NEAR(correlation_expectation(s, BlochDirection(a), BlochDirection(b)), -a.dot(b), 1e-12);
    }
}

TEST(ChshOptimal, ReachesTsirelsonBound) {
    const auto m = chsh_optimal_settings();
    EXPECT_NEAR((m.a0.vector() - Eigen::Vector3d(0, 0, 1)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((m.a1.vector() - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((m.b0.vector() + Eigen::Vector3d(r2, 0, r2)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((m.b1.vector() + Eigen::Vector3d(-r2, 0, r2)).norm(), 0.0, 1e-15);

    const CorrelationPoint p = correlations(singlet(), m);
    const double expected[4] = {r2, r2, r2, -r2};
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(p[k], expected[k], 1e-12);
    EXPECT_NEAR(chsh_value(p, 1, 1), 2 * std::sqrt(2.0), 1e-12);
    EXPECT_LE(std::abs(in_quantum_arcsin(p).margin), 1e-9);
}

TEST(Sampler, HundredThousandPointsAreQuantum) {
    CounterStream rng(2024);
    int outside_local = 0;
    double worst_margin = 1e9, worst_chsh = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const CorrelationPoint p = sample_quantum_point(rng);
        worst_margin = std::min(worst_margin, in_quantum_arcsin(p).margin);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) worst_chsh = std::max(worst_chsh, std::abs(chsh_value(p, i, j)));
        outside_local += !in_local(p).inside;
    }
    EXPECT_GE(worst_margin, -1e-9);
    EXPECT_LE(worst_chsh, 2 * std::sqrt(2.0) + 1e-9);
    EXPECT_GT(outside_local, 0);
    std::cout << "[ info ] sampled points violating CHSH: " << outside_local << " of 100000\n";
}

TEST(Sampler, ReproducibleForSeed) {
    CounterStream a(5), b(5), c(6);
    for (int k = 0; k < 20; ++k) {
        const auto pa = sample_quantum_point(a);
        EXPECT_EQ(pa, sample_quantum_point(b));
        EXPECT_NE(pa, sample_quantum_point(c));
    }
}

TEST(Sampler, StatesArePureAndValid) {
    CounterStream rng(8);
    for (int k = 0; k < 100; ++k) {
        const auto s = sample_quantum(rng);
        EXPECT_NEAR(s.state.purity(), 1.0, 1e-12);
        EXPECT_NEAR(s.settings.a0.vector().norm(), 1.0, 1e-12);
    }
}

TEST(Invariants, MixingIsLinear) {
    CounterStream rng(12);
    std::mt19937_64 g(12);
    std::uniform_real_distribution<double> lam(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const auto s1 = sample_quantum(rng), s2 = sample_quantum(rng);
        const double l = lam(g);
        const auto mix = TwoQubitState::mixture(l, s1.state, s2.state);
        const CorrelationPoint pm = correlations(mix, s1.settings);
        const CorrelationPoint p1 = correlations(s1.state, s1.settings), p2 = correlations(s2.state, s1.settings);
        for (int q = 0; q < 4; ++q) ASSERT_NEAR(pm[q], l * p1[q] + (1 - l) * p2[q], 1e-12);
        EXPECT_LE(mix.purity(), 1.0 + 1e-12);
    }
}

TEST(Invariants, LocalUnitaryInvariance) {
    CounterStream rng(21);
    std::mt19937_64 g(21);
    for (int k = 0; k < 200; ++k) {
        const auto s = sample_quantum(rng);
        const Eigen::Matrix2cd ua = random_su2(g), ub = random_su2(g);
        const Eigen::Matrix4cd u = Eigen::kroneckerProduct(ua, ub).eval();
        Eigen::Matrix4cd rho = u * s.state.matrix() * u.adjoint();
        rho = 0.5 * (rho + rho.adjoint()).eval();
        const TwoQubitState moved(rho);
        const Eigen::Matrix3d ra = rotation_of(ua), rb = rotation_of(ub);
        const MeasurementSettings m{BlochDirection::normalized(ra * s.settings.a0.vector()),
                                    BlochDirection::normalized(ra * s.settings.a1.vector()),
                                    BlochDirection::normalized(rb * s.settings.b0.vector()),
                                    BlochDirection::normalized(rb * s.settings.b1.vector())};
        const CorrelationPoint before = s.point, after = correlations(moved, m);
        for (int q = 0; q < 4; ++q) ASSERT_NEAR(before[q], after[q], 1e-10);
    }
}
