#include "bellvol/errors.hpp"
#include "bellvol/membership.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

using namespace bellvol;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);
const CorrelationPoint kZero(0, 0, 0, 0);
const CorrelationPoint kTsirelson(r2, r2, r2, -r2);
const CorrelationPoint kPrBox(1, 1, 1, -1);
const CorrelationPoint kOnes(1, 1, 1, 1);

// Reference oracles written from a different angle: every CHSH-type functional is
// s . c with s in {+-1}^4 and an odd number of minus signs.
double worst_signed_functional(const CorrelationPoint& p, const std::function<double(double)>& f) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int mask = 0; mask < 16; ++mask) {
        int minus = 0;
        double v = 0.0;
        for (int k = 0; k < 4; ++k) {
            const bool neg = mask >> k & 1;
            minus += neg;
            v += (neg ? -1.0 : 1.0) * f(p[k]);
        }
        if (minus % 2 == 1) worst = std::max(worst, v);
    }
    return worst;
}

bool ref_local(const CorrelationPoint& p) { return worst_signed_functional(p, [](double x) { return x; }) <= 2.0; }
bool ref_tsirelson(const CorrelationPoint& p) {
    return worst_signed_functional(p, [](double x) { return x; }) <= 2.0 * std::sqrt(2.0);
}
bool ref_quantum(const CorrelationPoint& p) {
    return worst_signed_functional(p, [](double x) { return std::asin(x); }) <= std::numbers::pi;
}
bool ref_uffink(const CorrelationPoint& p) {
    const double a = std::pow(p[0] + p[3], 2) + std::pow(p[1] - p[2], 2);
    const double b = std::pow(p[0] - p[3], 2) + std::pow(p[1] + p[2], 2);
    return a <= 4.0 && b <= 4.0;
}

CorrelationPoint uniform_point(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return CorrelationPoint(u(g), u(g), u(g), u(g));
}

// The 2x2 correlation table under a relabeling: optional swap of A's settings, B's
// settings, the two parties, and sign flips of rows and columns.
CorrelationPoint relabel(const CorrelationPoint& p, int code) {
    std::array<std::array<double, 2>, 2> c{{{p(0, 0), p(0, 1)}, {p(1, 0), p(1, 1)}}};
    if (code & 1) std::swap(c[0], c[1]);
    if (code & 2) {
        std::swap(c[0][0], c[0][1]);
        std::swap(c[1][0], c[1][1]);
    }
    if (code & 4) std::swap(c[0][1], c[1][0]);
    if (code & 8) c[0] = {-c[0][0], -c[0][1]};
    if (code & 16) c[1] = {-c[1][0], -c[1][1]};
    if (code & 32) c[0][0] = -c[0][0], c[1][0] = -c[1][0];
    if (code & 64) c[0][1] = -c[0][1], c[1][1] = -c[1][1];
    return CorrelationPoint(c[0][0], c[0][1], c[1][0], c[1][1]);
}

}  // namespace

TEST(CorrelationPoint, RejectsValuesOutsideCube) {
    EXPECT_THROW(CorrelationPoint(1.2, 0, 0, 0), DomainError);
    EXPECT_THROW(CorrelationPoint(0, 0, 0, -1.0000001), DomainError);
    EXPECT_THROW(CorrelationPoint(std::nan(""), 0, 0, 0), DomainError);
    EXPECT_NO_THROW(CorrelationPoint(1, -1, 1, -1));
}

TEST(ChshValue, Examples) {
    EXPECT_DOUBLE_EQ(chsh_value(kPrBox, 1, 1), 4.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_DOUBLE_EQ(chsh_value(kZero, i, j), 0.0);
    EXPECT_DOUBLE_EQ(chsh_value(kOnes, 0, 0), 2.0);
}

TEST(ChshValue, RejectsBadIndex) {
    EXPECT_THROW(chsh_value(kZero, 2, 0), DomainError);
    EXPECT_THROW(chsh_value(kZero, 0, -1), DomainError);
}

TEST(Local, Examples) {
    auto r = in_local(kOnes);
    EXPECT_TRUE(r.inside);
    EXPECT_DOUBLE_EQ(r.margin, 0.0);
    EXPECT_FALSE(in_local(kTsirelson).inside);
    r = in_local(kZero);
    EXPECT_TRUE(r.inside);
    EXPECT_DOUBLE_EQ(r.margin, 2.0);
    EXPECT_EQ(r.region, Region::LocalC);
}

TEST(BoxL, Examples) {
    auto r = in_box_L(kPrBox);
    EXPECT_TRUE(r.inside);
    EXPECT_DOUBLE_EQ(r.margin, 0.0);
    r = in_box_L(std::array<double, 4>{1.2, 0, 0, 0});
    EXPECT_FALSE(r.inside);
    EXPECT_NEAR(r.margin, -0.2, 1e-15);
    r = in_box_L(CorrelationPoint(0.5, -0.5, 0.5, 0.5));
    EXPECT_TRUE(r.inside);
    EXPECT_DOUBLE_EQ(r.margin, 0.5);
}

TEST(Tsirelson, Examples) {
    auto r = in_tsirelson_T(kTsirelson);
    EXPECT_TRUE(r.inside);
    EXPECT_NEAR(r.margin, 0.0, 1e-15);
    EXPECT_FALSE(in_tsirelson_T(kPrBox).inside);
    EXPECT_NEAR(in_tsirelson_T(kZero).margin, 2.0 * std::sqrt(2.0), 1e-15);
}

TEST(Uffink, Examples) {
    auto r = in_uffink_U(CorrelationPoint(1, 0, 0, 1));
    EXPECT_TRUE(r.inside);
    EXPECT_DOUBLE_EQ(r.margin, 0.0);
    EXPECT_FALSE(in_uffink_U(kPrBox).inside);
    EXPECT_DOUBLE_EQ(in_uffink_U(kZero).margin, 4.0);
}

TEST(QuantumArcsin, Examples) {
    auto r = in_quantum_arcsin(kTsirelson);
    EXPECT_TRUE(r.inside);
    EXPECT_NEAR(r.margin, 0.0, 1e-12);
    r = in_quantum_arcsin(kPrBox);
    EXPECT_FALSE(r.inside);
    EXPECT_NEAR(r.margin, -std::numbers::pi, 1e-12);
    r = in_quantum_arcsin(kOnes);
    EXPECT_TRUE(r.inside);
    EXPECT_NEAR(r.margin, 0.0, 1e-12);
}

TEST(QuantumLandau, Examples) {
    auto r = in_quantum_landau(kZero);
    EXPECT_TRUE(r.inside);
    EXPECT_DOUBLE_EQ(r.margin, 2.0);
    r = in_quantum_landau(kPrBox);
    EXPECT_FALSE(r.inside);
    EXPECT_DOUBLE_EQ(r.margin, -2.0);
    r = in_quantum_landau(kTsirelson);
    EXPECT_TRUE(r.inside);
    EXPECT_NEAR(r.margin, 0.0, 1e-12);
}

TEST(QuantumSextic, Examples) {
    EXPECT_TRUE(in_quantum_sextic(kZero).inside);
    EXPECT_TRUE(in_quantum_sextic(kTsirelson).inside);
    EXPECT_FALSE(in_quantum_sextic(kPrBox).inside);
}

TEST(QuantumForms, DispatchMatchesDirectCalls) {
    const CorrelationPoint p(0.3, -0.6, 0.8, 0.1);
    EXPECT_EQ(in_quantum(p, QuantumForm::Arcsin).margin, in_quantum_arcsin(p).margin);
    EXPECT_EQ(in_quantum(p, QuantumForm::Landau).margin, in_quantum_landau(p).margin);
    EXPECT_EQ(in_quantum(p, QuantumForm::Sextic).margin, in_quantum_sextic(p).margin);
    EXPECT_EQ(in_region(p, Region::QuantumQ).margin, in_quantum_arcsin(p).margin);
}

TEST(Profile, Examples) {
    const auto zero = membership_profile(kZero);
    for (const auto& [label, r] : zero.entries()) EXPECT_TRUE(r.inside) << label;

    const auto t = membership_profile(kTsirelson);
    EXPECT_FALSE(t.at(Region::LocalC).inside);
    EXPECT_TRUE(t.at(Region::QuantumQ).inside);
    EXPECT_TRUE(t.at(Region::UffinkU).inside);
    EXPECT_TRUE(t.at(Region::TsirelsonT).inside);
    EXPECT_TRUE(t.at(Region::NoSignalingL).inside);

    const auto pr = membership_profile(kPrBox);
    EXPECT_FALSE(pr.at(Region::LocalC).inside);
    EXPECT_FALSE(pr.at(Region::QuantumQ).inside);
    EXPECT_FALSE(pr.at(Region::UffinkU).inside);
    EXPECT_FALSE(pr.at(Region::TsirelsonT).inside);
    EXPECT_TRUE(pr.at(Region::NoSignalingL).inside);
    EXPECT_EQ(pr.entries().size(), 7u);
}

TEST(Regions, NamesRoundTrip) {
    for (Region r : {Region::LocalC, Region::QuantumQ, Region::TsirelsonT, Region::UffinkU, Region::NoSignalingL}) {
        EXPECT_EQ(parse_region(region_symbol(r)), r);
        EXPECT_EQ(parse_region(region_name(r)), r);
    }
    EXPECT_THROW(parse_region("X"), DomainError);
}

TEST(Tolerance, ClosedSetsWithConfigurableSlack) {
    const CorrelationPoint just_out(0.5, 0.5, 0.5, -0.5 - 5e-13);  // CHSH value 2 + 5e-13
    EXPECT_LT(in_local(just_out).margin, 0.0);
    EXPECT_TRUE(in_local(just_out).inside);
    const CorrelationPoint out(0.5, 0.5, 0.5, -0.5 - 1e-9);
    EXPECT_FALSE(in_local(out).inside);
    EXPECT_TRUE(in_local(out, 1e-8).inside);
}

TEST(Oracles, AgreeWithReferenceFormulas) {
    std::mt19937_64 g(7);
    for (int k = 0; k < 200000; ++k) {
        const CorrelationPoint p = uniform_point(g);
        const auto prof = membership_profile(p);
        auto away = [](const MembershipResult& r) { return std::abs(r.margin) > 1e-9; };
        if (away(prof.local)) ASSERT_EQ(prof.local.inside, ref_local(p));
        if (away(prof.tsirelson)) ASSERT_EQ(prof.tsirelson.inside, ref_tsirelson(p));
        if (away(prof.quantum_arcsin)) ASSERT_EQ(prof.quantum_arcsin.inside, ref_quantum(p));
        if (away(prof.uffink)) ASSERT_EQ(prof.uffink.inside, ref_uffink(p));
    }
}

TEST(Invariants, InclusionChainOnMillionPoints) {
    std::mt19937_64 g(2024);
    const Region chain[] = {Region::LocalC, Region::QuantumQ, Region::UffinkU, Region::TsirelsonT, Region::NoSignalingL};
    long violations = 0, tested = 0;
    for (int k = 0; k < 1000000; ++k) {
        const CorrelationPoint p = uniform_point(g);
        const auto prof = membership_profile(p);
        bool near = false;
        for (Region r : chain) near = near || std::abs(prof.at(r).margin) < 1e-9;
        if (near) continue;
        ++tested;
        for (int s = 0; s + 1 < 5; ++s)
            if (prof.at(chain[s]).inside && !prof.at(chain[s + 1]).inside) ++violations;
    }
    EXPECT_EQ(violations, 0);
    EXPECT_GT(tested, 999000);
}

TEST(Invariants, LandauEquivalentToArcsin) {
    std::mt19937_64 g(99);
    long disagreements = 0;
    for (int k = 0; k < 1000000; ++k) {
        const CorrelationPoint p = uniform_point(g);
        const auto a = in_quantum_arcsin(p), l = in_quantum_landau(p);
        if (std::abs(a.margin) < 1e-9 || std::abs(l.margin) < 1e-9) continue;
        disagreements += a.inside != l.inside;
    }
    EXPECT_EQ(disagreements, 0);
}

TEST(Invariants, VerdictsInvariantUnderRelabelings) {
    std::mt19937_64 g(5);
    for (int k = 0; k < 20000; ++k) {
        const CorrelationPoint p = uniform_point(g);
        const auto base = membership_profile(p);
        const int code = static_cast<int>(g() % 128);
        const auto moved = membership_profile(relabel(p, code));
        for (Region r : {Region::LocalC, Region::QuantumQ, Region::UffinkU, Region::TsirelsonT, Region::NoSignalingL}) {
            ASSERT_NEAR(base.at(r).margin, moved.at(r).margin, 1e-12) << region_name(r) << " code " << code;
            if (std::abs(base.at(r).margin) > 1e-9) ASSERT_EQ(base.at(r).inside, moved.at(r).inside);
        }
        if (std::abs(base.quantum_landau.margin) > 1e-9)
            ASSERT_EQ(base.quantum_landau.inside, moved.quantum_landau.inside);
    }
}

TEST(Invariants, StarShapedAboutOrigin) {
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> lam(0.0, 1.0);
    for (int k = 0; k < 50000; ++k) {
        const CorrelationPoint p = uniform_point(g);
        const double l = lam(g);
        const CorrelationPoint q(l * p[0], l * p[1], l * p[2], l * p[3]);
        for (Region r : {Region::LocalC, Region::QuantumQ, Region::UffinkU, Region::TsirelsonT, Region::NoSignalingL})
            if (in_region(p, r).inside) ASSERT_TRUE(in_region(q, r).inside) << region_name(r);
    }
}

TEST(Invariants, LinearMarginsAreLipschitz) {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> d(-1e-6, 1e-6);
    for (int k = 0; k < 10000; ++k) {
        const CorrelationPoint p(uniform_point(g).values());
        std::array<double, 4> c = p.values();
        for (double& x : c) x = std::clamp(x + d(g), -1.0, 1.0);
        const CorrelationPoint q(c);
        double dist = 0.0;
        for (int i = 0; i < 4; ++i) dist += std::abs(p[i] - q[i]);
        // Each CHSH functional has unit coefficients, so margins move by at most the L1 step.
        ASSERT_LE(std::abs(in_local(p).margin - in_local(q).margin), dist + 1e-15);
        ASSERT_LE(std::abs(in_tsirelson_T(p).margin - in_tsirelson_T(q).margin), dist + 1e-15);
    }
}
