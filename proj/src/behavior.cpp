#include "bellvol/behavior.hpp"

#include <boost/multiprecision/number.hpp>

#include <algorithm>

namespace bellvol {

namespace {

std::string sign_label(int outcome) { return outcome == 1 ? "+" : "-"; }

constexpr int kOutcomes[2] = {1, -1};

}  // namespace

int JointProbabilityTable::index(int i, int j, int a, int b) {
    if (i < 0 || i > 1 || j < 0 || j > 1) throw DomainError("setting indices must be 0 or 1");
    return ((2 * i + j) * 2 + outcome_index(a)) * 2 + outcome_index(b);
}

JointProbabilityTable JointProbabilityTable::from_entries(const std::array<Rational, 16>& entries) {
    JointProbabilityTable t;
    t.entries_ = entries;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Rational total = 0;
            for (int a : kOutcomes) {
                for (int b : kOutcomes) {
                    const Rational& v = t.p(i, j, a, b);
                    if (v < 0) throw NegativeProbability(i, j, a, b, v);
                    total += v;
                }
            }
            if (total != 1)
                throw DomainError("probabilities for settings (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") sum to " + to_string(total) + ", not 1");
        }
    }
    return t;
}

Rational JointProbabilityTable::correlation(int i, int j) const {
    Rational c = 0;
    for (int a : kOutcomes)
        for (int b : kOutcomes) c += a * b * p(i, j, a, b);
    return c;
}

RationalVector Behavior::coordinates() const {
    return {mA[0], mA[1], mB[0], mB[1], c[0], c[1], c[2], c[3]};
}

Behavior Behavior::from_coordinates(const RationalVector& x) {
    if (x.size() != 8) throw DomainError("a behavior has 8 coordinates");
    Behavior b;
    b.mA = {x[0], x[1]};
    b.mB = {x[2], x[3]};
    b.c = {x[4], x[5], x[6], x[7]};
    return b;
}

NegativeProbability::NegativeProbability(int i_, int j_, int a_, int b_, Rational v)
    : Error("negative probability P(A" + std::to_string(i_) + "=" + sign_label(a_) + ", B" +
            std::to_string(j_) + "=" + sign_label(b_) + ") = " + to_string(v)),
      i(i_), j(j_), a(a_), b(b_), value(std::move(v)) {}

NoSignalingViolation::NoSignalingViolation(Rational d)
    : Error("table violates no-signaling; maximal marginal discrepancy " + to_string(d)),
      discrepancy(std::move(d)) {}

Behavior deterministic_behavior(int a0, int a1, int b0, int b1) {
    for (int x : {a0, a1, b0, b1}) outcome_index(x);
    Behavior b;
    b.mA = {a0, a1};
    b.mB = {b0, b1};
    b.c = {a0 * b0, a0 * b1, a1 * b0, a1 * b1};
    return b;
}

std::vector<Behavior> deterministic_behaviors() {
    std::vector<Behavior> out;
    out.reserve(16);
    for (int a0 : kOutcomes)
        for (int a1 : kOutcomes)
            for (int b0 : kOutcomes)
                for (int b1 : kOutcomes) out.push_back(deterministic_behavior(a0, a1, b0, b1));
    return out;
}

Rational behavior_probability(const Behavior& beh, int i, int j, int a, int b) {
    return (1 + a * beh.mA[i] + b * beh.mB[j] + a * b * beh.corr(i, j)) / 4;
}

void validate(const Behavior& beh) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a : kOutcomes)
                for (int b : kOutcomes) {
                    Rational v = behavior_probability(beh, i, j, a, b);
                    if (v < 0) throw NegativeProbability(i, j, a, b, std::move(v));
                }
}

JointProbabilityTable table_from_behavior(const Behavior& beh) {
    validate(beh);
    std::array<Rational, 16> e{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a : kOutcomes)
                for (int b : kOutcomes)
                    e[JointProbabilityTable::index(i, j, a, b)] = behavior_probability(beh, i, j, a, b);
    return JointProbabilityTable::from_entries(e);
}

NoSignalingCheck check_no_signaling(const JointProbabilityTable& t) {
    Rational worst = 0;
    // Alice's marginal P(A_i = a) must not depend on Bob's setting j.
    for (int i = 0; i < 2; ++i)
        for (int a : kOutcomes) {
            Rational d = (t.p(i, 0, a, 1) + t.p(i, 0, a, -1)) - (t.p(i, 1, a, 1) + t.p(i, 1, a, -1));
            worst = std::max(worst, Rational(abs(d)));
        }
    // Bob's marginal P(B_j = b) must not depend on Alice's setting i.
    for (int j = 0; j < 2; ++j)
        for (int b : kOutcomes) {
            Rational d = (t.p(0, j, 1, b) + t.p(0, j, -1, b)) - (t.p(1, j, 1, b) + t.p(1, j, -1, b));
            worst = std::max(worst, Rational(abs(d)));
        }
    return NoSignalingCheck{worst == 0, worst};
}

Behavior behavior_from_table(const JointProbabilityTable& t) {
    auto ns = check_no_signaling(t);
    if (!ns.holds) throw NoSignalingViolation(ns.max_discrepancy);
    Behavior b;
    for (int i = 0; i < 2; ++i)
        b.mA[i] = t.p(i, 0, 1, 1) + t.p(i, 0, 1, -1) - t.p(i, 0, -1, 1) - t.p(i, 0, -1, -1);
    for (int j = 0; j < 2; ++j)
        b.mB[j] = t.p(0, j, 1, 1) + t.p(0, j, -1, 1) - t.p(0, j, 1, -1) - t.p(0, j, -1, -1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b.c[2 * i + j] = t.correlation(i, j);
    return b;
}

CorrelationPoint project_to_correlations(const Behavior& b) {
    return CorrelationPoint(to_double(b.c[0]), to_double(b.c[1]), to_double(b.c[2]),
                            to_double(b.c[3]));
}

CorrelationPoint project_to_correlations(const JointProbabilityTable& t) {
    return CorrelationPoint(to_double(t.correlation(0, 0)), to_double(t.correlation(0, 1)),
                            to_double(t.correlation(1, 0)), to_double(t.correlation(1, 1)));
}

JointProbabilityTable pr_box() {
    std::array<Rational, 16> e{};
    const Rational half(1, 2);
    using T = JointProbabilityTable;
    e[T::index(0, 0, 1, 1)] = half;
    e[T::index(0, 0, -1, -1)] = half;
    e[T::index(0, 1, 1, 1)] = half;
    e[T::index(0, 1, -1, -1)] = half;
    e[T::index(1, 0, 1, 1)] = half;
    e[T::index(1, 0, -1, -1)] = half;
    e[T::index(1, 1, 1, -1)] = half;
    e[T::index(1, 1, -1, 1)] = half;
    return T::from_entries(e);
}

JointProbabilityTable signaling_example() {
    std::array<Rational, 16> e{};
    const Rational half(1, 2);
    using T = JointProbabilityTable;
    e[T::index(0, 0, 1, 1)] = half;
    e[T::index(0, 0, 1, -1)] = half;
    e[T::index(0, 1, -1, 1)] = half;
    e[T::index(0, 1, -1, -1)] = half;
    e[T::index(1, 0, 1, 1)] = half;
    e[T::index(1, 0, 1, -1)] = half;
    e[T::index(1, 1, -1, 1)] = half;
    e[T::index(1, 1, -1, -1)] = half;
    return T::from_entries(e);
}

}  // namespace bellvol
