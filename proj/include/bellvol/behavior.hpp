#pragma once

// No-signaling behaviors of the scenario, in two coordinate systems:
//
//  * JointProbabilityTable: the 16 probabilities P(A_i = a, B_j = b);
//  * Behavior: 4 marginals <A_i>, <B_j> and 4 correlations <A_i B_j>, related by
//      P(A_i = a, B_j = b) = (1 + a <A_i> + b <B_j> + ab <A_i B_j>) / 4.
//
// The second parametrization satisfies no-signaling identically.

#include "bellvol/errors.hpp"
#include "bellvol/membership.hpp"
#include "bellvol/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace bellvol {

/// Outcome labels are +1 / -1; anything else is a DomainError.
inline int outcome_index(int outcome) {
    if (outcome == 1) return 0;
    if (outcome == -1) return 1;
    throw DomainError("outcome must be +1 or -1");
}

class JointProbabilityTable {
public:
    /// All entries zero; not a valid table until filled and validated.
    JointProbabilityTable() = default;

    /// Checks positivity and per-setting normalization; throws DomainError naming the offending block.
    static JointProbabilityTable from_entries(const std::array<Rational, 16>& entries);

    /// Entry P(A_i = a, B_j = b) with a, b in {+1, -1}.
    const Rational& p(int i, int j, int a, int b) const { return entries_[index(i, j, a, b)]; }
    const std::array<Rational, 16>& entries() const noexcept { return entries_; }

    static int index(int i, int j, int a, int b);

    /// Sum_{a,b} ab P(A_i = a, B_j = b).
    Rational correlation(int i, int j) const;

    friend bool operator==(const JointProbabilityTable&, const JointProbabilityTable&) = default;

private:
    std::array<Rational, 16> entries_{};
};

/// Coordinates (mA0, mA1, mB0, mB1, c00, c01, c10, c11).
struct Behavior {
    std::array<Rational, 2> mA{};
    std::array<Rational, 2> mB{};
    std::array<Rational, 4> c{};

    const Rational& corr(int i, int j) const { return c[2 * i + j]; }

    RationalVector coordinates() const;
    static Behavior from_coordinates(const RationalVector& x);

    friend bool operator==(const Behavior&, const Behavior&) = default;
};

class NegativeProbability : public Error {
public:
    NegativeProbability(int i, int j, int a, int b, Rational value);

    int i, j, a, b;
    Rational value;
};

class NoSignalingViolation : public Error {
public:
    explicit NoSignalingViolation(Rational discrepancy);

    Rational discrepancy;
};

struct NoSignalingCheck {
    bool holds = false;
    /// Largest |difference| across the eight marginal equalities.
    Rational max_discrepancy;
};

/// The 16 local deterministic behaviors, ordered by (a0, a1, b0, b1) with +1 before -1.
std::vector<Behavior> deterministic_behaviors();
Behavior deterministic_behavior(int a0, int a1, int b0, int b1);

/// Probability (1 + a mA_i + b mB_j + ab c_ij)/4; may be negative for an invalid behavior.
Rational behavior_probability(const Behavior& b, int i, int j, int a, int bo);

/// Throws NegativeProbability for the first negative entry.
void validate(const Behavior& b);

JointProbabilityTable table_from_behavior(const Behavior& b);
NoSignalingCheck check_no_signaling(const JointProbabilityTable& t);
/// Throws NoSignalingViolation if the table signals.
Behavior behavior_from_table(const JointProbabilityTable& t);

CorrelationPoint project_to_correlations(const Behavior& b);
CorrelationPoint project_to_correlations(const JointProbabilityTable& t);

/// Maximal CHSH violation: the no-signaling box with correlations (1, 1, 1, -1).
JointProbabilityTable pr_box();
/// A signaling table whose correlations all vanish, so it satisfies every CHSH inequality.
JointProbabilityTable signaling_example();

}  // namespace bellvol
