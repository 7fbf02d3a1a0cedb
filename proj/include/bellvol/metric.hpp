#pragma once

// Toggle distance: the minimum number of one party's results, per experiment, that must
// be flipped to turn one correlation into another. Flipping one of N results moves an
// empirical correlation by exactly 2/N, so the distance per coordinate is |dc| / 2.

#include "bellvol/membership.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace bellvol {

struct ToggleDistance {
    std::array<double, 4> per_coordinate{};

    /// Convenience aggregates; neither is canonical.
    double max() const;
    double sum() const;
};

ToggleDistance toggle_distance(const CorrelationPoint& p, const CorrelationPoint& q);

/// Aligned +-1 outcomes of N repetitions of one setting pair.
class OutcomeSequence {
public:
    /// Throws DomainError on unequal lengths, an empty sequence, or entries other than +-1.
    OutcomeSequence(std::vector<int> alice, std::vector<int> bob);

    std::size_t size() const noexcept { return alice_.size(); }
    const std::vector<int>& alice() const noexcept { return alice_; }
    const std::vector<int>& bob() const noexcept { return bob_; }

    /// Number of k with alice[k] == bob[k].
    std::size_t matches() const;
    /// (1/N) sum alice[k] bob[k].
    double correlation() const;

    /// Flips Alice's outcome k.
    void toggle(std::size_t k);

private:
    std::vector<int> alice_;
    std::vector<int> bob_;
};

struct ToggleResult {
    std::uint64_t count = 0;
    double requested = 0.0;
    /// The reachable value r + 2k/N nearest to the request.
    double achieved = 0.0;
    bool snapped = false;
    /// Alice's outcomes that were flipped.
    std::vector<std::size_t> toggled;
    OutcomeSequence result;
};

/// Flips the fewest Alice outcomes so the correlation reaches `target` (or the nearest
/// reachable value). Throws DomainError for target outside [-1, 1].
ToggleResult min_toggles(const OutcomeSequence& seq, double target);

}  // namespace bellvol
