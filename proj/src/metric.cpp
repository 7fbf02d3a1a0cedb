#include "bellvol/metric.hpp"

#include "bellvol/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bellvol {

double ToggleDistance::max() const { return *std::max_element(per_coordinate.begin(), per_coordinate.end()); }

double ToggleDistance::sum() const {
    double s = 0.0;
    for (double x : per_coordinate) s += x;
    return s;
}

ToggleDistance toggle_distance(const CorrelationPoint& p, const CorrelationPoint& q) {
    ToggleDistance d;
    for (int k = 0; k < 4; ++k) d.per_coordinate[k] = std::abs(p[k] - q[k]) / 2.0;
    return d;
}

OutcomeSequence::OutcomeSequence(std::vector<int> alice, std::vector<int> bob)
    : alice_(std::move(alice)), bob_(std::move(bob)) {
    if (alice_.size() != bob_.size()) throw DomainError("outcome sequences must have equal length");
    if (alice_.empty()) throw DomainError("outcome sequences must be nonempty");
    auto valid = [](int x) { return x == 1 || x == -1; };
    if (!std::all_of(alice_.begin(), alice_.end(), valid) || !std::all_of(bob_.begin(), bob_.end(), valid))
        throw DomainError("outcomes must be +1 or -1");
}

std::size_t OutcomeSequence::matches() const {
    std::size_t m = 0;
    for (std::size_t k = 0; k < alice_.size(); ++k) m += alice_[k] == bob_[k];
    return m;
}

double OutcomeSequence::correlation() const {
    const double n = static_cast<double>(size());
    return (2.0 * static_cast<double>(matches()) - n) / n;
}

void OutcomeSequence::toggle(std::size_t k) { alice_.at(k) = -alice_.at(k); }

ToggleResult min_toggles(const OutcomeSequence& seq, double target) {
    if (!(target >= -1.0 && target <= 1.0)) throw DomainError("target correlation must lie in [-1, 1]");

    const auto n = static_cast<std::int64_t>(seq.size());
    const auto m = static_cast<std::int64_t>(seq.matches());

    // Correlation (2 m' - N) / N for m' matches; pick the m' nearest to the target,
    // breaking ties toward the current count.
    const double ideal = (target + 1.0) * static_cast<double>(n) / 2.0;
    const auto lo = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(ideal)), 0, n);
    const auto hi = std::clamp<std::int64_t>(lo + 1, 0, n);
    std::int64_t wanted = lo;
    if (std::abs(ideal - std::round(ideal)) < 1e-9) {
        wanted = std::clamp<std::int64_t>(std::llround(ideal), 0, n);
    } else {
        const double dlo = ideal - static_cast<double>(lo), dhi = static_cast<double>(hi) - ideal;
        const bool tie = std::abs(dhi - dlo) < 1e-9;
        if ((!tie && dhi < dlo) || (tie && std::llabs(hi - m) < std::llabs(lo - m))) wanted = hi;
    }

    ToggleResult r{0, target, 0.0, false, {}, seq};
    // Lowering the correlation flips matched pairs, raising it flips mismatched ones.
    const bool flip_matched = wanted < m;
    const std::int64_t needed = flip_matched ? m - wanted : wanted - m;
    for (std::size_t k = 0; k < seq.size() && static_cast<std::int64_t>(r.toggled.size()) < needed; ++k) {
        const bool matched = seq.alice()[k] == seq.bob()[k];
        if (matched == flip_matched) {
            r.result.toggle(k);
            r.toggled.push_back(k);
        }
    }
    if (static_cast<std::int64_t>(r.toggled.size()) != needed)
        throw TargetUnreachable("not enough pairs of the required parity");

    r.count = static_cast<std::uint64_t>(needed);
    r.achieved = (2.0 * static_cast<double>(wanted) - static_cast<double>(n)) / static_cast<double>(n);
    r.snapped = std::abs(r.achieved - target) > 1e-12;
    return r;
}

}  // namespace bellvol
