#pragma once

#include <cstdint>
#include <limits>

namespace bellvol {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream: output k is a pure function of (seed, stream, k), so any
/// block of a stream can be generated independently and in any order.
/// Satisfies UniformRandomBitGenerator.
class CounterStream {
public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit CounterStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(mix64(mix64(seed) + kGamma * (stream + 1))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type at(std::uint64_t k) const noexcept { return mix64(key_ + kGamma * (k + 1)); }
    result_type operator()() noexcept { return at(counter_++); }

    void seek(std::uint64_t k) noexcept { counter_ = k; }
    std::uint64_t position() const noexcept { return counter_; }

    /// Uniform double in [0, 1) with 53 random bits.
    static double to_unit(result_type bits) noexcept {
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }
    double uniform01() noexcept { return to_unit((*this)()); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace bellvol
