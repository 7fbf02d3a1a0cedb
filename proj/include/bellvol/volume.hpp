#pragma once

// Volumes of the five correlation sets under the flat measure on [-1, 1]^4:
// hit-or-miss Monte Carlo (every region), deterministic quadrature (Q), and the
// closed-form constants.

#include "bellvol/membership.hpp"

#include <array>
#include <cstdint>
#include <numbers>
#include <string>

namespace bellvol {

inline constexpr double kCubeVolume = 16.0;

struct EstimatorConfig {
    std::uint64_t sample_count = 10'000'000;
    std::uint64_t seed = 1;
    unsigned worker_count = 1;
    std::uint64_t batch_size = 1u << 16;

    /// Throws DomainError if a field is out of range. A batch larger than the sample count
    /// is clamped rather than rejected.
    EstimatorConfig validated() const;
};

enum class Method { MonteCarlo, Quadrature, Exact };
std::string method_name(Method m);

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t sample_count = 0;
    std::string region;
    Method method = Method::MonteCarlo;
    std::uint64_t seed = 0;
};

inline constexpr int kRegionCount = 5;
inline constexpr std::array<Region, kRegionCount> kAllRegions = {
    Region::LocalC, Region::QuantumQ, Region::UffinkU, Region::TsirelsonT, Region::NoSignalingL};
constexpr int region_slot(Region r) { return static_cast<int>(r); }

/// Hit counts of one shared uniform stream against every oracle, with pairwise joint hits.
struct HitTally {
    std::uint64_t n = 0;
    std::array<std::uint64_t, kRegionCount> hits{};
    std::array<std::array<std::uint64_t, kRegionCount>, kRegionCount> joint{};

    std::uint64_t of(Region r) const { return hits[region_slot(r)]; }
    std::uint64_t both(Region a, Region b) const { return joint[region_slot(a)][region_slot(b)]; }
};

/// Point k of the sample stream for `seed`: four uniforms on [-1, 1).
std::array<double, 4> sample_point(std::uint64_t seed, std::uint64_t k);

/// Scores the first cfg.sample_count stream points against the oracles in `regions`
/// (joint counts are only meaningful between scored regions). The result depends on
/// (seed, sample_count) alone; worker_count and batch_size only change the schedule.
HitTally tally_hits(const EstimatorConfig& cfg,
                    const std::array<bool, kRegionCount>& regions = {true, true, true, true, true});

VolumeEstimate volume_from_tally(const HitTally& t, Region r, std::uint64_t seed);
/// hits(a) / hits(b), delta-method standard error. Throws DegenerateDenominator if hits(b) = 0.
VolumeEstimate ratio_from_tally(const HitTally& t, Region a, Region b, std::uint64_t seed);

VolumeEstimate mc_volume(Region r, const EstimatorConfig& cfg);
VolumeEstimate ratio_estimate(Region a, Region b, const EstimatorConfig& cfg);

VolumeEstimate volume_T_numeric(const EstimatorConfig& cfg);
VolumeEstimate volume_U_numeric(const EstimatorConfig& cfg);

/// Quadrature over a box in arcsin coordinates s_ij = arcsin c_ij.
struct QuadratureOptions {
    double abs_tol = 1e-6;
    std::array<double, 4> lower{-std::numbers::pi / 2, -std::numbers::pi / 2, -std::numbers::pi / 2,
                                -std::numbers::pi / 2};
    std::array<double, 4> upper{std::numbers::pi / 2, std::numbers::pi / 2, std::numbers::pi / 2,
                                std::numbers::pi / 2};
    /// Right-hand side of |sum s - 2 s_ij| <= slab_bound; pi for Q.
    double slab_bound = std::numbers::pi;
};

struct QuadratureResult {
    double value = 0.0;
    /// Bound on the total error assembled from every nested level.
    double error_bound = 0.0;
};

/// Throws ToleranceNotMet if the error bound exceeds opts.abs_tol, DomainError if abs_tol < 1e-9.
QuadratureResult integrate_quantum_region(const QuadratureOptions& opts);
VolumeEstimate quadrature_volume_Q(double abs_tol = 1e-6);

struct AnalyticConstants {
    double V_C = 32.0 / 3.0;
    double V_L = 16.0;
    double V_Q = 1.5 * std::numbers::pi * std::numbers::pi;
    double ratio_QC = (3.0 * std::numbers::pi / 8.0) * (3.0 * std::numbers::pi / 8.0);
    double ratio_QL = 3.0 * std::numbers::pi * std::numbers::pi / 32.0;
    double ratio_CL = 2.0 / 3.0;
};
AnalyticConstants analytic_constants();

/// A derived quantity with its propagated standard error.
struct DerivedValue {
    double value = 0.0;
    double std_error = 0.0;
};

struct ExcessReport {
    VolumeEstimate V_T;
    VolumeEstimate V_U;
    VolumeEstimate V_Q;        // quadrature
    DerivedValue excess_T;     // V_T / V_Q - 1
    DerivedValue excess_U;     // V_U / V_Q - 1
    DerivedValue T_not_in_Q;   // 1 - V_Q / V_T
    DerivedValue U_not_in_Q;   // 1 - V_Q / V_U
};

/// V_T and V_U come from one Monte Carlo stream; V_Q from quadrature at `quad_tol`.
ExcessReport excess_report(const EstimatorConfig& cfg, double quad_tol = 1e-8);

}  // namespace bellvol
