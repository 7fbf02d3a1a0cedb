#include "bellvol/volume.hpp"

#include "bellvol/errors.hpp"
#include "bellvol/random.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace bellvol {

namespace {

using MaskHistogram = std::array<std::uint64_t, 1u << kRegionCount>;

MaskHistogram score_batches(const EstimatorConfig& cfg, const std::array<bool, kRegionCount>& on,
                            unsigned worker) {
    MaskHistogram hist{};
    const std::uint64_t n = cfg.sample_count;
    const std::uint64_t batches = (n + cfg.batch_size - 1) / cfg.batch_size;
    for (std::uint64_t b = worker; b < batches; b += cfg.worker_count) {
        const std::uint64_t begin = b * cfg.batch_size;
        const std::uint64_t end = std::min(n, begin + cfg.batch_size);
        for (std::uint64_t k = begin; k < end; ++k) {
            const CorrelationPoint p(sample_point(cfg.seed, k));
            unsigned mask = 0;
            for (Region r : kAllRegions) {
                const int slot = region_slot(r);
                if (on[slot] && in_region(p, r).inside) mask |= 1u << slot;
            }
            ++hist[mask];
        }
    }
    return hist;
}

double binomial_volume_error(std::uint64_t hits, std::uint64_t n) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return kCubeVolume * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::string ratio_label(Region a, Region b) {
    return std::string(region_symbol(a)) + "/" + std::string(region_symbol(b));
}

}  // namespace

EstimatorConfig EstimatorConfig::validated() const {
    if (sample_count < 1) throw DomainError("sample_count must be at least 1");
    if (worker_count < 1) throw DomainError("worker_count must be at least 1");
    if (batch_size < 1) throw DomainError("batch_size must be at least 1");
    EstimatorConfig c = *this;
    c.batch_size = std::min(batch_size, sample_count);
    return c;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::MonteCarlo: return "monte-carlo";
        case Method::Quadrature: return "quadrature";
        case Method::Exact: return "exact";
    }
    return "?";
}

std::array<double, 4> sample_point(std::uint64_t seed, std::uint64_t k) {
    const CounterStream stream(seed);
    std::array<double, 4> c{};
    for (int q = 0; q < 4; ++q) c[q] = 2.0 * CounterStream::to_unit(stream.at(4 * k + q)) - 1.0;
    return c;
}

HitTally tally_hits(const EstimatorConfig& raw, const std::array<bool, kRegionCount>& regions) {
    const EstimatorConfig cfg = raw.validated();
    std::vector<MaskHistogram> partial(cfg.worker_count);
    if (cfg.worker_count == 1) {
        partial[0] = score_batches(cfg, regions, 0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(cfg.worker_count);
        for (unsigned w = 0; w < cfg.worker_count; ++w)
            pool.emplace_back([&, w] { partial[w] = score_batches(cfg, regions, w); });
    }

    HitTally t;
    t.n = cfg.sample_count;
    for (const auto& hist : partial) {
        for (unsigned mask = 0; mask < hist.size(); ++mask) {
            if (hist[mask] == 0) continue;
            for (int a = 0; a < kRegionCount; ++a) {
                if (!(mask >> a & 1u)) continue;
                t.hits[a] += hist[mask];
                for (int b = 0; b < kRegionCount; ++b)
                    if (mask >> b & 1u) t.joint[a][b] += hist[mask];
            }
        }
    }
    return t;
}

VolumeEstimate volume_from_tally(const HitTally& t, Region r, std::uint64_t seed) {
    VolumeEstimate e;
    const std::uint64_t hits = t.of(r);
    e.value = kCubeVolume * static_cast<double>(hits) / static_cast<double>(t.n);
    e.std_error = binomial_volume_error(hits, t.n);
    e.sample_count = t.n;
    e.region = std::string(region_symbol(r));
    e.method = Method::MonteCarlo;
    e.seed = seed;
    return e;
}

VolumeEstimate ratio_from_tally(const HitTally& t, Region a, Region b, std::uint64_t seed) {
    const std::uint64_t hb = t.of(b);
    if (hb == 0)
        throw DegenerateDenominator("no samples landed in " + std::string(region_symbol(b)));
    const double n = static_cast<double>(t.n);
    const double pa = static_cast<double>(t.of(a)) / n;
    const double pb = static_cast<double>(hb) / n;
    const double pab = static_cast<double>(t.both(a, b)) / n;

    // Delta method for the ratio of two correlated sample means.
    const double var = (pa * (1.0 - pa) / (pb * pb) - 2.0 * pa * (pab - pa * pb) / (pb * pb * pb) +
                        pa * pa * pb * (1.0 - pb) / (pb * pb * pb * pb)) /
                       n;

    VolumeEstimate e;
    e.value = pa / pb;
    e.std_error = std::sqrt(std::max(0.0, var));
    e.sample_count = t.n;
    e.region = ratio_label(a, b);
    e.method = Method::MonteCarlo;
    e.seed = seed;
    return e;
}

VolumeEstimate mc_volume(Region r, const EstimatorConfig& cfg) {
    std::array<bool, kRegionCount> on{};
    on[region_slot(r)] = true;
    return volume_from_tally(tally_hits(cfg, on), r, cfg.seed);
}

VolumeEstimate ratio_estimate(Region a, Region b, const EstimatorConfig& cfg) {
    std::array<bool, kRegionCount> on{};
    on[region_slot(a)] = true;
    on[region_slot(b)] = true;
    return ratio_from_tally(tally_hits(cfg, on), a, b, cfg.seed);
}

VolumeEstimate volume_T_numeric(const EstimatorConfig& cfg) { return mc_volume(Region::TsirelsonT, cfg); }

VolumeEstimate volume_U_numeric(const EstimatorConfig& cfg) { return mc_volume(Region::UffinkU, cfg); }

AnalyticConstants analytic_constants() { return AnalyticConstants{}; }

ExcessReport excess_report(const EstimatorConfig& cfg, double quad_tol) {
    std::array<bool, kRegionCount> on{};
    on[region_slot(Region::TsirelsonT)] = true;
    on[region_slot(Region::UffinkU)] = true;
    const HitTally t = tally_hits(cfg, on);

    ExcessReport r;
    r.V_T = volume_from_tally(t, Region::TsirelsonT, cfg.seed);
    r.V_U = volume_from_tally(t, Region::UffinkU, cfg.seed);
    r.V_Q = quadrature_volume_Q(quad_tol);

    // The quadrature error is negligible next to the sampling error.
    const double vq = r.V_Q.value;
    auto excess = [&](const VolumeEstimate& v) {
        return DerivedValue{v.value / vq - 1.0, v.std_error / vq};
    };
    auto outside = [&](const VolumeEstimate& v) {
        return DerivedValue{1.0 - vq / v.value, vq * v.std_error / (v.value * v.value)};
    };
    r.excess_T = excess(r.V_T);
    r.excess_U = excess(r.V_U);
    r.T_not_in_Q = outside(r.V_T);
    r.U_not_in_Q = outside(r.V_U);
    return r;
}

}  // namespace bellvol
