#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wkm/cluster.hpp"
#include "wkm/geo.hpp"
#include "wkm/ingest.hpp"

namespace wkm {

/// Districts at or below this many blocks are always measured exactly.
inline constexpr std::size_t kExactBlockLimit = 2000;

struct CompactnessMode {
    enum class Kind { exact, sampled };
    Kind kind = Kind::exact;
    std::size_t sample_pairs = 0;
    std::uint64_t seed = 0;

    static CompactnessMode exact() { return {}; }
    static CompactnessMode sampled(std::size_t pairs, std::uint64_t seed) {
        return {Kind::sampled, pairs, seed};
    }
};

struct DistrictCompactness {
    int district = 0;
    std::size_t blocks = 0;
    double population = 0.0;
    double mean_pairwise_km = 0.0;
    /// Standard error of a sampled estimate; 0 when measured exactly.
    double std_error_km = 0.0;
    bool exact = true;
};

struct CompactnessReport {
    std::vector<DistrictCompactness> per_district;
    /// Population-weighted average of the per-district means.
    double overall_km = 0.0;
    CompactnessMode mode;
};

/// Population-weighted mean distance over distinct block pairs:
/// sum_{a<b} p_a p_b d(a,b) / sum_{a<b} p_a p_b. Zero when fewer than two
/// blocks carry population.
double district_mean_pairwise(std::span<const WeightedPoint> district);

struct SampledEstimate {
    double mean_km = 0.0;
    double std_error_km = 0.0;
    std::size_t pairs = 0;
};

/// Monte Carlo estimate of district_mean_pairwise: draws ordered pairs of
/// distinct blocks with probability proportional to p_a p_b.
SampledEstimate district_mean_pairwise_sampled(std::span<const WeightedPoint> district, std::size_t sample_pairs,
                                               std::uint64_t seed);

/// Compactness of a block-to-district assignment with `k` districts.
/// Sampled mode measures districts with more than kExactBlockLimit blocks
/// by sampling (stream per district index) and the rest exactly.
CompactnessReport compactness(std::span<const int> assignment, int k, std::span<const Block> blocks,
                              const CompactnessMode& mode = CompactnessMode::exact(), unsigned threads = 1);

CompactnessReport compactness(const Plan& plan, std::span<const Block> blocks,
                              const CompactnessMode& mode = CompactnessMode::exact(), unsigned threads = 1);

/// computed.overall_km / actual.overall_km; below 1 means the computed plan
/// is more compact. Throws DegenerateReference if actual.overall_km is 0.
double improvement_ratio(const CompactnessReport& computed, const CompactnessReport& actual);

}  // namespace wkm
