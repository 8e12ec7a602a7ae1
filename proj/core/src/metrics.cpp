#include "wkm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wkm/error.hpp"
#include "wkm/parallel.hpp"
#include "wkm/rng.hpp"

namespace wkm {

namespace {

std::vector<WeightedPoint> populated_only(std::span<const WeightedPoint> district) {
    std::vector<WeightedPoint> out;
    out.reserve(district.size());
    for (const auto& p : district) {
        if (p.weight > 0.0) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

double district_mean_pairwise(std::span<const WeightedPoint> district) {
    const auto pts = populated_only(district);
    if (pts.size() < 2) {
        return 0.0;
    }
    std::vector<PreparedPoint> prepared;
    prepared.reserve(pts.size());
    for (const auto& p : pts) {
        prepared.push_back(prepare(p.point));
    }
    double weighted = 0.0;
    double mass = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        double row = 0.0;
        double row_mass = 0.0;
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            row += pts[b].weight * haversine_km(prepared[a], prepared[b]);
            row_mass += pts[b].weight;
        }
        weighted += pts[a].weight * row;
        mass += pts[a].weight * row_mass;
    }
    return weighted / mass;
}

SampledEstimate district_mean_pairwise_sampled(std::span<const WeightedPoint> district, std::size_t sample_pairs,
                                               std::uint64_t seed) {
    const auto pts = populated_only(district);
    if (pts.size() < 2 || sample_pairs == 0) {
        return {0.0, 0.0, 0};
    }
    std::vector<double> cumulative(pts.size());
    double running = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        running += pts[i].weight;
        cumulative[i] = running;
    }
    SplitMix64 rng(seed);
    auto draw = [&] {
        const double u = rng.uniform() * running;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), pts.size() - 1);
    };

    // Welford accumulation of the sampled distances.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;
    while (count < sample_pairs) {
        const std::size_t a = draw();
        const std::size_t b = draw();
        if (a == b) {
            continue;  // rejection keeps the distinct-pair distribution
        }
        const double d = haversine_km(pts[a].point, pts[b].point);
        ++count;
        const double delta = d - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (d - mean);
    }
    const double variance = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    return {mean, std::sqrt(variance / static_cast<double>(count)), count};
}

CompactnessReport compactness(std::span<const int> assignment, int k, std::span<const Block> blocks,
                              const CompactnessMode& mode, unsigned threads) {
    if (assignment.size() != blocks.size()) {
        throw Error(ErrorKind::PlanMismatch, "assignment covers " + std::to_string(assignment.size()) +
                                                 " blocks, dataset has " + std::to_string(blocks.size()));
    }
    std::vector<std::vector<WeightedPoint>> members(k);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const int d = assignment[i];
        if (d < 0 || d >= k) {
            throw Error(ErrorKind::PlanMismatch, "district index " + std::to_string(d) + " of block '" +
                                                     blocks[i].block_id + "' is outside [0, " +
                                                     std::to_string(k) + ")");
        }
        members[d].push_back({blocks[i].location, blocks[i].pop_est});
    }

    CompactnessReport report;
    report.mode = mode;
    report.per_district.resize(k);
    parallel_for(static_cast<std::size_t>(k), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t d = begin; d < end; ++d) {
            auto& entry = report.per_district[d];
            entry.district = static_cast<int>(d);
            entry.blocks = members[d].size();
            for (const auto& p : members[d]) {
                entry.population += p.weight;
            }
            const bool sample =
                mode.kind == CompactnessMode::Kind::sampled && members[d].size() > kExactBlockLimit;
            if (sample) {
                const auto est = district_mean_pairwise_sampled(members[d], mode.sample_pairs,
                                                                stream_seed(mode.seed, d));
                entry.mean_pairwise_km = est.mean_km;
                entry.std_error_km = est.std_error_km;
                entry.exact = false;
            } else {
                entry.mean_pairwise_km = district_mean_pairwise(members[d]);
            }
        }
    });

    double weighted = 0.0;
    double population = 0.0;
    for (const auto& entry : report.per_district) {
        weighted += entry.population * entry.mean_pairwise_km;
        population += entry.population;
    }
    report.overall_km = population > 0.0 ? weighted / population : 0.0;
    return report;
}

CompactnessReport compactness(const Plan& plan, std::span<const Block> blocks, const CompactnessMode& mode,
                              unsigned threads) {
    return compactness(plan.assignment, static_cast<int>(plan.district_pops.size()), blocks, mode, threads);
}

double improvement_ratio(const CompactnessReport& computed, const CompactnessReport& actual) {
    if (!(actual.overall_km > 0.0)) {
        throw Error(ErrorKind::DegenerateReference, "reference plan has zero within-district distance");
    }
    return computed.overall_km / actual.overall_km;
}

}  // namespace wkm
