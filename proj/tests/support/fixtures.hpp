#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wkm/ingest.hpp"
#include "wkm/rng.hpp"

namespace wkm::testing {

inline double normal(SplitMix64& rng) {
    // Box-Muller; one value per call is plenty for fixtures.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

inline Block make_block(const std::string& id, double lat, double lon, double pop, const std::string& bg = "g") {
    Block b;
    b.block_id = id;
    b.bg_id = bg;
    b.location = GeoPoint(lat, lon);
    b.pop2010 = pop;
    b.pop_est = pop;
    return b;
}

/// n blocks scattered uniformly in a lat/lon box, populations in [pop_lo, pop_hi).
inline std::vector<Block> random_blocks(std::size_t n, std::uint64_t seed, double lat0 = 40.0, double lon0 = -75.0,
                                        double span_deg = 1.0, double pop_lo = 1.0, double pop_hi = 100.0) {
    SplitMix64 rng(seed);
    std::vector<Block> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lat = lat0 + span_deg * (rng.uniform() - 0.5);
        const double lon = lon0 + span_deg * (rng.uniform() - 0.5);
        const double pop = pop_lo + (pop_hi - pop_lo) * rng.uniform();
        out.push_back(make_block("b" + std::to_string(i), lat, lon, pop));
    }
    return out;
}

/// Gaussian blob of equal-population blocks.
inline void add_blob(std::vector<Block>& out, const std::string& prefix, std::size_t n, double lat, double lon,
                     double sigma_deg, double pop, SplitMix64& rng) {
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(make_block(prefix + std::to_string(i), lat + sigma_deg * normal(rng),
                                 lon + sigma_deg * normal(rng), pop));
    }
}

/// Two adjacent blobs holding 70% and 30% of 1000 equal-population blocks.
/// Plain k-means (alpha = 0) splits them about 70/30.
inline std::vector<Block> two_blob_70_30(std::uint64_t seed = 7) {
    SplitMix64 rng(seed);
    std::vector<Block> out;
    add_blob(out, "a", 700, 40.0, -75.0, 0.05, 1.0, rng);
    add_blob(out, "b", 300, 40.0, -74.8, 0.05, 1.0, rng);
    return out;
}

/// Four tight 3x3 grids of equal population, far apart: k = 4 splits them
/// evenly on the first attempt.
inline std::vector<Block> balanced_grids() {
    std::vector<Block> out;
    const double corners[4][2] = {{40.0, -75.0}, {40.0, -73.0}, {41.5, -75.0}, {41.5, -73.0}};
    int id = 0;
    for (const auto& c : corners) {
        for (int r = 0; r < 3; ++r) {
            for (int q = 0; q < 3; ++q) {
                out.push_back(make_block("g" + std::to_string(id++), c[0] + 0.01 * r, c[1] + 0.01 * q, 10.0));
            }
        }
    }
    return out;
}

/// 20x20 grid with two dense horizontal population stripes.
inline std::vector<Block> stripes_grid() {
    std::vector<Block> out;
    for (int r = 0; r < 20; ++r) {
        for (int c = 0; c < 20; ++c) {
            const bool dense = r == 4 || r == 5 || r == 14 || r == 15;
            out.push_back(make_block("s" + std::to_string(r) + "_" + std::to_string(c), 40.0 + 0.025 * r,
                                     -75.0 + 0.025 * c, dense ? 50.0 : 1.0));
        }
    }
    return out;
}

/// Cracked reference plan for stripes_grid: k interleaved vertical strips.
inline std::vector<int> cracked_stripes_plan(int k) {
    std::vector<int> plan;
    for (int r = 0; r < 20; ++r) {
        for (int c = 0; c < 20; ++c) {
            plan.push_back(c % k);
        }
    }
    return plan;
}

}  // namespace wkm::testing
