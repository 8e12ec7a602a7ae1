#pragma once

#include <string>
#include <vector>

#include "wkm/ingest.hpp"
#include "wkm/rng.hpp"

namespace wkm::bench {

// Uniform points in a 2° box with populations in [1, 100).
inline std::vector<Block> synthetic_blocks(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Block> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Block b;
        b.block_id = std::to_string(i);
        b.bg_id = "g";
        b.location = GeoPoint(39.0 + 2.0 * rng.uniform(), -76.0 + 2.0 * rng.uniform());
        b.pop2010 = 1.0 + 99.0 * rng.uniform();
        b.pop_est = b.pop2010;
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace wkm::bench
