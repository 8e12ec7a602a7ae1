#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "wkm/geo.hpp"

namespace wkm {

/// A census block reduced to one representative point.
struct Block {
    std::string block_id;
    std::string bg_id;
    GeoPoint location;
    double pop2010 = 0.0;
    /// Estimated current population; may be fractional. Zero until estimated.
    double pop_est = 0.0;
};

struct BlockGroup {
    std::string bg_id;
    double pop2015 = 0.0;
};

/// Reads `block_id,bg_id,lat,lon,pop2010` CSV. Rows keep file order.
std::vector<Block> load_blocks(const std::filesystem::path& path);
std::vector<Block> parse_blocks(std::istream& in, const std::string& source = "<stream>");

/// Reads `bg_id,pop2015` CSV.
std::vector<BlockGroup> load_block_groups(const std::filesystem::path& path);
std::vector<BlockGroup> parse_block_groups(std::istream& in, const std::string& source = "<stream>");

using WarningSink = std::function<void(const std::string&)>;

/**
 * Distributes each group's pop2015 over its blocks in proportion to their
 * pop2010. A group whose blocks all have pop2010 == 0 but pop2015 > 0 is
 * split evenly and reported through `warn`.
 *
 * Throws UnknownBlockGroup for a block whose bg_id is not in `groups`.
 */
std::vector<Block> estimate_population(std::vector<Block> blocks,
                                       std::span<const BlockGroup> groups,
                                       const WarningSink& warn = {});

/// Sets pop_est = pop2010 for every block (no group file available).
std::vector<Block> use_base_population(std::vector<Block> blocks);

struct DatasetStats {
    std::size_t count = 0;
    std::size_t zero_population = 0;
    double total = 0.0;
    double mean = 0.0;
    double median = 0.0;
};

/// Summary of pop_est. Throws EmptyDataset on an empty list.
DatasetStats dataset_stats(std::span<const Block> blocks);

}  // namespace wkm
