#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "wkm/ingest.hpp"

namespace wkm::cli {

/// A block-to-district assignment aligned with a block table.
struct AssignmentTable {
    std::vector<int> district;
    int k = 0;
};

/**
 * Reads `block_id,district` CSV and aligns it with `blocks`. Throws
 * PlanMismatch naming the first block missing from the file, an id not in
 * the dataset, or a repeated id; ParseError for a malformed district index.
 */
AssignmentTable read_assignment(const std::filesystem::path& path, std::span<const Block> blocks);

/// Writes `block_id,district` rows in block order.
void write_assignment(const std::filesystem::path& path, std::span<const Block> blocks, std::span<const int> district);

/// Loads blocks and estimates populations (pop_est = pop2010 without a group file).
std::vector<Block> load_dataset(const std::filesystem::path& blocks, const std::filesystem::path* blockgroups,
                                std::vector<std::string>* warnings);

}  // namespace wkm::cli
