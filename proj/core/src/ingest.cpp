#include "wkm/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "wkm/csv.hpp"
#include "wkm/error.hpp"

namespace wkm {

namespace {

double parse_population(const std::string& text, const std::string& source, std::size_t line,
                        std::string_view column) {
    const double v = csv::parse_number(text, source, line, column);
    if (v < 0.0) {
        throw Error(ErrorKind::ParseError,
                    csv::where(source, line, column) + ": negative population " + text);
    }
    return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string());
    }
    return in;
}

}  // namespace

std::vector<Block> parse_blocks(std::istream& in, const std::string& source) {
    static const std::vector<std::string_view> header{"block_id", "bg_id", "lat", "lon", "pop2010"};
    const auto rows = csv::read_table(in, source, header);

    std::vector<Block> blocks;
    blocks.reserve(rows.size());
    std::unordered_set<std::string> seen;
    seen.reserve(rows.size());
    for (const auto& row : rows) {
        const auto& f = row.fields;
        if (f[0].empty()) {
            throw Error(ErrorKind::ParseError, csv::where(source, row.line, "block_id") + ": empty id");
        }
        const double lat = csv::parse_number(f[2], source, row.line, "lat");
        const double lon = csv::parse_number(f[3], source, row.line, "lon");
        if (lat < -90.0 || lat > 90.0) {
            throw Error(ErrorKind::InvalidCoordinate,
                        csv::where(source, row.line, "lat") + ": latitude " + f[2] + " outside [-90, 90]");
        }
        if (!seen.insert(f[0]).second) {
            throw Error(ErrorKind::DuplicateBlockId,
                        csv::where(source, row.line, "block_id") + ": duplicate block_id '" + f[0] + "'");
        }
        Block b;
        b.block_id = f[0];
        b.bg_id = f[1];
        b.location = GeoPoint(lat, lon);
        b.pop2010 = parse_population(f[4], source, row.line, "pop2010");
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::vector<Block> load_blocks(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_blocks(in, path.string());
}

std::vector<BlockGroup> parse_block_groups(std::istream& in, const std::string& source) {
    static const std::vector<std::string_view> header{"bg_id", "pop2015"};
    const auto rows = csv::read_table(in, source, header);

    std::vector<BlockGroup> groups;
    groups.reserve(rows.size());
    std::unordered_set<std::string> seen;
    for (const auto& row : rows) {
        if (!seen.insert(row.fields[0]).second) {
            throw Error(ErrorKind::ParseError,
                        csv::where(source, row.line, "bg_id") + ": duplicate bg_id '" + row.fields[0] + "'");
        }
        groups.push_back({row.fields[0], parse_population(row.fields[1], source, row.line, "pop2015")});
    }
    return groups;
}

std::vector<BlockGroup> load_block_groups(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_block_groups(in, path.string());
}

std::vector<Block> estimate_population(std::vector<Block> blocks, std::span<const BlockGroup> groups,
                                       const WarningSink& warn) {
    std::unordered_map<std::string_view, std::size_t> group_index;
    group_index.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        group_index.emplace(groups[g].bg_id, g);
    }

    std::vector<std::size_t> block_group(blocks.size());
    std::vector<double> base_sum(groups.size(), 0.0);
    std::vector<std::size_t> members(groups.size(), 0);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto it = group_index.find(blocks[i].bg_id);
        if (it == group_index.end()) {
            throw Error(ErrorKind::UnknownBlockGroup,
                        "block '" + blocks[i].block_id + "' references unknown block group '" +
                            blocks[i].bg_id + "'");
        }
        block_group[i] = it->second;
        base_sum[it->second] += blocks[i].pop2010;
        ++members[it->second];
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (members[g] > 0 && base_sum[g] == 0.0 && groups[g].pop2015 > 0.0 && warn) {
            warn("block group '" + groups[g].bg_id + "' has no 2010 population; splitting " +
                 std::to_string(groups[g].pop2015) + " evenly over " + std::to_string(members[g]) +
                 " blocks");
        }
    }

    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::size_t g = block_group[i];
        const double target = groups[g].pop2015;
        if (base_sum[g] > 0.0) {
            blocks[i].pop_est = blocks[i].pop2010 / base_sum[g] * target;
        } else {
            blocks[i].pop_est = target / static_cast<double>(members[g]);
        }
    }
    return blocks;
}

std::vector<Block> use_base_population(std::vector<Block> blocks) {
    for (auto& b : blocks) {
        b.pop_est = b.pop2010;
    }
    return blocks;
}

DatasetStats dataset_stats(std::span<const Block> blocks) {
    if (blocks.empty()) {
        throw Error(ErrorKind::EmptyDataset, "dataset has no blocks");
    }
    std::vector<double> pops;
    pops.reserve(blocks.size());
    DatasetStats stats;
    for (const auto& b : blocks) {
        pops.push_back(b.pop_est);
        stats.total += b.pop_est;
        if (b.pop_est == 0.0) {
            ++stats.zero_population;
        }
    }
    stats.count = blocks.size();
    stats.mean = stats.total / static_cast<double>(stats.count);
    std::sort(pops.begin(), pops.end());
    const std::size_t mid = pops.size() / 2;
    stats.median = pops.size() % 2 == 1 ? pops[mid] : (pops[mid - 1] + pops[mid]) / 2.0;
    return stats;
}

}  // namespace wkm
