#include "cli/plan_io.hpp"

#include <charconv>
#include <fstream>
#include <unordered_map>

#include "wkm/csv.hpp"
#include "wkm/error.hpp"

namespace wkm::cli {

AssignmentTable read_assignment(const std::filesystem::path& path, std::span<const Block> blocks) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string());
    }
    const std::string source = path.string();
    const auto rows = csv::read_table(in, source, {"block_id", "district"});

    std::unordered_map<std::string_view, std::size_t> index;
    index.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        index.emplace(blocks[i].block_id, i);
    }

    AssignmentTable table;
    table.district.assign(blocks.size(), -1);
    for (const auto& row : rows) {
        const auto& id = row.fields[0];
        const auto& text = row.fields[1];
        int d = -1;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
        if (ec != std::errc{} || ptr != text.data() + text.size() || d < 0) {
            throw Error(ErrorKind::ParseError,
                        csv::where(source, row.line, "district") + ": not a district index: '" + text + "'");
        }
        const auto it = index.find(id);
        if (it == index.end()) {
            throw Error(ErrorKind::PlanMismatch, source + ": block '" + id + "' is not in the dataset");
        }
        if (table.district[it->second] != -1) {
            throw Error(ErrorKind::PlanMismatch, source + ": block '" + id + "' is assigned twice");
        }
        table.district[it->second] = d;
        table.k = std::max(table.k, d + 1);
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (table.district[i] == -1) {
            throw Error(ErrorKind::PlanMismatch, source + ": block '" + blocks[i].block_id + "' is not assigned");
        }
    }
    return table;
}

void write_assignment(const std::filesystem::path& path, std::span<const Block> blocks, std::span<const int> district) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path.string());
    }
    out << "block_id,district\n";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        out << csv::escape(blocks[i].block_id) << ',' << district[i] << '\n';
    }
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed: " + path.string());
    }
}

std::vector<Block> load_dataset(const std::filesystem::path& blocks, const std::filesystem::path* blockgroups,
                                std::vector<std::string>* warnings) {
    auto table = load_blocks(blocks);
    if (blockgroups == nullptr) {
        return use_base_population(std::move(table));
    }
    const auto groups = load_block_groups(*blockgroups);
    WarningSink sink;
    if (warnings != nullptr) {
        sink = [warnings](const std::string& w) { warnings->push_back(w); };
    }
    return estimate_population(std::move(table), groups, sink);
}

}  // namespace wkm::cli
