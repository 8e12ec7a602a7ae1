#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "wkm/cluster.hpp"
#include "wkm/error.hpp"
#include "wkm/search.hpp"

namespace wkm::cli {

enum class Command { cluster, search, metrics, regress, export_geojson, stats };

std::string to_string(Command command);
std::optional<Command> parse_command(const std::string& name);

/// Everything a subcommand needs, after the config file and flags merged.
struct RunConfig {
    Command command = Command::cluster;

    std::optional<std::filesystem::path> blocks;
    std::optional<std::filesystem::path> blockgroups;
    std::optional<std::filesystem::path> assignment;
    std::optional<std::filesystem::path> reference;
    std::optional<std::filesystem::path> input;
    std::optional<std::filesystem::path> out;

    std::optional<int> k;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::uint64_t seed = 0;
    int max_iter = 500;
    double move_tol_km = 1e-6;
    double balance_tol = 0.05;

    int restarts = 1;
    double alpha_step_fine = 0.01;
    double alpha_ceiling = 5.0;

    /// 0 measures every district exactly.
    std::size_t sample_pairs = 0;
    unsigned threads = 1;
    bool center = false;

    /// ClusterParams for `cluster`; requires k, alpha and beta.
    ClusterParams cluster_params() const;
    /// SearchConfig for `search`.
    SearchConfig search_config() const;
    CompactnessMode compactness_mode() const;
};

/// Normalizes a key: leading dashes dropped, '-' becomes '_'.
std::string normalize_key(std::string key);

/**
 * Builds a RunConfig from `settings`, a flat JSON object whose keys are
 * option names (see normalize_key). The caller merges the config file and
 * command-line flags into it, flags last. Unknown keys and wrongly typed
 * values throw Error(ConfigError).
 */
RunConfig make_config(Command command, const nlohmann::json& settings);

/// Reads a JSON config file into a normalized flat object.
nlohmann::json load_settings(const std::filesystem::path& path);

/// ConfigError carrying the offending input path.
class MissingInput : public Error {
public:
    explicit MissingInput(const std::filesystem::path& path)
        : Error(ErrorKind::ConfigError, "input file not found: " + path.string()), path_(path.string()) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Throws ConfigError (MissingInput for absent files) for the first missing
/// input required by the command.
void validate_inputs(const RunConfig& config);

}  // namespace wkm::cli
