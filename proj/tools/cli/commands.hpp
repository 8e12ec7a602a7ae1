#pragma once

#include <ostream>

#include <json.hpp>

#include "cli/config.hpp"

namespace wkm::cli {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitSearchExhausted = 4;
inline constexpr int kExitInternal = 5;

int exit_code_for(ErrorKind kind) noexcept;

void cmd_cluster(const RunConfig& config, std::ostream& log);
void cmd_search(const RunConfig& config, std::ostream& log);
void cmd_metrics(const RunConfig& config, std::ostream& log);
void cmd_regress(const RunConfig& config, std::ostream& log);
void cmd_export_geojson(const RunConfig& config, std::ostream& log);
void cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& log);

/**
 * Validates `settings` (merged config file + flags), runs the command and
 * returns the exit status. Failures are reported as a one-line JSON object
 * on `err`, mirrored to <out>/error.json when an output directory is known.
 */
int execute(Command command, const nlohmann::json& settings, std::ostream& out, std::ostream& err);

}  // namespace wkm::cli
