#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "wkm/analysis.hpp"
#include "wkm/cluster.hpp"
#include "wkm/ingest.hpp"
#include "wkm/metrics.hpp"
#include "wkm/search.hpp"

namespace wkm::cli {

/// Number rounded to 10 significant digits; null when not finite.
nlohmann::json num(double value);

/// "%.10g", or an empty field for non-finite values (CSV output).
std::string fmt(double value);

nlohmann::json to_json(const ClusterParams& params);
nlohmann::json to_json(const CompactnessMode& mode);
nlohmann::json to_json(const CompactnessReport& report);
nlohmann::json to_json(const DatasetStats& stats);
nlohmann::json to_json(const RegressionResult& result);

/// Balance section: populations, target P/k, max deviation, tolerance check.
nlohmann::json balance_json(const Plan& plan, double balance_tol);

/// FeatureCollection with a Point per block and one per populated district
/// centroid. Coordinates are [lon, lat].
nlohmann::json plan_geojson(std::span<const Block> blocks, std::span<const int> district, int k);

/// Pretty-printed with sorted keys and a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

/// `alpha,beta,converged,deviation,objective,accepted,phase,restart`
void write_trace_csv(const std::filesystem::path& path, std::span<const Attempt> trace);

}  // namespace wkm::cli
