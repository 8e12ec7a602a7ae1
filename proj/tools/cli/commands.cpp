#include "cli/commands.hpp"

#include <fstream>

#include "cli/plan_io.hpp"
#include "cli/report.hpp"
#include "wkm/analysis.hpp"
#include "wkm/csv.hpp"
#include "wkm/error.hpp"
#include "wkm/metrics.hpp"
#include "wkm/search.hpp"

namespace wkm::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Dataset {
    std::vector<Block> blocks;
    std::vector<std::string> warnings;
};

Dataset load(const RunConfig& c, std::ostream& log) {
    Dataset d;
    const fs::path* groups = c.blockgroups ? &*c.blockgroups : nullptr;
    d.blocks = load_dataset(*c.blocks, groups, &d.warnings);
    for (const auto& w : d.warnings) {
        log << "warning: " << w << '\n';
    }
    return d;
}

fs::path output_dir(const RunConfig& c) {
    std::error_code ec;
    fs::create_directories(*c.out, ec);
    if (ec || !fs::is_directory(*c.out)) {
        throw Error(ErrorKind::ConfigError, "cannot create output directory " + c.out->string());
    }
    return *c.out;
}

json centroids_json(const Plan& plan) {
    json out = json::array();
    for (std::size_t i = 0; i < plan.centroids.size(); ++i) {
        out.push_back({{"district", i}, {"lat", num(plan.centroids[i].lat())}, {"lon", num(plan.centroids[i].lon())}});
    }
    return out;
}

json plan_report(const std::string& command, const Plan& plan, const Dataset& data, const CompactnessMode& mode,
                 unsigned threads) {
    return {
        {"command", command},
        {"params", to_json(plan.params_used)},
        {"iterations", plan.iterations_used},
        {"converged", plan.converged},
        {"balance", balance_json(plan, plan.params_used.balance_tol)},
        {"compactness", to_json(compactness(plan, data.blocks, mode, threads))},
        {"centroids", centroids_json(plan)},
        {"dataset", {{"blocks", data.blocks.size()}, {"total_population", num(total_population(data.blocks))}}},
        {"warnings", data.warnings},
    };
}

void write_error(std::ostream& err, const std::optional<fs::path>& out, const std::string& kind,
                 const std::string& message, int code, const std::string& path) {
    json body = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    if (!path.empty()) {
        body["path"] = path;
    }
    const json doc = {{"error", body}};
    err << doc.dump() << '\n';
    if (out) {
        std::error_code ec;
        fs::create_directories(*out, ec);
        if (!ec) {
            std::ofstream f(*out / "error.json", std::ios::binary);
            f << doc.dump(2) << '\n';
        }
    }
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidParams:
    case ErrorKind::ConfigError:
        return kExitConfig;
    case ErrorKind::SearchExhausted:
        return kExitSearchExhausted;
    case ErrorKind::InvariantViolation:
        return kExitInternal;
    default:
        return kExitData;
    }
}

void cmd_cluster(const RunConfig& c, std::ostream& log) {
    const auto params = c.cluster_params();
    const auto dir = output_dir(c);
    const auto data = load(c, log);
    RunOptions options;
    options.threads = c.threads;
    const Plan plan = run(data.blocks, params, options);
    write_assignment(dir / "assignment.csv", data.blocks, plan.assignment);
    write_json(dir / "report.json", plan_report("cluster", plan, data, c.compactness_mode(), c.threads));
}

void cmd_search(const RunConfig& c, std::ostream& log) {
    const auto config = c.search_config();
    const auto dir = output_dir(c);
    const auto data = load(c, log);
    SearchResult result;
    try {
        result = search(data.blocks, *c.k, config);
    } catch (const SearchExhausted& e) {
        write_trace_csv(dir / "search_trace.csv", e.trace());
        throw;
    }
    write_trace_csv(dir / "search_trace.csv", result.trace);
    write_assignment(dir / "assignment.csv", data.blocks, result.best_plan.assignment);

    json report = plan_report("search", result.best_plan, data, config.measure, c.threads);
    const auto accepted = std::count_if(result.trace.begin(), result.trace.end(), [](const Attempt& a) { return a.accepted; });
    report["search"] = {
        {"alpha_star", num(result.alpha_star)},
        {"beta_star", num(result.beta_star)},
        {"objective_km", num(result.objective)},
        {"deviation", num(result.deviation)},
        {"coarse_winner",
         {{"alpha", num(result.coarse.alpha)}, {"beta", num(result.coarse.beta)}, {"objective_km", num(result.coarse.objective)}}},
        {"attempts", result.trace.size()},
        {"accepted_attempts", accepted},
        {"config",
         {{"alpha_step_coarse", num(config.alpha_step_coarse)},
          {"alpha_step_fine", num(config.alpha_step_fine)},
          {"alpha_ceiling", num(config.alpha_ceiling)},
          {"beta_start", num(config.beta_start)},
          {"beta_step", num(config.beta_step)},
          {"restarts", config.restarts},
          {"balance_tol", num(config.balance_tol)},
          {"objective", "mean_pairwise"}}},
    };
    write_json(dir / "report.json", report);
}

void cmd_metrics(const RunConfig& c, std::ostream& log) {
    const auto dir = output_dir(c);
    const auto data = load(c, log);
    const auto computed = read_assignment(*c.assignment, data.blocks);
    const auto reference = read_assignment(*c.reference, data.blocks);
    const auto mode = c.compactness_mode();
    const auto computed_report = compactness(computed.district, computed.k, data.blocks, mode, c.threads);
    const auto reference_report = compactness(reference.district, reference.k, data.blocks, mode, c.threads);
    const double ratio = improvement_ratio(computed_report, reference_report);
    write_json(dir / "metrics.json", {
                                         {"computed", to_json(computed_report)},
                                         {"reference", to_json(reference_report)},
                                         {"improvement_ratio", num(ratio)},
                                         {"mode", to_json(mode)},
                                     });
}

void cmd_regress(const RunConfig& c, std::ostream& log) {
    const auto dir = output_dir(c);
    std::ifstream in(*c.input, std::ios::binary);
    const auto rows = csv::read_table(in, c.input->string(), {"label", "districts", "improvement"});
    std::vector<std::string> labels;
    std::vector<double> x;
    std::vector<double> y;
    json excluded = json::array();
    for (const auto& row : rows) {
        const double districts = csv::parse_number(row.fields[1], c.input->string(), row.line, "districts");
        const double improvement = csv::parse_number(row.fields[2], c.input->string(), row.line, "improvement");
        if (districts == 1.0) {
            excluded.push_back(row.fields[0]);  // single-district units have no score
            continue;
        }
        labels.push_back(row.fields[0]);
        x.push_back(districts);
        y.push_back(improvement);
    }
    if (!excluded.empty()) {
        log << "note: excluded " << excluded.size() << " single-district rows\n";
    }
    FitOptions options;
    options.center = c.center;
    const auto result = fit_quadratic(labels, x, y, options);
    json doc = to_json(result);
    doc["excluded"] = excluded;
    write_json(dir / "regression.json", doc);

    const auto ranking = residual_ranking(result);
    std::ofstream table(dir / "residuals.txt", std::ios::binary);
    table << format_ranking_table(ranking);
    std::ofstream csv_out(dir / "residuals.csv", std::ios::binary);
    csv_out << "label,residual\n";
    for (const auto& r : ranking) {
        csv_out << csv::escape(r.label) << ',' << format_residual(r.residual) << '\n';
    }
}

void cmd_export_geojson(const RunConfig& c, std::ostream& log) {
    const auto dir = output_dir(c);
    const auto data = load(c, log);
    const auto table = read_assignment(*c.assignment, data.blocks);
    write_json(dir / "plan.geojson", plan_geojson(data.blocks, table.district, table.k));
}

void cmd_stats(const RunConfig& c, std::ostream& out, std::ostream& log) {
    const auto data = load(c, log);
    json doc = to_json(dataset_stats(data.blocks));
    doc["warnings"] = data.warnings;
    out << doc.dump(2) << '\n';
    if (c.out) {
        write_json(output_dir(c) / "stats.json", doc);
    }
}

int execute(Command command, const json& settings, std::ostream& out, std::ostream& err) {
    std::optional<fs::path> out_dir;
    if (settings.contains("out") && settings["out"].is_string()) {
        out_dir = settings["out"].get<std::string>();
    }
    try {
        const RunConfig config = make_config(command, settings);
        validate_inputs(config);
        switch (command) {
        case Command::cluster: cmd_cluster(config, err); break;
        case Command::search: cmd_search(config, err); break;
        case Command::metrics: cmd_metrics(config, err); break;
        case Command::regress: cmd_regress(config, err); break;
        case Command::export_geojson: cmd_export_geojson(config, err); break;
        case Command::stats: cmd_stats(config, out, err); break;
        }
        return kExitOk;
    } catch (const MissingInput& e) {
        const int code = exit_code_for(e.kind());
        write_error(err, out_dir, std::string(to_string(e.kind())), e.what(), code, e.path());
        return code;
    } catch (const Error& e) {
        const int code = exit_code_for(e.kind());
        write_error(err, out_dir, std::string(to_string(e.kind())), e.what(), code, "");
        return code;
    } catch (const std::exception& e) {
        write_error(err, out_dir, "InternalError", e.what(), kExitInternal, "");
        return kExitInternal;
    }
}

}  // namespace wkm::cli
