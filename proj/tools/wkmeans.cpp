// wkmeans: population-balanced weighted k-means districting.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> blocks, blockgroups, assignment, reference, input, out;
    std::optional<int> k, max_iter, restarts, sample_pairs, threads;
    std::optional<double> alpha, beta, balance_tol, move_tol_km, alpha_step_fine, alpha_ceiling;
    std::optional<std::uint64_t> seed;
    bool center = false;
};

void add_flags(CLI::App& cmd, Flags& f) {
    cmd.add_option("--config", f.config, "JSON config file; flags override its fields");
    cmd.add_option("--blocks", f.blocks, "blocks CSV (block_id,bg_id,lat,lon,pop2010)");
    cmd.add_option("--blockgroups", f.blockgroups, "block-group CSV (bg_id,pop2015)");
    cmd.add_option("--assignment", f.assignment, "assignment CSV (block_id,district)");
    cmd.add_option("--reference", f.reference, "reference assignment CSV to compare against");
    cmd.add_option("--input", f.input, "regression input CSV (label,districts,improvement)");
    cmd.add_option("--out", f.out, "output directory");
    cmd.add_option("--k", f.k, "number of districts");
    cmd.add_option("--alpha", f.alpha, "cardinality penalty exponent");
    cmd.add_option("--beta", f.beta, "scaling-factor smoothing in [0, 1)");
    cmd.add_option("--seed", f.seed, "random seed");
    cmd.add_option("--balance-tol", f.balance_tol, "max relative deviation from equal population");
    cmd.add_option("--max-iter", f.max_iter, "iteration cap per run");
    cmd.add_option("--move-tol-km", f.move_tol_km, "centroid movement convergence threshold");
    cmd.add_option("--restarts", f.restarts, "restarts per (alpha, beta) cell");
    cmd.add_option("--alpha-step-fine", f.alpha_step_fine, "alpha step of the fine search");
    cmd.add_option("--alpha-ceiling", f.alpha_ceiling, "largest alpha tried by the coarse search");
    cmd.add_option("--sample-pairs", f.sample_pairs, "pairs sampled per large district (0 = exact)");
    cmd.add_option("--threads", f.threads, "worker threads (results do not depend on it)");
    cmd.add_flag("--center", f.center, "center predictors before fitting");
}

template <class T>
void put(nlohmann::json& s, const char* key, const std::optional<T>& v) {
    if (v) {
        s[key] = *v;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace wkm::cli;

    CLI::App app{"Population-balanced weighted k-means districting"};
    app.require_subcommand(1);
    Flags flags;
    const std::pair<Command, const char*> commands[] = {
        {Command::cluster, "run weighted k-means with fixed alpha and beta"},
        {Command::search, "search alpha and beta for a balanced, compact plan"},
        {Command::metrics, "compare the compactness of two plans"},
        {Command::regress, "quadratic regression of improvement on district count"},
        {Command::export_geojson, "export a plan as GeoJSON points"},
        {Command::stats, "summarize a block dataset"},
    };
    for (const auto& [command, help] : commands) {
        add_flags(*app.add_subcommand(to_string(command), help), flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    Command command = Command::cluster;
    for (const auto& [c, help] : commands) {
        if (app.got_subcommand(to_string(c))) {
            command = c;
        }
    }

    nlohmann::json settings = nlohmann::json::object();
    if (flags.config) {
        try {
            settings = load_settings(*flags.config);
        } catch (const wkm::Error& e) {
            std::cerr << nlohmann::json{{"error", {{"kind", "ConfigError"}, {"message", e.what()}, {"exit_code", kExitConfig}, {"path", *flags.config}}}}.dump()
                      << '\n';
            return kExitConfig;
        }
    }
    put(settings, "blocks", flags.blocks);
    put(settings, "blockgroups", flags.blockgroups);
    put(settings, "assignment", flags.assignment);
    put(settings, "reference", flags.reference);
    put(settings, "input", flags.input);
    put(settings, "out", flags.out);
    put(settings, "k", flags.k);
    put(settings, "alpha", flags.alpha);
    put(settings, "beta", flags.beta);
    put(settings, "seed", flags.seed);
    put(settings, "balance_tol", flags.balance_tol);
    put(settings, "max_iter", flags.max_iter);
    put(settings, "move_tol_km", flags.move_tol_km);
    put(settings, "restarts", flags.restarts);
    put(settings, "alpha_step_fine", flags.alpha_step_fine);
    put(settings, "alpha_ceiling", flags.alpha_ceiling);
    put(settings, "sample_pairs", flags.sample_pairs);
    put(settings, "threads", flags.threads);
    if (flags.center) {
        settings["center"] = true;
    }

    return execute(command, settings, std::cout, std::cerr);
}
