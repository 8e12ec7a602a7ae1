#include "cli/config.hpp"

#include <fstream>
#include <limits>

#include "wkm/error.hpp"
#include "wkm/rng.hpp"

namespace wkm::cli {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorKind::ConfigError, message);
}

enum class Type { path, integer, unsigned64, real, boolean };

struct Key {
    const char* name;
    Type type;
};

constexpr Key kKeys[] = {
    {"blocks", Type::path},        {"blockgroups", Type::path},     {"assignment", Type::path},
    {"reference", Type::path},     {"input", Type::path},           {"out", Type::path},
    {"k", Type::integer},          {"alpha", Type::real},           {"beta", Type::real},
    {"seed", Type::unsigned64},    {"max_iter", Type::integer},     {"move_tol_km", Type::real},
    {"balance_tol", Type::real},   {"restarts", Type::integer},     {"alpha_step_fine", Type::real},
    {"alpha_ceiling", Type::real}, {"sample_pairs", Type::integer}, {"threads", Type::integer},
    {"center", Type::boolean},
};

const Key* find_key(const std::string& name) {
    for (const auto& key : kKeys) {
        if (name == key.name) {
            return &key;
        }
    }
    return nullptr;
}

void check_type(const Key& key, const json& value) {
    bool ok = false;
    switch (key.type) {
    case Type::path: ok = value.is_string() && !value.get<std::string>().empty(); break;
    case Type::integer: ok = value.is_number_integer(); break;
    case Type::unsigned64: ok = value.is_number_unsigned() || (value.is_number_integer() && value.get<std::int64_t>() >= 0); break;
    case Type::real: ok = value.is_number(); break;
    case Type::boolean: ok = value.is_boolean(); break;
    }
    if (!ok) {
        config_error("option '" + std::string(key.name) + "' has the wrong type: " + value.dump());
    }
}

int as_int(const json& v, const char* name, int min) {
    const auto x = v.get<std::int64_t>();
    if (x < min || x > std::numeric_limits<int>::max()) {
        config_error(std::string("option '") + name + "' must be >= " + std::to_string(min));
    }
    return static_cast<int>(x);
}

}  // namespace

std::string to_string(Command command) {
    switch (command) {
    case Command::cluster: return "cluster";
    case Command::search: return "search";
    case Command::metrics: return "metrics";
    case Command::regress: return "regress";
    case Command::export_geojson: return "export-geojson";
    case Command::stats: return "stats";
    }
    return "unknown";
}

std::optional<Command> parse_command(const std::string& name) {
    for (auto c : {Command::cluster, Command::search, Command::metrics, Command::regress, Command::export_geojson,
                   Command::stats}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::string normalize_key(std::string key) {
    while (!key.empty() && key.front() == '-') {
        key.erase(key.begin());
    }
    for (auto& c : key) {
        if (c == '-') {
            c = '_';
        }
    }
    return key;
}

json load_settings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        config_error("cannot open config file " + path.string());
    }
    json raw;
    try {
        raw = json::parse(in);
    } catch (const json::parse_error& e) {
        config_error("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!raw.is_object()) {
        config_error("config file " + path.string() + " must hold a JSON object");
    }
    json settings = json::object();
    for (const auto& [key, value] : raw.items()) {
        settings[normalize_key(key)] = value;
    }
    return settings;
}

RunConfig make_config(Command command, const json& settings) {
    RunConfig c;
    c.command = command;
    for (const auto& [key, value] : settings.items()) {
        const Key* entry = find_key(key);
        if (entry == nullptr) {
            config_error("unknown option '" + key + "'");
        }
        check_type(*entry, value);
    }
    auto path = [&](const char* name, std::optional<std::filesystem::path>& dst) {
        if (settings.contains(name)) {
            dst = settings[name].get<std::string>();
        }
    };
    path("blocks", c.blocks);
    path("blockgroups", c.blockgroups);
    path("assignment", c.assignment);
    path("reference", c.reference);
    path("input", c.input);
    path("out", c.out);

    if (settings.contains("k")) c.k = as_int(settings["k"], "k", 1);
    if (settings.contains("alpha")) c.alpha = settings["alpha"].get<double>();
    if (settings.contains("beta")) c.beta = settings["beta"].get<double>();
    if (settings.contains("seed")) c.seed = settings["seed"].get<std::uint64_t>();
    if (settings.contains("max_iter")) c.max_iter = as_int(settings["max_iter"], "max_iter", 1);
    if (settings.contains("move_tol_km")) c.move_tol_km = settings["move_tol_km"].get<double>();
    if (settings.contains("balance_tol")) c.balance_tol = settings["balance_tol"].get<double>();
    if (settings.contains("restarts")) c.restarts = as_int(settings["restarts"], "restarts", 1);
    if (settings.contains("alpha_step_fine")) c.alpha_step_fine = settings["alpha_step_fine"].get<double>();
    if (settings.contains("alpha_ceiling")) c.alpha_ceiling = settings["alpha_ceiling"].get<double>();
    if (settings.contains("sample_pairs")) {
        c.sample_pairs = static_cast<std::size_t>(as_int(settings["sample_pairs"], "sample_pairs", 0));
    }
    if (settings.contains("threads")) c.threads = static_cast<unsigned>(as_int(settings["threads"], "threads", 1));
    if (settings.contains("center")) c.center = settings["center"].get<bool>();
    return c;
}

ClusterParams RunConfig::cluster_params() const {
    if (!k || !alpha || !beta) {
        config_error("cluster requires explicit k, alpha and beta");
    }
    ClusterParams p;
    p.k = *k;
    p.alpha = *alpha;
    p.beta = *beta;
    p.seed = seed;
    p.max_iter = max_iter;
    p.move_tol_km = move_tol_km;
    p.balance_tol = balance_tol;
    try {
        p.validate();
    } catch (const Error& e) {
        config_error(e.what());
    }
    return p;
}

SearchConfig RunConfig::search_config() const {
    if (!k) {
        config_error("search requires k");
    }
    SearchConfig s;
    s.seed = seed;
    s.max_iter = max_iter;
    s.move_tol_km = move_tol_km;
    s.balance_tol = balance_tol;
    s.restarts = restarts;
    s.alpha_step_fine = alpha_step_fine;
    s.alpha_ceiling = alpha_ceiling;
    s.measure = compactness_mode();
    s.threads = threads;
    try {
        s.validate();
    } catch (const Error& e) {
        config_error(e.what());
    }
    return s;
}

CompactnessMode RunConfig::compactness_mode() const {
    return sample_pairs > 0 ? CompactnessMode::sampled(sample_pairs, stream_seed(seed, 0x6d6574726963ULL))
                            : CompactnessMode::exact();
}

void validate_inputs(const RunConfig& c) {
    auto need = [](const std::optional<std::filesystem::path>& p, const char* name) {
        if (!p) {
            config_error(std::string("missing required option --") + name);
        }
        if (!std::filesystem::is_regular_file(*p)) {
            throw MissingInput(*p);
        }
    };
    auto maybe = [&](const std::optional<std::filesystem::path>& p, const char* name) {
        if (p) {
            need(p, name);
        }
    };
    switch (c.command) {
    case Command::cluster:
    case Command::search:
    case Command::stats:
        need(c.blocks, "blocks");
        maybe(c.blockgroups, "blockgroups");
        break;
    case Command::metrics:
        need(c.blocks, "blocks");
        maybe(c.blockgroups, "blockgroups");
        need(c.assignment, "assignment");
        need(c.reference, "reference");
        break;
    case Command::export_geojson:
        need(c.blocks, "blocks");
        maybe(c.blockgroups, "blockgroups");
        need(c.assignment, "assignment");
        break;
    case Command::regress:
        need(c.input, "input");
        break;
    }
    if (c.command != Command::stats && !c.out) {
        config_error("missing required option --out");
    }
}

}  // namespace wkm::cli
