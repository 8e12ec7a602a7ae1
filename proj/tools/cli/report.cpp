#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "wkm/error.hpp"
#include "wkm/geo.hpp"

namespace wkm::cli {

using nlohmann::json;

std::string fmt(double value) {
    if (!std::isfinite(value)) {
        return "";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

json num(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    const double rounded = std::strtod(fmt(value).c_str(), nullptr);
    return rounded == 0.0 ? 0.0 : rounded;  // no "-0.0"
}

json to_json(const ClusterParams& p) {
    return {
        {"k", p.k},
        {"alpha", num(p.alpha)},
        {"beta", num(p.beta)},
        {"seed", p.seed},
        {"max_iter", p.max_iter},
        {"move_tol_km", num(p.move_tol_km)},
        {"balance_tol", num(p.balance_tol)},
    };
}

json to_json(const CompactnessMode& mode) {
    if (mode.kind == CompactnessMode::Kind::exact) {
        return {{"kind", "exact"}};
    }
    return {{"kind", "sampled"},
            {"sample_pairs", mode.sample_pairs},
            {"seed", mode.seed},
            {"exact_block_limit", kExactBlockLimit}};
}

json to_json(const CompactnessReport& report) {
    json districts = json::array();
    for (const auto& d : report.per_district) {
        districts.push_back({
            {"district", d.district},
            {"blocks", d.blocks},
            {"population", num(d.population)},
            {"mean_pairwise_km", num(d.mean_pairwise_km)},
            {"std_error_km", num(d.std_error_km)},
            {"exact", d.exact},
        });
    }
    return {{"overall_km", num(report.overall_km)}, {"mode", to_json(report.mode)}, {"districts", districts}};
}

json to_json(const DatasetStats& s) {
    return {
        {"count", s.count},
        {"zero_population", s.zero_population},
        {"total_population", num(s.total)},
        {"mean_population", num(s.mean)},
        {"median_population", num(s.median)},
    };
}

json to_json(const RegressionResult& r) {
    static const char* names[] = {"intercept", "linear", "quadratic"};
    json coefficients = json::object();
    for (int j = 0; j < 3; ++j) {
        coefficients[names[j]] = {
            {"estimate", num(r.coefficients[j])},
            {"std_error", num(r.std_errors[j])},
            {"t", num(r.t_stats[j])},
            {"p_value", num(r.t_p_values[j])},
        };
    }
    json observations = json::array();
    for (std::size_t i = 0; i < r.observations.size(); ++i) {
        observations.push_back({
            {"label", r.observations[i].label},
            {"x", num(r.observations[i].x)},
            {"y", num(r.observations[i].y)},
            {"fitted", num(r.fitted[i])},
            {"residual", num(r.residuals[i])},
        });
    }
    json ranking = json::array();
    for (const auto& entry : residual_ranking(r)) {
        ranking.push_back({{"label", entry.label}, {"residual", format_residual(entry.residual)}});
    }
    return {
        {"n", r.observations.size()},
        {"coefficients", coefficients},
        {"r_squared", num(r.r_squared)},
        {"f_stat", num(r.f_stat)},
        {"f_df", {r.df_model, r.df_resid}},
        {"f_p_value", num(r.f_p_value)},
        {"t_df", r.df_resid},
        {"centered", r.centered},
        {"observations", observations},
        {"ranking", ranking},
    };
}

json balance_json(const Plan& plan, double balance_tol) {
    double total = 0.0;
    json pops = json::array();
    for (double p : plan.district_pops) {
        total += p;
        pops.push_back(num(p));
    }
    const double deviation = balance_stats(plan, total);
    const double k = static_cast<double>(plan.district_pops.size());
    return {
        {"district_populations", pops},
        {"total_population", num(total)},
        {"target_population", num(k > 0 ? total / k : 0.0)},
        {"max_deviation", num(deviation)},
        {"balance_tol", num(balance_tol)},
        {"within_tolerance", deviation <= balance_tol},
    };
}

json plan_geojson(std::span<const Block> blocks, std::span<const int> district, int k) {
    json features = json::array();
    std::vector<std::vector<WeightedPoint>> members(k);
    std::vector<double> population(k, 0.0);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        features.push_back({
            {"type", "Feature"},
            {"geometry", {{"type", "Point"}, {"coordinates", {num(b.location.lon()), num(b.location.lat())}}}},
            {"properties", {{"block_id", b.block_id}, {"district", district[i]}, {"pop_est", num(b.pop_est)}}},
        });
        members[district[i]].push_back({b.location, b.pop_est});
        population[district[i]] += b.pop_est;
    }
    for (int d = 0; d < k; ++d) {
        if (members[d].empty()) {
            continue;
        }
        if (!(population[d] > 0.0)) {
            for (auto& m : members[d]) {
                m.weight = 1.0;  // unpopulated district: plain spherical mean
            }
        }
        GeoPoint centre;
        try {
            centre = spherical_centroid(members[d]);
        } catch (const Error&) {
            continue;
        }
        features.push_back({
            {"type", "Feature"},
            {"geometry", {{"type", "Point"}, {"coordinates", {num(centre.lon()), num(centre.lat())}}}},
            {"properties", {{"district", d}, {"population", num(population[d])}, {"role", "centroid"}}},
        });
    }
    return {{"type", "FeatureCollection"}, {"features", features}};
}

void write_json(const std::filesystem::path& path, const json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path.string());
    }
    out << value.dump(2) << '\n';
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed: " + path.string());
    }
}

void write_trace_csv(const std::filesystem::path& path, std::span<const Attempt> trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path.string());
    }
    out << "alpha,beta,converged,deviation,objective,accepted,phase,restart\n";
    for (const auto& a : trace) {
        out << fmt(a.alpha) << ',' << fmt(a.beta) << ',' << (a.converged ? "true" : "false") << ','
            << fmt(a.deviation) << ',' << fmt(a.objective) << ',' << (a.accepted ? "true" : "false") << ','
            << to_string(a.phase) << ',' << a.restart << '\n';
    }
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed: " + path.string());
    }
}

}  // namespace wkm::cli
