#include "wkm/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wkm/error.hpp"
#include "wkm/parallel.hpp"
#include "wkm/rng.hpp"

namespace wkm {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw Error(ErrorKind::InvalidParams, what);
    }
}

std::size_t count_populated(std::span<const Block> blocks) {
    return static_cast<std::size_t>(
        std::count_if(blocks.begin(), blocks.end(), [](const Block& b) { return b.pop_est > 0.0; }));
}

// Index of the first entry whose cumulative mass exceeds u * total.
// Entries of zero mass can never be returned.
std::size_t sample_cumulative(const std::vector<double>& cumulative, SplitMix64& rng) {
    const double target = rng.uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) {
        // u * total rounded up onto the total; take the last entry with mass.
        std::size_t i = cumulative.size() - 1;
        while (i > 0 && cumulative[i - 1] == cumulative[i]) {
            --i;
        }
        return i;
    }
    return static_cast<std::size_t>(it - cumulative.begin());
}

std::vector<PreparedPoint> prepare_all(std::span<const Block> blocks) {
    std::vector<PreparedPoint> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) {
        out.push_back(prepare(b.location));
    }
    return out;
}

std::vector<int> assign_prepared(std::span<const PreparedPoint> points, std::span<const GeoPoint> centroids,
                                 std::span<const double> scales, unsigned threads) {
    const std::size_t k = centroids.size();
    std::vector<PreparedPoint> centres;
    centres.reserve(k);
    for (const auto& c : centroids) {
        centres.push_back(prepare(c));
    }
    const bool uniform =
        std::all_of(scales.begin(), scales.end(), [&](double s) { return s == scales.front(); });

    std::vector<int> out(points.size(), 0);
    parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int best_c = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const double d = haversine_km(points[i], centres[c]);
                const double scaled = uniform ? d : scales[c] * d;
                if (scaled < best) {
                    best = scaled;
                    best_c = static_cast<int>(c);
                }
            }
            out[i] = best_c;
        }
    });
    return out;
}

struct ClusterSums {
    std::vector<double> cardinalities;
    std::vector<std::size_t> populated;
};

ClusterSums sum_clusters(std::span<const Block> blocks, const std::vector<int>& assignment, int k) {
    ClusterSums sums{std::vector<double>(k, 0.0), std::vector<std::size_t>(k, 0)};
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].pop_est > 0.0) {
            sums.cardinalities[assignment[i]] += blocks[i].pop_est;
            ++sums.populated[assignment[i]];
        }
    }
    return sums;
}

std::vector<GeoPoint> centroids_of(std::span<const Block> blocks, const std::vector<int>& assignment, int k,
                                   std::span<const GeoPoint> previous) {
    std::vector<std::vector<WeightedPoint>> members(k);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].pop_est > 0.0) {
            members[assignment[i]].push_back({blocks[i].location, blocks[i].pop_est});
        }
    }
    std::vector<GeoPoint> out(k);
    for (int c = 0; c < k; ++c) {
        if (members[c].empty()) {
            out[c] = previous[c];
            continue;
        }
        try {
            out[c] = spherical_centroid(members[c]);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateMean) {
                throw;
            }
            out[c] = previous[c];
        }
    }
    return out;
}

}  // namespace

void ClusterParams::validate() const {
    require(k >= 1, "k must be at least 1");
    require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be a finite value >= 0");
    require(std::isfinite(beta) && beta >= 0.0 && beta < 1.0, "beta must lie in [0, 1)");
    require(max_iter >= 1, "max_iter must be positive");
    require(std::isfinite(move_tol_km) && move_tol_km > 0.0, "move_tol_km must be positive");
    require(std::isfinite(balance_tol) && balance_tol > 0.0, "balance_tol must be positive");
}

std::vector<GeoPoint> seed_centroids_kmeanspp(std::span<const Block> blocks, int k, std::uint64_t seed) {
    if (k < 1) {
        throw Error(ErrorKind::InvalidParams, "k must be at least 1");
    }
    const std::size_t n = blocks.size();
    if (static_cast<std::size_t>(k) > n) {
        throw Error(ErrorKind::InsufficientPoints,
                    "k = " + std::to_string(k) + " exceeds the number of blocks (" + std::to_string(n) + ")");
    }

    SplitMix64 rng(seed);
    const auto points = prepare_all(blocks);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    std::vector<bool> chosen(n, false);
    std::vector<double> cumulative(n);
    std::vector<GeoPoint> centres;
    centres.reserve(k);

    auto pick = [&](std::size_t i) {
        chosen[i] = true;
        centres.push_back(blocks[i].location);
        const PreparedPoint c = points[i];
        for (std::size_t j = 0; j < n; ++j) {
            nearest[j] = std::min(nearest[j], haversine_km(points[j], c));
        }
    };

    // Mass of block j for the next draw: pop * D^2 (D = inf before the first pick).
    auto mass = [&](std::size_t j, bool use_pop) {
        const double d2 = centres.empty() ? 1.0 : nearest[j] * nearest[j];
        return use_pop ? blocks[j].pop_est * d2 : d2;
    };

    while (centres.size() < static_cast<std::size_t>(k)) {
        bool drawn = false;
        for (bool use_pop : {true, false}) {
            double running = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                running += chosen[j] ? 0.0 : mass(j, use_pop);
                cumulative[j] = running;
            }
            if (running > 0.0) {
                pick(sample_cumulative(cumulative, rng));
                drawn = true;
                break;
            }
        }
        if (!drawn) {
            const auto it = std::find(chosen.begin(), chosen.end(), false);
            pick(static_cast<std::size_t>(it - chosen.begin()));
        }
    }
    return centres;
}

std::vector<double> weights(std::span<const double> cardinalities, double alpha) {
    const std::size_t k = cardinalities.size();
    if (k == 0) {
        throw Error(ErrorKind::InvalidParams, "weights of zero clusters");
    }
    if (alpha == 0.0) {
        return std::vector<double>(k, 1.0 / static_cast<double>(k));
    }
    const double largest = *std::max_element(cardinalities.begin(), cardinalities.end());
    if (!(largest > 0.0)) {
        throw Error(ErrorKind::AllZeroCardinalities, "every cluster cardinality is zero");
    }
    // Dividing by the largest cardinality first keeps |C|^alpha from overflowing.
    std::vector<double> w(k);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = std::pow(cardinalities[i] / largest, alpha);
        total += w[i];
    }
    for (auto& x : w) {
        x /= total;
    }
    return w;
}

std::vector<double> update_scales(std::span<const double> prev_scales, std::span<const double> w, double beta) {
    if (prev_scales.size() != w.size()) {
        throw Error(ErrorKind::InvalidParams, "scale and weight vectors differ in length");
    }
    std::vector<double> s(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        s[i] = beta * prev_scales[i] + (1.0 - beta) * w[i];
    }
    return s;
}

std::vector<int> assign(std::span<const Block> blocks, std::span<const GeoPoint> centroids,
                        std::span<const double> scales, unsigned threads) {
    if (centroids.empty() || scales.size() != centroids.size()) {
        throw Error(ErrorKind::InvalidParams, "assign needs one scale per centroid");
    }
    return assign_prepared(prepare_all(blocks), centroids, scales, threads);
}

CentroidUpdate update_centroids(std::span<const Block> blocks, std::vector<int>& assignment, int k,
                                std::span<const GeoPoint> previous, std::span<const double> scales) {
    CentroidUpdate update;
    for (;;) {
        auto sums = sum_clusters(blocks, assignment, k);
        update.centroids = centroids_of(blocks, assignment, k, previous);
        update.cardinalities = std::move(sums.cardinalities);

        const auto empty = std::find(sums.populated.begin(), sums.populated.end(), std::size_t{0});
        if (empty == sums.populated.end()) {
            break;
        }
        const int target = static_cast<int>(empty - sums.populated.begin());

        // Worst-served populated block among clusters that can spare one.
        std::size_t worst = blocks.size();
        double worst_d = -1.0;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const int c = assignment[i];
            if (blocks[i].pop_est <= 0.0 || sums.populated[c] < 2) {
                continue;
            }
            const double d = scales[c] * haversine_km(blocks[i].location, update.centroids[c]);
            if (d > worst_d) {
                worst_d = d;
                worst = i;
            }
        }
        if (worst == blocks.size()) {
            break;  // fewer populated blocks than clusters; nothing to move
        }
        assignment[worst] = target;
        update.reseeded.push_back(target);
    }
    return update;
}

double total_population(std::span<const Block> blocks) {
    double total = 0.0;
    for (const auto& b : blocks) {
        total += b.pop_est;
    }
    return total;
}

Plan run(std::span<const Block> blocks, const ClusterParams& params, const RunOptions& options) {
    params.validate();
    const int k = params.k;
    if (static_cast<std::size_t>(k) > blocks.size()) {
        throw Error(ErrorKind::InsufficientPoints, "k = " + std::to_string(k) + " exceeds the number of blocks (" +
                                                       std::to_string(blocks.size()) + ")");
    }
    const std::size_t populated = count_populated(blocks);
    if (static_cast<std::size_t>(k) > populated) {
        throw Error(ErrorKind::InsufficientPoints, "k = " + std::to_string(k) +
                                                       " exceeds the number of populated blocks (" +
                                                       std::to_string(populated) + ")");
    }

    const auto points = prepare_all(blocks);
    ClusterState state;
    state.centroids = seed_centroids_kmeanspp(blocks, k, params.seed);
    state.scales.assign(k, 1.0 / static_cast<double>(k));
    state.weights = state.scales;

    // t = 0: uniform scales, so this is a plain nearest-centroid assignment.
    state.assignment = assign_prepared(points, state.centroids, state.scales, options.threads);
    {
        auto update = update_centroids(blocks, state.assignment, k, state.centroids, state.scales);
        state.centroids = std::move(update.centroids);
        state.cardinalities = std::move(update.cardinalities);
    }
    if (options.on_iteration) {
        options.on_iteration(state);
    }

    bool converged = false;
    while (state.iteration < params.max_iter) {
        ++state.iteration;
        state.weights = weights(state.cardinalities, params.alpha);
        state.scales = update_scales(state.scales, state.weights, params.beta);

        auto next = assign_prepared(points, state.centroids, state.scales, options.threads);
        const bool unchanged = next == state.assignment;

        auto update = update_centroids(blocks, next, k, state.centroids, state.scales);
        double movement = 0.0;
        for (int c = 0; c < k; ++c) {
            movement = std::max(movement, haversine_km(state.centroids[c], update.centroids[c]));
        }
        state.assignment = std::move(next);
        state.centroids = std::move(update.centroids);
        state.cardinalities = std::move(update.cardinalities);
        if (options.on_iteration) {
            options.on_iteration(state);
        }
        if (unchanged || movement < params.move_tol_km) {
            converged = true;
            break;
        }
    }

    Plan plan;
    plan.assignment = std::move(state.assignment);
    plan.district_pops = std::move(state.cardinalities);
    plan.centroids = std::move(state.centroids);
    plan.converged = converged;
    plan.iterations_used = state.iteration;
    plan.params_used = params;
    return plan;
}

double balance_stats(const Plan& plan, double total_pop) {
    const auto k = static_cast<double>(plan.district_pops.size());
    if (k == 0.0 || !(total_pop > 0.0)) {
        return 0.0;
    }
    const double target = total_pop / k;
    double worst = 0.0;
    for (double p : plan.district_pops) {
        worst = std::max(worst, std::abs(p - target) / target);
    }
    return worst;
}

}  // namespace wkm
