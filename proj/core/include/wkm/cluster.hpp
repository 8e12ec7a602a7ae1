#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wkm/geo.hpp"
#include "wkm/ingest.hpp"

namespace wkm {

/// Parameters of one weighted k-means run.
struct ClusterParams {
    int k = 1;
    /// Cardinality penalty exponent; 0 reduces the method to plain k-means.
    double alpha = 0.0;
    /// Smoothing of the scaling factors across iterations, in [0, 1).
    double beta = 0.5;
    std::uint64_t seed = 0;
    int max_iter = 500;
    double move_tol_km = 1e-6;
    double balance_tol = 0.05;

    /// Throws InvalidParams when a field is out of range.
    void validate() const;

    friend bool operator==(const ClusterParams&, const ClusterParams&) = default;
};

/// Snapshot of the iteration, handed to RunOptions::on_iteration.
struct ClusterState {
    std::vector<GeoPoint> centroids;
    std::vector<double> weights;
    std::vector<double> scales;
    /// Total estimated population per cluster.
    std::vector<double> cardinalities;
    std::vector<int> assignment;
    int iteration = 0;
};

struct Plan {
    /// District of blocks[i], dense in [0, k).
    std::vector<int> assignment;
    std::vector<double> district_pops;
    std::vector<GeoPoint> centroids;
    bool converged = false;
    int iterations_used = 0;
    ClusterParams params_used;
};

struct RunOptions {
    /// Width of the parallel assignment step. Results do not depend on it.
    unsigned threads = 1;
    std::function<void(const ClusterState&)> on_iteration;
};

/**
 * k-means++ seeding on the sphere. The first centre is drawn with
 * probability proportional to pop_est, each later one proportional to
 * pop_est * D(x)^2 with D the great-circle distance to the nearest centre
 * chosen so far.
 *
 * When the population-weighted mass is exhausted before k centres exist
 * (fewer than k distinct populated locations), sampling falls back to D^2
 * over all blocks, then to the lowest-index unchosen block.
 *
 * Throws InsufficientPoints if k exceeds the number of blocks.
 */
std::vector<GeoPoint> seed_centroids_kmeanspp(std::span<const Block> blocks, int k, std::uint64_t seed);

/// w_i = |C_i|^alpha / sum_j |C_j|^alpha with 0^0 = 1.
/// Throws AllZeroCardinalities if alpha > 0 and every cardinality is 0.
std::vector<double> weights(std::span<const double> cardinalities, double alpha);

/// s_i = beta * prev_i + (1 - beta) * w_i.
std::vector<double> update_scales(std::span<const double> prev_scales, std::span<const double> w,
                                  double beta);

/// argmin_i scales[i] * d(block, centroid_i), ties to the lowest index.
/// With all scales equal this is exactly nearest-centroid assignment.
std::vector<int> assign(std::span<const Block> blocks, std::span<const GeoPoint> centroids,
                        std::span<const double> scales, unsigned threads = 1);

struct CentroidUpdate {
    std::vector<GeoPoint> centroids;
    std::vector<double> cardinalities;
    /// Clusters that were empty (or unpopulated) and got reseeded.
    std::vector<int> reseeded;
};

/**
 * Population-weighted spherical centroid and total population per cluster.
 *
 * A cluster left with no population is reseeded at the populated block of
 * maximal scaled distance to its own centroid (taken only from clusters
 * that keep at least one other populated block). That block moves into the
 * reseeded cluster, so `assignment` is updated in place. A cluster whose
 * centroid is degenerate keeps `previous[c]`.
 */
CentroidUpdate update_centroids(std::span<const Block> blocks, std::vector<int>& assignment, int k,
                                std::span<const GeoPoint> previous, std::span<const double> scales);

/// Full weighted k-means run. Deterministic in (blocks, params).
Plan run(std::span<const Block> blocks, const ClusterParams& params, const RunOptions& options = {});

/// max_i |P_i - P/k| / (P/k).
double balance_stats(const Plan& plan, double total_pop);

/// Sum of pop_est over blocks.
double total_population(std::span<const Block> blocks);

}  // namespace wkm
