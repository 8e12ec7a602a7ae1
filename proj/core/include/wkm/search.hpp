#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wkm/cluster.hpp"
#include "wkm/error.hpp"
#include "wkm/metrics.hpp"

namespace wkm {

enum class SearchObjective { mean_pairwise };

struct SearchConfig {
    double alpha_step_coarse = 0.1;
    double beta_start = 0.5;
    double beta_step = 0.1;
    double alpha_step_fine = 0.01;
    /// Width of the fine scan below the coarse winner.
    double fine_window = 0.1;
    double alpha_ceiling = 5.0;
    int restarts = 1;
    double balance_tol = 0.05;
    SearchObjective objective = SearchObjective::mean_pairwise;

    // Forwarded to every run.
    std::uint64_t seed = 0;
    int max_iter = 500;
    double move_tol_km = 1e-6;

    /// How the objective is measured (large districts may be sampled).
    CompactnessMode measure = CompactnessMode::exact();
    /// Independent cells of a beta sweep run concurrently on this many threads.
    unsigned threads = 1;

    void validate() const;
    /// beta_start, beta_start + step, ... strictly below 1.
    std::vector<double> beta_values() const;
};

enum class SearchPhase { coarse, fine };

struct Attempt {
    SearchPhase phase = SearchPhase::coarse;
    double alpha = 0.0;
    double beta = 0.0;
    bool converged = false;
    double deviation = 0.0;
    /// Search objective of the kept plan (km).
    double objective = 0.0;
    bool accepted = false;
    /// Restart whose plan is reported for this cell.
    int restart = 0;
};

struct Candidate {
    double alpha = 0.0;
    double beta = 0.0;
    Plan plan;
    double objective = 0.0;
    double deviation = 0.0;
};

struct SearchResult {
    Plan best_plan;
    double alpha_star = 0.0;
    double beta_star = 0.0;
    double objective = 0.0;
    double deviation = 0.0;
    /// Coarse winner before refinement.
    Candidate coarse;
    std::vector<Attempt> trace;
};

/// Thrown when the coarse phase passes alpha_ceiling without an acceptable plan.
class SearchExhausted : public Error {
public:
    SearchExhausted(const std::string& message, std::vector<Attempt> trace)
        : Error(ErrorKind::SearchExhausted, message), trace_(std::move(trace)) {}

    const std::vector<Attempt>& trace() const noexcept { return trace_; }

private:
    std::vector<Attempt> trace_;
};

/// Converged and within balance_tol of equal district populations.
bool is_acceptable(const Plan& plan, double balance_tol);

struct CoarseResult {
    Candidate winner;
    std::vector<Attempt> trace;
};

/**
 * alpha = 0, 0.1, ...; at each alpha beta sweeps from beta_start upwards
 * while below 1, stopping at the first acceptable plan. Every attempt is
 * recorded in sweep order.
 */
CoarseResult coarse_search(std::span<const Block> blocks, int k, const SearchConfig& config);

/**
 * Rescans alpha over [max(0, alpha* - fine_window), alpha*] at
 * alpha_step_fine with the full beta sweep and keeps the acceptable plan of
 * smallest objective; ties go to smaller alpha, then smaller beta. The
 * coarse winner is always a candidate.
 */
SearchResult fine_search(std::span<const Block> blocks, int k, const SearchConfig& config, Candidate coarse,
                         std::vector<Attempt> trace = {});

/// coarse_search followed by fine_search.
SearchResult search(std::span<const Block> blocks, int k, const SearchConfig& config);

/// Objective value used to rank plans (population-weighted mean pairwise km).
double plan_objective(const Plan& plan, std::span<const Block> blocks, const SearchConfig& config);

std::string to_string(SearchPhase phase);

}  // namespace wkm
