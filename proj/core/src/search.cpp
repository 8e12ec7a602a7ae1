#include "wkm/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "wkm/parallel.hpp"
#include "wkm/rng.hpp"

namespace wkm {

namespace {

constexpr double kGridSlack = 1e-9;

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw Error(ErrorKind::InvalidParams, what);
    }
}

struct CellOutcome {
    Attempt attempt;
    std::optional<Candidate> candidate;
};

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
    return restart == 0 ? seed : stream_seed(seed, static_cast<std::uint64_t>(restart));
}

CellOutcome evaluate_cell(std::span<const Block> blocks, int k, const SearchConfig& config, SearchPhase phase,
                          double alpha, double beta) {
    ClusterParams params;
    params.k = k;
    params.alpha = alpha;
    params.beta = beta;
    params.max_iter = config.max_iter;
    params.move_tol_km = config.move_tol_km;
    params.balance_tol = config.balance_tol;

    std::optional<Candidate> best;
    std::optional<Attempt> fallback;
    for (int r = 0; r < config.restarts; ++r) {
        params.seed = restart_seed(config.seed, r);
        Plan plan = run(blocks, params);
        Attempt attempt;
        attempt.phase = phase;
        attempt.alpha = alpha;
        attempt.beta = beta;
        attempt.restart = r;
        attempt.converged = plan.converged;
        attempt.deviation = balance_stats(plan, std::accumulate(plan.district_pops.begin(),
                                                                plan.district_pops.end(), 0.0));
        attempt.objective = plan_objective(plan, blocks, config);
        attempt.accepted = plan.converged && attempt.deviation <= config.balance_tol;

        if (attempt.accepted) {
            if (!best || attempt.objective < best->objective) {
                best = Candidate{alpha, beta, std::move(plan), attempt.objective, attempt.deviation};
                fallback = attempt;
            }
        } else if (!best) {
            const auto rank = [](const Attempt& a) { return std::pair{!a.converged, a.deviation}; };
            if (!fallback || rank(attempt) < rank(*fallback)) {
                fallback = attempt;
            }
        }
    }
    return {*fallback, std::move(best)};
}

// Runs the beta sweep of one alpha. With stop_at_first, cells after the first
// acceptable one are dropped (they may still be computed when running in
// parallel, which does not change the result).
std::vector<CellOutcome> sweep_betas(std::span<const Block> blocks, int k, const SearchConfig& config,
                                     SearchPhase phase, double alpha, const std::vector<double>& betas,
                                     bool stop_at_first) {
    std::vector<CellOutcome> out;
    if (config.threads <= 1) {
        for (double beta : betas) {
            out.push_back(evaluate_cell(blocks, k, config, phase, alpha, beta));
            if (stop_at_first && out.back().attempt.accepted) {
                break;
            }
        }
        return out;
    }
    std::vector<std::optional<CellOutcome>> cells(betas.size());
    parallel_for(betas.size(), config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            cells[i] = evaluate_cell(blocks, k, config, phase, alpha, betas[i]);
        }
    });
    for (auto& cell : cells) {
        out.push_back(std::move(*cell));
        if (stop_at_first && out.back().attempt.accepted) {
            break;
        }
    }
    return out;
}

bool better(const Candidate& a, const Candidate& b) {
    if (a.objective != b.objective) {
        return a.objective < b.objective;
    }
    if (a.alpha != b.alpha) {
        return a.alpha < b.alpha;
    }
    return a.beta < b.beta;
}

std::string format_alpha(double a) {
    std::ostringstream os;
    os << a;
    return os.str();
}

}  // namespace

void SearchConfig::validate() const {
    require(alpha_step_coarse > 0.0, "alpha_step_coarse must be positive");
    require(alpha_step_fine > 0.0, "alpha_step_fine must be positive");
    require(beta_step > 0.0, "beta_step must be positive");
    require(beta_start >= 0.0 && beta_start < 1.0, "beta_start must lie in [0, 1)");
    require(fine_window >= 0.0, "fine_window must be non-negative");
    require(std::isfinite(alpha_ceiling) && alpha_ceiling >= 0.0, "alpha_ceiling must be non-negative");
    require(restarts >= 1, "restarts must be positive");
    require(balance_tol > 0.0, "balance_tol must be positive");
    require(max_iter >= 1, "max_iter must be positive");
    require(move_tol_km > 0.0, "move_tol_km must be positive");
}

std::vector<double> SearchConfig::beta_values() const {
    std::vector<double> out;
    for (int j = 0;; ++j) {
        const double beta = beta_start + j * beta_step;
        if (beta >= 1.0 - kGridSlack) {
            break;
        }
        out.push_back(beta);
    }
    return out;
}

std::string to_string(SearchPhase phase) {
    return phase == SearchPhase::coarse ? "coarse" : "fine";
}

bool is_acceptable(const Plan& plan, double balance_tol) {
    const double total = std::accumulate(plan.district_pops.begin(), plan.district_pops.end(), 0.0);
    return plan.converged && balance_stats(plan, total) <= balance_tol;
}

double plan_objective(const Plan& plan, std::span<const Block> blocks, const SearchConfig& config) {
    switch (config.objective) {
    case SearchObjective::mean_pairwise:
        return compactness(plan, blocks, config.measure).overall_km;
    }
    return 0.0;
}

CoarseResult coarse_search(std::span<const Block> blocks, int k, const SearchConfig& config) {
    config.validate();
    const auto betas = config.beta_values();
    std::vector<Attempt> trace;
    for (int i = 0;; ++i) {
        const double alpha = i * config.alpha_step_coarse;
        if (alpha > config.alpha_ceiling + kGridSlack) {
            break;
        }
        for (auto& cell : sweep_betas(blocks, k, config, SearchPhase::coarse, alpha, betas, true)) {
            trace.push_back(cell.attempt);
            if (cell.candidate) {
                return {std::move(*cell.candidate), std::move(trace)};
            }
        }
    }
    throw SearchExhausted("no acceptable plan for alpha up to " + format_alpha(config.alpha_ceiling) +
                              " (" + std::to_string(trace.size()) + " attempts)",
                          std::move(trace));
}

SearchResult fine_search(std::span<const Block> blocks, int k, const SearchConfig& config, Candidate coarse,
                         std::vector<Attempt> trace) {
    config.validate();
    const auto betas = config.beta_values();
    const auto steps = static_cast<int>(std::floor(config.fine_window / config.alpha_step_fine + kGridSlack));

    Candidate best = coarse;
    for (int m = steps; m >= 0; --m) {
        double alpha = coarse.alpha - m * config.alpha_step_fine;
        if (alpha < -kGridSlack) {
            continue;
        }
        alpha = std::max(alpha, 0.0);
        std::vector<double> todo;
        for (double beta : betas) {
            // Cells at alpha* up to beta* were already run by the coarse phase.
            if (m == 0 && beta <= coarse.beta + kGridSlack) {
                continue;
            }
            todo.push_back(beta);
        }
        for (auto& cell : sweep_betas(blocks, k, config, SearchPhase::fine, alpha, todo, false)) {
            trace.push_back(cell.attempt);
            if (cell.candidate && better(*cell.candidate, best)) {
                best = std::move(*cell.candidate);
            }
        }
    }

    SearchResult result;
    result.alpha_star = best.alpha;
    result.beta_star = best.beta;
    result.objective = best.objective;
    result.deviation = best.deviation;
    result.best_plan = std::move(best.plan);
    result.coarse = std::move(coarse);
    result.trace = std::move(trace);
    return result;
}

SearchResult search(std::span<const Block> blocks, int k, const SearchConfig& config) {
    auto coarse = coarse_search(blocks, k, config);
    return fine_search(blocks, k, config, std::move(coarse.winner), std::move(coarse.trace));
}

}  // namespace wkm
