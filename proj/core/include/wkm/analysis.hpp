#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace wkm {

struct Observation {
    std::string label;
    double x = 0.0;
    double y = 0.0;
};

/// OLS fit of y on (1, x, x^2).
struct RegressionResult {
    /// intercept, linear, quadratic
    std::array<double, 3> coefficients{};
    std::array<double, 3> std_errors{};
    std::array<double, 3> t_stats{};
    std::array<double, 3> t_p_values{};
    double r_squared = 0.0;
    double f_stat = 0.0;
    double f_p_value = 1.0;
    int df_model = 2;
    int df_resid = 0;
    std::vector<Observation> observations;
    std::vector<double> fitted;
    std::vector<double> residuals;
    bool centered = false;

    double predict(double x) const noexcept {
        return coefficients[0] + coefficients[1] * x + coefficients[2] * x * x;
    }
};

struct FitOptions {
    /// Solve in terms of (x - mean x) and map the coefficients back. Helps
    /// conditioning when x is large; results are reported on the raw scale.
    bool center = false;
};

/**
 * Quadratic least-squares fit with F and t statistics (df 2 and n - 3).
 *
 * Throws InvalidParams when the inputs differ in length or n < 4, and
 * RankDeficient when fewer than three distinct x values exist or the design
 * is numerically singular.
 */
RegressionResult fit_quadratic(std::span<const std::string> labels, std::span<const double> x,
                               std::span<const double> y, const FitOptions& options = {});

struct RankedResidual {
    std::string label;
    double residual = 0.0;
};

/// Observations by ascending residual (most negative first), ties by label.
std::vector<RankedResidual> residual_ranking(const RegressionResult& result);

/// Residual rendered with four decimals, e.g. "-0.1482", "0.0027".
std::string format_residual(double residual);

/// Column-major table of `columns` (label, residual) column pairs in the
/// style of a printed ranking table.
std::string format_ranking_table(const std::vector<RankedResidual>& ranking, int columns = 3);

}  // namespace wkm
