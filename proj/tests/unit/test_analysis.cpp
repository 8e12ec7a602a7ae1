#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "wkm/analysis.hpp"
#include "wkm/error.hpp"

using namespace wkm;

namespace {

std::vector<std::string> labels_for(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back("S" + std::to_string(i));
    }
    return out;
}

struct Dataset {
    std::vector<std::string> labels;
    std::vector<double> x;
    std::vector<double> y;
};

// District counts 2..53 with a noisy quadratic response, like the real table.
Dataset random_dataset(std::uint64_t seed, std::size_t n = 20) {
    SplitMix64 rng(seed);
    Dataset d;
    d.labels = labels_for(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2.0 + std::floor(52.0 * rng.uniform());
        d.x.push_back(x);
        d.y.push_back(0.9 - 0.01 * x + 0.0002 * x * x + 0.05 * wkm::testing::normal(rng));
    }
    // Guarantee three distinct x values.
    d.x[0] = 2.0;
    d.x[1] = 20.0;
    d.x[2] = 53.0;
    return d;
}

RegressionResult with_residuals(const std::vector<std::pair<std::string, double>>& rows) {
    RegressionResult r;
    for (const auto& [label, res] : rows) {
        r.observations.push_back({label, 0.0, 0.0});
        r.residuals.push_back(res);
    }
    return r;
}

std::vector<std::string> order_of(const std::vector<RankedResidual>& ranking) {
    std::vector<std::string> out;
    for (const auto& r : ranking) {
        out.push_back(r.label);
    }
    return out;
}

}  // namespace

TEST_CASE("noiseless quadratic is recovered") {
    std::vector<double> x;
    std::vector<double> y;
    for (int d = 2; d <= 53; d += 3) {
        x.push_back(d);
        y.push_back(0.9 - 0.01 * d + 0.0002 * d * d);
    }
    const auto labels = labels_for(x.size());
    for (bool center : {false, true}) {
        CAPTURE(center);
        const auto r = fit_quadratic(labels, x, y, {center});
        CHECK(std::abs(r.coefficients[0] - 0.9) < 1e-8);
        CHECK(std::abs(r.coefficients[1] + 0.01) < 1e-8);
        CHECK(std::abs(r.coefficients[2] - 0.0002) < 1e-8);
        CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.df_model == 2);
        CHECK(r.df_resid == static_cast<int>(x.size()) - 3);
        CHECK(r.f_p_value < 1e-12);
    }
}

TEST_CASE("constant response") {
    const std::vector<double> x = {2, 3, 5, 8, 13};
    const std::vector<double> y(5, 0.8);
    const auto r = fit_quadratic(labels_for(5), x, y);
    CHECK(std::abs(r.coefficients[1]) < 1e-10);
    CHECK(std::abs(r.coefficients[2]) < 1e-10);
    CHECK(r.coefficients[0] == doctest::Approx(0.8).epsilon(1e-10));
    CHECK(r.r_squared == 0.0);
    for (double res : r.residuals) {
        CHECK(std::abs(res) < 1e-10);
    }
}

TEST_CASE("coefficients match the normal-equations oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CAPTURE(seed);
        const auto d = random_dataset(100 + seed);
        const auto expected = oracle::normal_equations(d.x, d.y);
        for (bool center : {false, true}) {
            const auto r = fit_quadratic(d.labels, d.x, d.y, {center});
            for (int j = 0; j < 3; ++j) {
                CHECK(r.coefficients[j] == doctest::Approx(expected[j]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("residual invariants") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CAPTURE(seed);
        const auto d = random_dataset(500 + seed, 43);
        const auto r = fit_quadratic(d.labels, d.x, d.y);

        const double sum = std::accumulate(r.residuals.begin(), r.residuals.end(), 0.0);
        CHECK(std::abs(sum) < 1e-9);

        // Orthogonality to each predictor, scaled by the column norm.
        double rx = 0.0, rx2 = 0.0, nx = 0.0, nx2 = 0.0, nr = 0.0;
        for (std::size_t i = 0; i < d.x.size(); ++i) {
            const double x = d.x[i];
            rx += r.residuals[i] * x;
            rx2 += r.residuals[i] * x * x;
            nx += x * x;
            nx2 += x * x * x * x;
            nr += r.residuals[i] * r.residuals[i];
        }
        CHECK(std::abs(rx) / std::sqrt(nx * nr) < 1e-6);
        CHECK(std::abs(rx2) / std::sqrt(nx2 * nr) < 1e-6);

        // R^2 equals corr(y, fitted)^2.
        const double n = static_cast<double>(d.y.size());
        const double my = std::accumulate(d.y.begin(), d.y.end(), 0.0) / n;
        const double mf = std::accumulate(r.fitted.begin(), r.fitted.end(), 0.0) / n;
        double sxy = 0.0, sxx = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < d.y.size(); ++i) {
            sxy += (d.y[i] - my) * (r.fitted[i] - mf);
            sxx += (d.y[i] - my) * (d.y[i] - my);
            syy += (r.fitted[i] - mf) * (r.fitted[i] - mf);
        }
        CHECK(r.r_squared == doctest::Approx(sxy * sxy / (sxx * syy)).epsilon(1e-10));
        CHECK(r.r_squared >= 0.0);
        CHECK(r.r_squared <= 1.0);

        // Statistics are consistent with each other.
        const double f = (r.r_squared / 2.0) / ((1.0 - r.r_squared) / r.df_resid);
        CHECK(r.f_stat == doctest::Approx(f).epsilon(1e-8));
        for (int j = 0; j < 3; ++j) {
            CHECK(r.t_stats[j] == doctest::Approx(r.coefficients[j] / r.std_errors[j]));
            CHECK(r.t_p_values[j] >= 0.0);
            CHECK(r.t_p_values[j] <= 1.0);
        }
    }
}

TEST_CASE("predictions do not depend on observation order") {
    auto d = random_dataset(77);
    const auto a = fit_quadratic(d.labels, d.x, d.y);
    std::reverse(d.labels.begin(), d.labels.end());
    std::reverse(d.x.begin(), d.x.end());
    std::reverse(d.y.begin(), d.y.end());
    const auto b = fit_quadratic(d.labels, d.x, d.y);
    for (double x : {2.0, 10.0, 27.5, 53.0}) {
        CHECK(a.predict(x) == doctest::Approx(b.predict(x)).epsilon(1e-12));
    }
}

TEST_CASE("F p-value matches the closed form for two numerator degrees of freedom") {
    // With df1 = 2 the upper tail is (1 + 2F/df2)^(-df2/2).
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto d = random_dataset(900 + seed, 43);
        const auto r = fit_quadratic(d.labels, d.x, d.y);
        REQUIRE(r.df_resid == 40);
        const double expected = std::pow(1.0 + 2.0 * r.f_stat / 40.0, -20.0);
        CHECK(r.f_p_value == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("fit errors") {
    const std::vector<double> x4 = {1, 2, 3, 4};
    const std::vector<double> y3 = {1, 2, 3};
    CHECK_THROWS_AS(fit_quadratic(labels_for(4), x4, y3), Error);
    const std::vector<double> x3 = {1, 2, 3};
    try {
        fit_quadratic(labels_for(3), x3, y3);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidParams);
    }
    const std::vector<double> two = {2, 2, 5, 5, 5};
    const std::vector<double> y5 = {1, 2, 3, 4, 5};
    try {
        fit_quadratic(labels_for(5), two, y5);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RankDeficient);
    }
}

TEST_CASE("residual ranking") {
    SUBCASE("ascending") {
        const auto r = with_residuals({{"A", -0.1}, {"B", 0.2}, {"C", 0.0}});
        CHECK(order_of(residual_ranking(r)) == std::vector<std::string>{"A", "C", "B"});
    }
    SUBCASE("ties by label") {
        const auto r = with_residuals({{"WY", 0.05}, {"AK", 0.05}, {"MD", -0.2}, {"CT", 0.05}});
        CHECK(order_of(residual_ranking(r)) == std::vector<std::string>{"MD", "AK", "CT", "WY"});
    }
    SUBCASE("most negative first in table format") {
        const auto r = with_residuals({{"NC", -0.0731}, {"AZ", -0.1482}, {"NY", 0.0027}});
        const auto ranking = residual_ranking(r);
        REQUIRE(ranking.front().label == "AZ");
        CHECK(format_residual(ranking.front().residual) == "-0.1482");
        const auto table = format_ranking_table(ranking, 3);
        const auto second_line = table.substr(table.find('\n') + 1);
        CHECK(second_line.rfind("AZ", 0) == 0);
        CHECK(second_line.find("-0.1482") != std::string::npos);
    }
}

TEST_CASE("residual formatting") {
    CHECK(format_residual(-0.14821) == "-0.1482");
    CHECK(format_residual(0.00271) == "0.0027");
    CHECK(format_residual(-0.00001) == "0.0000");
    CHECK(format_residual(0.12346) == "0.1235");
}
