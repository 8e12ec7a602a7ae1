#include "wkm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "wkm/error.hpp"

namespace wkm {

namespace {

double t_p_value(double t, int df) {
    if (std::isnan(t)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    const boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double f_p_value(double f, int df1, int df2) {
    if (std::isinf(f)) {
        return 0.0;
    }
    if (!(f > 0.0)) {
        return 1.0;
    }
    const boost::math::fisher_f dist(df1, df2);
    return boost::math::cdf(boost::math::complement(dist, f));
}

double ratio_or_limit(double num, double den) {
    if (den > 0.0) {
        return num / den;
    }
    if (num == 0.0) {
        return 0.0;
    }
    return std::copysign(std::numeric_limits<double>::infinity(), num);
}

}  // namespace

RegressionResult fit_quadratic(std::span<const std::string> labels, std::span<const double> x,
                               std::span<const double> y, const FitOptions& options) {
    const std::size_t n = x.size();
    if (y.size() != n || labels.size() != n) {
        throw Error(ErrorKind::InvalidParams, "labels, x and y must have equal length");
    }
    if (n < 4) {
        throw Error(ErrorKind::InvalidParams, "quadratic fit needs at least 4 observations");
    }
    if (std::set<double>(x.begin(), x.end()).size() < 3) {
        throw Error(ErrorKind::RankDeficient, "quadratic fit needs at least 3 distinct x values");
    }

    double shift = 0.0;
    if (options.center) {
        for (double v : x) {
            shift += v;
        }
        shift /= static_cast<double>(n);
    }

    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd response(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = x[i] - shift;
        design(i, 0) = 1.0;
        design(i, 1) = u;
        design(i, 2) = u * u;
        response(i) = y[i];
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 3) {
        throw Error(ErrorKind::RankDeficient, "design matrix is numerically singular");
    }
    const Eigen::Vector3d beta_local = qr.solve(response);

    // Unscaled coefficient covariance (X'X)^-1.
    const Eigen::Matrix3d xtx = design.transpose() * design;
    const Eigen::Matrix3d xtx_inv = xtx.ldlt().solve(Eigen::Matrix3d::Identity());

    // y = c0 + c1 (x - m) + c2 (x - m)^2  ->  raw coefficients b = T c.
    Eigen::Matrix3d transform;
    transform << 1.0, -shift, shift * shift,
                 0.0, 1.0, -2.0 * shift,
                 0.0, 0.0, 1.0;
    const Eigen::Vector3d beta = transform * beta_local;
    const Eigen::Matrix3d cov_unscaled = transform * xtx_inv * transform.transpose();

    RegressionResult result;
    result.centered = options.center;
    result.df_resid = static_cast<int>(n) - 3;
    for (int j = 0; j < 3; ++j) {
        result.coefficients[j] = beta(j);
    }

    const Eigen::VectorXd fitted_local = design * beta_local;
    double mean_y = 0.0;
    for (double v : y) {
        mean_y += v;
    }
    mean_y /= static_cast<double>(n);

    double ss_res = 0.0;
    double ss_tot = 0.0;
    result.fitted.resize(n);
    result.residuals.resize(n);
    result.observations.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.fitted[i] = fitted_local(i);
        result.residuals[i] = y[i] - fitted_local(i);
        ss_res += result.residuals[i] * result.residuals[i];
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
        result.observations.push_back({labels[i], x[i], y[i]});
    }
    const double ss_reg = std::max(ss_tot - ss_res, 0.0);
    result.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 0.0;

    const double sigma2 = ss_res / result.df_resid;
    result.f_stat = ratio_or_limit(ss_reg / result.df_model, sigma2);
    result.f_p_value = f_p_value(result.f_stat, result.df_model, result.df_resid);
    for (int j = 0; j < 3; ++j) {
        result.std_errors[j] = std::sqrt(std::max(sigma2 * cov_unscaled(j, j), 0.0));
        result.t_stats[j] = ratio_or_limit(result.coefficients[j], result.std_errors[j]);
        result.t_p_values[j] = t_p_value(result.t_stats[j], result.df_resid);
    }
    return result;
}

std::vector<RankedResidual> residual_ranking(const RegressionResult& result) {
    std::vector<RankedResidual> out;
    out.reserve(result.residuals.size());
    for (std::size_t i = 0; i < result.residuals.size(); ++i) {
        out.push_back({result.observations[i].label, result.residuals[i]});
    }
    std::stable_sort(out.begin(), out.end(), [](const RankedResidual& a, const RankedResidual& b) {
        if (a.residual != b.residual) {
            return a.residual < b.residual;
        }
        return a.label < b.label;
    });
    return out;
}

std::string format_residual(double residual) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", residual);
    std::string s(buf);
    if (s == "-0.0000") {
        s = "0.0000";
    }
    return s;
}

std::string format_ranking_table(const std::vector<RankedResidual>& ranking, int columns) {
    columns = std::max(columns, 1);
    const std::size_t rows = (ranking.size() + columns - 1) / columns;
    std::size_t label_width = 5;  // "Label"
    for (const auto& r : ranking) {
        label_width = std::max(label_width, r.label.size());
    }
    std::ostringstream os;
    auto cell = [&](const std::string& label, const std::string& value) {
        std::string l = label;
        l.resize(label_width, ' ');
        std::string v = value;
        if (v.size() < 9) {
            v.insert(0, 9 - v.size(), ' ');
        }
        os << l << "  " << v;
    };
    for (int c = 0; c < columns; ++c) {
        if (c > 0) {
            os << "    ";
        }
        cell("Label", "Residual");
    }
    os << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (int c = 0; c < columns; ++c) {
            const std::size_t i = static_cast<std::size_t>(c) * rows + r;
            if (i >= ranking.size()) {
                break;
            }
            if (c > 0) {
                os << "    ";
            }
            cell(ranking[i].label, format_residual(ranking[i].residual));
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace wkm
