// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
#include <sys/resource.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/commands.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "wkm/wkm.hpp"

namespace fs = std::filesystem;
using namespace wkm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Verdict()>& check) {
    Verdict v;
    try {
        v = check();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) {
        ++failures;
    }
    std::printf("%s [%d] %s: %s\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// 1. alpha = 0 is Lloyd's k-means from the same seeding.
Verdict alpha_zero_reduction() {
    const auto t0 = Clock::now();
    int matched = 0;
    for (std::uint64_t inst = 0; inst < 50; ++inst) {
        const auto blocks = wkm::testing::random_blocks(200, 1000 + inst);
        ClusterParams p;
        p.k = 4;
        p.alpha = 0.0;
        p.seed = inst;
        const auto plan = run(blocks, p);
        const auto ref = oracle::lloyd(blocks, seed_centroids_kmeanspp(blocks, p.k, p.seed), p.max_iter,
                                       p.move_tol_km);
        matched += plan.assignment == ref.assignment ? 1 : 0;
    }
    const double secs = seconds_since(t0);
    return {matched == 50 && secs < 5.0, fmt("%.0f/50 exact matches, %.2f s (limit 5 s)", matched, secs)};
}

// 2. weights and scales stay normalized.
Verdict normalization() {
    SplitMix64 rng(2024);
    double worst = 0.0;
    for (int c = 0; c < 1000; ++c) {
        const int k = 1 + static_cast<int>(rng.next() % 20);
        std::vector<double> card(k), prev(k);
        for (int i = 0; i < k; ++i) {
            card[i] = rng.uniform() < 0.1 ? 0.0 : 1e6 * rng.uniform();
            prev[i] = rng.uniform() + 1e-3;
        }
        const double sp = std::accumulate(prev.begin(), prev.end(), 0.0);
        for (auto& v : prev) {
            v /= sp;
        }
        if (std::accumulate(card.begin(), card.end(), 0.0) == 0.0) {
            card[0] = 1.0;
        }
        const double alpha = 5.0 * rng.uniform();
        const double beta = rng.uniform();
        const auto w = weights(card, alpha);
        const auto s = update_scales(prev, w, beta);
        worst = std::max({worst, std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0),
                          std::abs(std::accumulate(s.begin(), s.end(), 0.0) - 1.0)});
    }
    int iterations = 0;
    for (std::uint64_t r = 0; r < 20; ++r) {
        const auto blocks = wkm::testing::random_blocks(300, 77 + r);
        ClusterParams p;
        p.k = 2 + static_cast<int>(r % 7);
        p.alpha = 0.25 * static_cast<double>(r % 9);
        p.beta = 0.5 + 0.02 * static_cast<double>(r);
        p.seed = r;
        RunOptions opt;
        opt.on_iteration = [&](const ClusterState& st) {
            ++iterations;
            worst = std::max(worst, std::abs(std::accumulate(st.scales.begin(), st.scales.end(), 0.0) - 1.0));
            if (!st.weights.empty()) {
                worst = std::max(worst, std::abs(std::accumulate(st.weights.begin(), st.weights.end(), 0.0) - 1.0));
            }
        };
        run(blocks, p, opt);
    }
    return {worst <= 1e-12, fmt("max |sum - 1| = %.3g over 1000 cases and %.0f iterations (tol 1e-12)", worst,
                                iterations)};
}

// 3. the search balances the 70/30 blobs.
Verdict balance_efficacy() {
    const auto blocks = wkm::testing::two_blob_70_30();
    ClusterParams p;
    p.k = 2;
    const auto plain = run(blocks, p);
    const double plain_dev = balance_stats(plain, total_population(blocks));
    const auto t0 = Clock::now();
    const auto result = search(blocks, 2, SearchConfig{});
    const double secs = seconds_since(t0);
    return {plain_dev > 0.3 && result.deviation <= 0.05 && result.best_plan.converged && secs < 30.0,
            fmt("alpha=0 deviation %.3f (need > 0.3); searched deviation %.4f (need <= 0.05); %.2f s (limit 30 s)",
                plain_dev, result.deviation, secs)};
}

// 4. searched plans against brute-force balanced bipartitions.
Verdict small_instance_oracle() {
    const auto t0 = Clock::now();
    int within = 0;
    int instances = 0;
    int exhausted = 0;
    double worst_ratio = 0.0;
    for (std::uint64_t seed = 0; instances < 10; ++seed) {
        SplitMix64 rng(5000 + seed);
        const std::size_t n = 6 + rng.next() % 5;  // 6..10 blocks
        const auto blocks = wkm::testing::random_blocks(n, 9000 + seed, 40.0, -75.0, 0.5, 50.0, 150.0);
        const double optimum = oracle::best_balanced_bipartition(blocks, 0.05);
        if (!std::isfinite(optimum)) {
            continue;  // no balanced split exists at all
        }
        ++instances;
        SearchConfig config;
        config.restarts = 50;
        config.seed = seed;
        double ratio = INFINITY;
        try {
            ratio = search(blocks, 2, config).objective / optimum;
        } catch (const SearchExhausted&) {
            ++exhausted;
        }
        within += ratio <= 1.05 ? 1 : 0;
        if (std::isfinite(ratio)) {
            worst_ratio = std::max(worst_ratio, ratio);
        }
    }
    const double secs = seconds_since(t0);
    return {within >= 8 && secs < 60.0,
            fmt("%.0f/10 within 5%% of optimum (need 8); %.0f found no acceptable plan, ", within, exhausted) +
                fmt("worst finite ratio %.4f; %.2f s (limit 60 s)", worst_ratio, secs)};
}

// 5. exact compactness vs brute force, sampled vs exact.
Verdict compactness_oracle() {
    double worst_rel = 0.0;
    for (std::uint64_t d = 0; d < 100; ++d) {
        SplitMix64 rng(300 + d);
        const std::size_t n = 2 + rng.next() % 11;
        const auto blocks = wkm::testing::random_blocks(n, 700 + d);
        std::vector<WeightedPoint> pts;
        for (const auto& b : blocks) {
            pts.push_back({b.location, b.pop_est});
        }
        const double exact = district_mean_pairwise(pts);
        const double brute = oracle::brute_mean_pairwise(pts);
        worst_rel = std::max(worst_rel, std::abs(exact - brute) / brute);
    }

    const auto ten = wkm::testing::random_blocks(10, 31337);
    std::vector<WeightedPoint> pts;
    for (const auto& b : ten) {
        pts.push_back({b.location, b.pop_est});
    }
    const double exact = district_mean_pairwise(pts);
    double sum = 0.0;
    double var_sum = 0.0;
    int covered = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto est = district_mean_pairwise_sampled(pts, 2000, stream_seed(99, s));
        sum += est.mean_km;
        var_sum += est.std_error_km * est.std_error_km;
        covered += std::abs(est.mean_km - exact) <= 3.0 * est.std_error_km ? 1 : 0;
    }
    const double pooled = sum / 100.0;
    const double pooled_se = std::sqrt(var_sum) / 100.0;
    const double z = std::abs(pooled - exact) / pooled_se;
    return {worst_rel <= 1e-12 && z <= 3.0 && covered >= 95,
            fmt("max rel error %.2g (tol 1e-12); pooled sampled z = %.2f (need <= 3); ", worst_rel, z) +
                fmt("%.0f/100 seeds within 3 SE (need 95)", covered)};
}

// 6. regression against a normal-equations oracle.
Verdict regression_oracle() {
    std::vector<std::string> labels;
    std::vector<double> x, y;
    for (int d = 2; d <= 53; ++d) {
        labels.push_back("S" + std::to_string(d));
        x.push_back(d);
        y.push_back(0.9 - 0.01 * d + 0.0002 * d * d);
    }
    const auto clean = fit_quadratic(labels, x, y);
    const double coef_err = std::max({std::abs(clean.coefficients[0] - 0.9), std::abs(clean.coefficients[1] + 0.01),
                                      std::abs(clean.coefficients[2] - 0.0002)});
    const double r2_err = std::abs(clean.r_squared - 1.0);

    double worst_rel = 0.0;
    double worst_sum = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        SplitMix64 rng(4242 + s);
        std::vector<std::string> l;
        std::vector<double> xs, ys;
        for (int i = 0; i < 20; ++i) {
            const double d = i < 3 ? 2.0 + 20.0 * i : 2.0 + std::floor(52.0 * rng.uniform());
            l.push_back("U" + std::to_string(i));
            xs.push_back(d);
            ys.push_back(0.9 - 0.01 * d + 0.0002 * d * d + 0.05 * wkm::testing::normal(rng));
        }
        const auto fit = fit_quadratic(l, xs, ys);
        const auto ref = oracle::normal_equations(xs, ys);
        for (int j = 0; j < 3; ++j) {
            worst_rel = std::max(worst_rel, std::abs(fit.coefficients[j] - ref[j]) / std::abs(ref[j]));
        }
        worst_sum = std::max(worst_sum, std::abs(std::accumulate(fit.residuals.begin(), fit.residuals.end(), 0.0)));
    }
    return {coef_err <= 1e-8 && r2_err <= 1e-12 && worst_rel <= 1e-10 && worst_sum <= 1e-9,
            fmt("noiseless coef error %.2g (tol 1e-8), |R2-1| %.2g; ", coef_err, r2_err) +
                fmt("oracle rel error %.2g (tol 1e-10); max |sum residuals| %.2g (tol 1e-9)", worst_rel, worst_sum)};
}

// 7. searched plan is more compact than the cracked stripes plan.
Verdict gerrymander_fixture() {
    const auto blocks = wkm::testing::stripes_grid();
    const int k = 2;
    const auto result = search(blocks, k, SearchConfig{});
    const auto computed = compactness(result.best_plan, blocks);
    const auto cracked = compactness(wkm::testing::cracked_stripes_plan(k), k, blocks);
    const double ratio = improvement_ratio(computed, cracked);
    return {ratio < 1.0, fmt("improvement ratio %.4f (need < 1), searched deviation %.4f", ratio, result.deviation)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// 8. CLI outputs are byte-identical across runs and thread counts.
Verdict determinism() {
    const fs::path dir = fs::temp_directory_path() / ("wkm_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "blocks.csv", std::ios::binary);
        f.precision(17);
        f << "block_id,bg_id,lat,lon,pop2010\n";
        for (const auto& b : wkm::testing::two_blob_70_30(5)) {
            f << b.block_id << ',' << b.bg_id << ',' << b.location.lat() << ',' << b.location.lon() << ','
              << b.pop2010 << '\n';
        }
    }
    int identical = 0;
    int compared = 0;
    for (auto command : {cli::Command::cluster, cli::Command::search}) {
        std::vector<std::string> first;
        int run_id = 0;
        for (unsigned threads : {1u, 1u, 4u}) {
            const fs::path out = dir / (cli::to_string(command) + std::to_string(run_id++));
            nlohmann::json s = {{"blocks", (dir / "blocks.csv").string()}, {"out", out.string()}, {"k", 2},
                                {"seed", 8}, {"threads", threads}, {"sample_pairs", 500}};
            if (command == cli::Command::cluster) {
                s["alpha"] = 1.0;
                s["beta"] = 0.6;
            }
            std::ostringstream sink;
            if (cli::execute(command, s, sink, sink) != 0) {
                fs::remove_all(dir);
                return {false, cli::to_string(command) + " failed: " + sink.str()};
            }
            std::vector<std::string> files;
            for (const char* name : {"assignment.csv", "report.json", "search_trace.csv"}) {
                if (fs::exists(out / name)) {
                    files.push_back(slurp(out / name));
                }
            }
            if (first.empty()) {
                first = files;
            } else {
                ++compared;
                identical += files == first ? 1 : 0;
            }
        }
    }
    fs::remove_all(dir);
    return {identical == compared, fmt("%.0f/%.0f reruns byte-identical (cluster and search, threads 1 and 4)",
                                       identical, compared)};
}

// 9. 100k points, single thread.
Verdict scale_check() {
    std::vector<Block> blocks;
    {
        SplitMix64 rng(100000);
        blocks.reserve(100000);
        for (int c = 0; c < 25; ++c) {
            const double lat = 30.0 + 15.0 * rng.uniform();
            const double lon = -110.0 + 30.0 * rng.uniform();
            const double sigma = 0.2 + 1.5 * rng.uniform();
            const double pop = 1.0 + 200.0 * rng.uniform();
            wkm::testing::add_blob(blocks, "c" + std::to_string(c) + "_", 4000, lat, lon, sigma, pop, rng);
        }
    }
    ClusterParams p;
    p.k = 10;
    p.alpha = 1.0;
    p.beta = 0.5;
    p.seed = 1;
    const auto t0 = Clock::now();
    const auto plan = run(blocks, p);
    const double secs = seconds_since(t0);
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    const double peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;
    return {secs < 60.0 && peak_mb < 1024.0,
            fmt("%.2f s (limit 60 s), peak RSS %.0f MB (limit 1024), ", secs, peak_mb) +
                (plan.converged ? "converged" : "hit max_iter") + fmt(" after %.0f iterations", plan.iterations_used)};
}

// 10. proportional estimate conserves the block-group totals.
Verdict ingest_conservation() {
    double worst = 0.0;
    int zero_groups = 0;
    for (std::uint64_t f = 0; f < 50; ++f) {
        SplitMix64 rng(60000 + f);
        const int groups = 5 + static_cast<int>(rng.next() % 40);
        std::ostringstream bg;
        std::ostringstream bl;
        bg << "bg_id,pop2015\n";
        bl << "block_id,bg_id,lat,lon,pop2010\n";
        double expected = 0.0;
        int id = 0;
        for (int g = 0; g < groups; ++g) {
            const double u = rng.uniform();
            const double pop2015 = u < 0.15 ? 0.0 : std::floor(5000.0 * rng.uniform());
            zero_groups += pop2015 == 0.0 ? 1 : 0;
            expected += pop2015;
            bg << "g" << g << ',' << pop2015 << '\n';
            const bool empty_base = rng.uniform() < 0.15;
            const int members = 1 + static_cast<int>(rng.next() % 30);
            for (int m = 0; m < members; ++m) {
                const double pop2010 = empty_base || rng.uniform() < 0.2 ? 0.0 : std::floor(300.0 * rng.uniform());
                bl << "b" << id++ << ",g" << g << ',' << 40.0 + rng.uniform() << ',' << -75.0 + rng.uniform() << ','
                   << pop2010 << '\n';
            }
        }
        std::istringstream blocks_in(bl.str());
        std::istringstream groups_in(bg.str());
        const auto blocks = estimate_population(parse_blocks(blocks_in), parse_block_groups(groups_in));
        const double total = total_population(blocks);
        if (expected > 0.0) {
            worst = std::max(worst, std::abs(total - expected) / expected);
        }
    }
    return {worst <= 1e-9, fmt("max relative error %.2g over 50 fixtures with %.0f zero-population groups (tol 1e-9)",
                               worst, zero_groups)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"alpha=0 reduces to k-means", alpha_zero_reduction},
        {"weights and scales normalized", normalization},
        {"balance efficacy on 70/30 blobs", balance_efficacy},
        {"small-instance brute-force oracle", small_instance_oracle},
        {"compactness oracle", compactness_oracle},
        {"regression oracle", regression_oracle},
        {"cracked stripes fixture", gerrymander_fixture},
        {"determinism", determinism},
        {"scale check", scale_check},
        {"ingest conservation", ingest_conservation},
    };
    // Optional arguments select criteria by number; default runs all.
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (id < 1 || id > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
            return 2;
        }
        selected.push_back(id);
    }
    if (selected.empty()) {
        for (int id = 1; id <= static_cast<int>(criteria.size()); ++id) {
            selected.push_back(id);
        }
    }
    for (int id : selected) {
        report(id, criteria[id - 1].first, criteria[id - 1].second);
    }
    std::printf("%d of %zu criteria failed\n", failures, selected.size());
    return failures == 0 ? 0 : 1;
}
