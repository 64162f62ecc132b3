#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "lagcorr/correlation.hpp"
#include "lagcorr/errors.hpp"
#include "lagcorr/synth.hpp"
#include "test_support.hpp"

using namespace lagcorr;
using lagcorr::testing::make_panel;
using lagcorr::testing::white_noise;

namespace {

// Direct double loop over every (t, s) pair with t - s == lag.
RawCorrelation naive_raw(std::span<const double> xi, std::span<const double> xj, int lag) {
    const auto n = static_cast<long>(xi.size());
    double sum = 0.0;
    std::size_t count = 0;
    for (long t = 0; t < n; ++t) {
        for (long s = 0; s < n; ++s) {
            if (t - s != lag) continue;
            sum += xi[static_cast<std::size_t>(t)] * xj[static_cast<std::size_t>(s)];
            ++count;
        }
    }
    return {sum / static_cast<double>(count), count};
}

double naive_moment(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s / static_cast<double>(x.size());
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

/// x2(t) = a * x1(t-1) + noise.
VarModel planted_pair(double a, std::uint64_t seed) {
    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(2, 2);
    phi(1, 0) = a;
    return VarModel{phi, Eigen::MatrixXd::Identity(2, 2), seed};
}

}  // namespace

TEST_SUITE("correlation.raw") {
    TEST_CASE("constant and alternating series") {
        const double a = 1.7;
        const auto c = make_panel({std::vector<double>(50, a), std::vector<double>(50, a)});
        CHECK(raw_correlation(c, 0, 1, 0).value == doctest::Approx(a * a).epsilon(1e-15));

        std::vector<double> alt(51);
        for (std::size_t k = 0; k < alt.size(); ++k) alt[k] = k % 2 ? -a : a;
        const auto p = make_panel({alt});
        const auto r = raw_correlation(p, 0, 0, 1);
        CHECK(r.value == doctest::Approx(-a * a).epsilon(1e-15));
        CHECK(r.pair_count == 50);
    }

    TEST_CASE("a drift shows up as non-zero autocorrelation") {
        std::vector<double> x(200, 0.01);
        for (std::size_t k = 0; k < x.size(); k += 2) x[k] += 0.001;
        const auto p = make_panel({x});
        CHECK(normalized_correlation(p, 0, 0, 5).normalized_value > 0.9);
    }

    TEST_CASE("fast sum equals the double loop on planted lag-1 data") {
        const auto panel = generate_var(planted_pair(0.4, 11), 1500);
        const auto x1 = panel.column(0);
        const auto x2 = panel.column(1);
        for (int lag = -4; lag <= 4; ++lag) {
            for (auto [a, b, i, j] : {std::tuple{x1, x2, 0, 1}, std::tuple{x2, x1, 1, 0}, std::tuple{x1, x1, 0, 0}}) {
                const auto fast = raw_correlation(panel, static_cast<std::size_t>(i), static_cast<std::size_t>(j), lag);
                const auto slow = naive_raw(a, b, lag);
                CHECK(fast.pair_count == slow.pair_count);
                CHECK(std::abs(fast.value - slow.value) <= 1e-12 * std::abs(slow.value));
            }
        }
    }

    TEST_CASE("lag must leave at least one pair") {
        const auto p = make_panel({{1, 2, 3}, {1, 2, 3}});
        CHECK(raw_correlation(p, 0, 1, 2).pair_count == 1);
        CHECK_THROWS_AS((void)raw_correlation(p, 0, 1, 3), InsufficientDataError);
        CHECK_THROWS_AS((void)raw_correlation(p, 0, 1, -3), InsufficientDataError);
    }
}

TEST_SUITE("correlation.normalized") {
    TEST_CASE("self-correlation at lag zero is one") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto p = white_noise(777, 3, seed);
            for (std::size_t i = 0; i < 3; ++i) {
                const auto c = normalized_correlation(p, i, i, 0);
                CHECK(std::abs(c.normalized_value - 1.0) <= 1e-12);
            }
        }
    }

    TEST_CASE("matches the naive normalizer and carries the null error") {
        const auto p = white_noise(400, 2, 5);
        const auto c = normalized_correlation(p, 0, 1, -3);
        const auto r = naive_raw(p.column(0), p.column(1), -3);
        const double expected = r.value / std::sqrt(naive_moment(p.column(0)) * naive_moment(p.column(1)));
        CHECK(std::abs(c.normalized_value - expected) <= 1e-12 * std::abs(expected));
        CHECK(c.raw_value == doctest::Approx(r.value).epsilon(1e-12));
        CHECK(c.pair_count == 397);
        CHECK(c.std_error == doctest::Approx(1.0 / std::sqrt(397.0)).epsilon(1e-15));
        CHECK(c.lag == -3);
    }

    TEST_CASE("role swap with negated lag is bit-identical") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto p = white_noise(1000 + seed * 37, 4, seed);
            const CorrelationEstimator est(p);
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    for (int lag = -15; lag <= 15; ++lag) {
                        const auto a = est.normalized(i, j, lag);
                        const auto b = est.normalized(j, i, -lag);
                        CHECK(bit_equal(a.normalized_value, b.normalized_value));
                        CHECK(bit_equal(a.raw_value, b.raw_value));
                        CHECK(a.pair_count == b.pair_count);
                    }
                }
            }
        }
    }

    TEST_CASE("scaling a column scales raw values and leaves normalized values") {
        const auto p = generate_var(planted_pair(0.3, 3), 2000);
        const double k = 37.5;
        std::vector<double> x1(p.column(0).begin(), p.column(0).end());
        std::vector<double> x2(p.column(1).begin(), p.column(1).end());
        std::vector<double> scaled = x1;
        for (double& v : scaled) v *= k;
        const auto q = make_panel({scaled, x2});
        const auto base = make_panel({x1, x2});
        for (int lag = -5; lag <= 5; ++lag) {
            const auto a = normalized_correlation(base, 0, 1, lag);
            const auto b = normalized_correlation(q, 0, 1, lag);
            CHECK(std::abs(b.raw_value - k * a.raw_value) <= 1e-12 * std::abs(k * a.raw_value));
            CHECK(std::abs(b.normalized_value - a.normalized_value) <= 1e-12);
        }
    }

    TEST_CASE("bound: |C| <= T/(T-|lag|) and the unit bound can be exceeded at non-zero lag") {
        const auto p = make_panel({{1.0, 1.1, 1.0}});
        const auto c = normalized_correlation(p, 0, 0, 1);
        // 2 * 1.1 / 2 over (3.21 / 3) = 1.1 / 1.07
        CHECK(c.normalized_value == doctest::Approx(1.1 / 1.07).epsilon(1e-14));
        CHECK(c.normalized_value > 1.0);

        std::mt19937_64 rng(8);
        std::normal_distribution<double> n(0.0, 1.0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t rows = 3 + rng() % 40;
            std::vector<double> a(rows), b(rows);
            const double drift = u(rng) * 3.0;
            for (std::size_t k = 0; k < rows; ++k) {
                a[k] = n(rng) + drift;
                b[k] = u(rng) < 0.3 ? a[k] : n(rng) - drift;
            }
            const auto q = make_panel({a, b});
            for (int lag = -static_cast<int>(rows) + 1; lag < static_cast<int>(rows); ++lag) {
                const double bound = static_cast<double>(rows) / static_cast<double>(rows - std::abs(lag));
                for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 0}, std::pair{1, 1}}) {
                    const auto c2 = normalized_correlation(q, static_cast<std::size_t>(i), static_cast<std::size_t>(j), lag);
                    CHECK(std::abs(c2.normalized_value) <= bound * (1.0 + 1e-12));
                    if (lag == 0) CHECK(std::abs(c2.normalized_value) <= 1.0 + 1e-12);
                }
            }
        }
    }

    TEST_CASE("constant zero column is degenerate") {
        const auto p = make_panel({{0, 0, 0, 0}, {1, -1, 1, 2}});
        CHECK_THROWS_AS((void)normalized_correlation(p, 0, 1, 0), DegenerateSeriesError);
        CHECK_NOTHROW((void)raw_correlation(p, 0, 1, 0));
    }

    TEST_CASE("VAR pair estimate sits within 3 standard errors of the population value") {
        Eigen::MatrixXd phi(2, 2);
        phi << 0.1, -0.05, 0.2, 0.05;
        Eigen::MatrixXd sigma(2, 2);
        sigma << 1.0, 0.3, 0.3, 0.8;
        int inside = 0;
        const int seeds = 100;
        for (int s = 0; s < seeds; ++s) {
            const VarModel m{phi, sigma, static_cast<std::uint64_t>(500 + s)};
            const auto p = generate_var(m, 15000);
            const auto c = normalized_correlation(p, 1, 0, 1);
            if (std::abs(c.normalized_value - population_lag1_correlation(m, 1, 0)) < 3.0 * c.std_error) ++inside;
        }
        CHECK(inside >= 97);
    }
}

TEST_SUITE("correlation.function") {
    TEST_CASE("layout, metadata and lookup") {
        const auto p = white_noise(300, 2, 1);
        const auto f = correlation_function(p, 0, 1, 12);
        REQUIRE(f.lags.size() == 25);
        CHECK(f.lags.front().lag == -12);
        CHECK(f.lags.back().lag == 12);
        CHECK(f.leader_id == "X1");
        CHECK(f.follower_id == "X2");
        CHECK(f.panel_hash == p.hash());
        CHECK(f.at(3).pair_count == 297);
        CHECK_THROWS_AS((void)f.at(13), ValidationError);
    }

    TEST_CASE("argument checks") {
        const auto p = make_panel({{1, -2, 3, 0.5, -1, 2, 1, -3, 2, 1, 0.1, -0.4, 2, 1, -1, 3, -2, 1, 0.3, -1},
                                   {2, 1, -1, 0.3, 1, -2, 0.7, 1, -1, 2, 1, -0.2, 1, 3, -1, 0.2, 1, -2, 1, 0.9}});
        CHECK_THROWS_AS((void)correlation_function(p, 0, 1, 0), ValidationError);
        CHECK_THROWS_AS((void)correlation_function(p, 0, 1, 10), InsufficientDataError);
        CHECK_NOTHROW((void)correlation_function(p, 0, 1, 9));
    }

    TEST_CASE("white-noise pair: non-zero lags below 3 standard errors for at least 99% of coefficients") {
        // Per-coefficient rate; with 24 lags per seed a per-seed "all below"
        // rate is capped near 0.9973^24 = 0.937 by the Gaussian tail itself.
        std::size_t inside = 0, total = 0, seeds_clean = 0;
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            const auto f = correlation_function(white_noise(1000, 2, seed), 0, 1, 12);
            bool clean = true;
            for (const auto& c : f.lags) {
                if (c.lag == 0) continue;
                ++total;
                if (std::abs(c.normalized_value) < 3.0 * c.std_error) {
                    ++inside;
                } else {
                    clean = false;
                }
            }
            seeds_clean += clean;
        }
        CHECK(static_cast<double>(inside) / static_cast<double>(total) >= 0.99);
        CHECK(seeds_clean >= 900);
    }

    TEST_CASE("autocorrelation of white noise") {
        const auto f = correlation_function(white_noise(5000, 1, 77), 0, 0, 12);
        for (const auto& c : f.lags) {
            if (c.lag == 0) {
                CHECK(std::abs(c.normalized_value - 1.0) <= 1e-12);
            } else {
                CHECK(std::abs(c.normalized_value) < 4.0 * c.std_error);
            }
        }
    }

    TEST_CASE("planted lead peaks at +1 with the planted sign") {
        for (double a : {0.3, -0.3}) {
            const auto p = generate_var(planted_pair(a, 21), 5000);
            // column 1 follows column 0: t(i) - t(j) = +1 with i = follower
            const auto f = correlation_function(p, 1, 0, 6);
            const auto peak = std::max_element(f.lags.begin(), f.lags.end(), [](const auto& x, const auto& y) {
                return std::abs(x.normalized_value) < std::abs(y.normalized_value);
            });
            CHECK(peak->lag == 1);
            CHECK((peak->normalized_value > 0) == (a > 0));
            CHECK(std::abs(f.at(-1).normalized_value) < 4.0 * f.at(-1).std_error);
        }
    }
}
