#include <doctest.h>

#include <cmath>
#include <set>

#include "kent/counting.hpp"
#include "kent/entropy.hpp"
#include "kent/verify.hpp"

using namespace kent;

TEST_CASE("growth_rate on synthetic data") {
    const std::vector<std::pair<int, double>> lin{{2, 1.4}, {3, 2.1}, {4, 2.8}};
    CHECK(growth_rate(lin, RateMethod::slope) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(growth_rate(lin, RateMethod::tail_difference) == doctest::Approx(0.7).epsilon(1e-12));
    const std::vector<std::pair<int, double>> flat{{1, 3.0}, {2, 3.0}, {5, 3.0}};
    CHECK(growth_rate(flat, RateMethod::slope) == doctest::Approx(0.0));
    CHECK_THROWS_AS(growth_rate({{1, 1.0}, {2, 2.0}}, RateMethod::slope), domain_error);
    CHECK_THROWS_AS(growth_rate({{1, 1.0}, {1, 2.0}, {2, 3.0}}, RateMethod::slope), domain_error);
}

TEST_CASE("eps schedule validation") {
    CHECK_NOTHROW(validate_eps_schedule({0.1, 0.05, 0.01}));
    CHECK_THROWS_AS(validate_eps_schedule({}), domain_error);
    CHECK_THROWS_AS(validate_eps_schedule({0.1, 0.1}), domain_error);
    CHECK_THROWS_AS(validate_eps_schedule({0.01, 0.1}), domain_error);
    CHECK_THROWS_AS(validate_eps_schedule({0.1, -0.05}), domain_error);
}

TEST_CASE("shift_sep_oracle closed form and growth rate") {
    CHECK(shift_sep_oracle(2, 1, 0).exact == 2);
    CHECK(shift_sep_oracle(2, 2, 0).exact == 4);
    CHECK(shift_sep_oracle(2, 3, 1).exact == 32);
    CHECK(shift_sep_oracle(3, 2, 1).exact == 81);
    CHECK_FALSE(shift_sep_oracle(2, 60, 10).exact.has_value()); // overflow scale
    CHECK(shift_sep_oracle(2, 60, 10).log_value == doctest::Approx(80 * std::log(2.0)));
    CHECK_THROWS_AS(shift_sep_oracle(1, 2, 0), domain_error);
    CHECK_THROWS_AS(shift_sep_oracle(2, 0, 0), domain_error);
    CHECK_THROWS_AS(shift_sep_oracle(2, 2, -1), domain_error);

    for (int j : {0, 1}) {
        std::vector<std::pair<int, double>> pts;
        for (int n = 2; n <= 6; ++n) pts.emplace_back(n, shift_sep_oracle(2, n, j).log_value);
        CHECK(growth_rate(pts, RateMethod::slope) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    }
}

TEST_CASE("shift_sep_oracle validated by exhaustive enumeration") {
    // q = 2, n <= 3, j <= 1 over every word supported on [-4, 4]: the sep
    // count equals the number of distinct restrictions to [-j, n-1+j], and a
    // pair is >= 2^-j separated under rho_{n,1} iff those restrictions differ.
    const ShiftSystem sh(2, 4);
    const auto words = sh.enumerate_words(4);
    REQUIRE(words.size() == 512);
    const KIndex k1 = k_bits(1, 1);
    for (int n = 1; n <= 3; ++n) {
        for (int j = 0; j <= 1; ++j) {
            sh.require_window(n, j);
            const double eps = std::pow(2.0, -j);
            auto window_key = [&](const ShiftSystem::point_type& w) {
                std::vector<int> key;
                for (int i = -j; i <= n - 1 + j; ++i) key.push_back(w[i + 4]);
                return key;
            };
            std::set<std::vector<int>> classes;
            for (const auto& w : words) classes.insert(window_key(w));
            CHECK(static_cast<int64_t>(classes.size()) == *shift_sep_oracle(2, n, j).exact);

            for (size_t a = 0; a < words.size(); a += 7) {
                for (size_t b = a + 1; b < words.size(); b += 5) {
                    const bool differ = window_key(words[a]) != window_key(words[b]);
                    const double rho =
                        k_metric(sh, n, k1, IndexSetMode::quadrant, words[a], words[b]);
                    CHECK((rho >= eps) == differ);
                }
            }
        }
    }
}

TEST_CASE("toral_formula") {
    const Mat2 a = cat_map();
    const double la = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(toral_formula(a, cat_map_squared()) == doctest::Approx(3 * std::log(la)).epsilon(1e-12));
    CHECK(toral_formula(a, a) == doctest::Approx(2 * std::log(la)).epsilon(1e-12));
    CHECK_THROWS_AS(toral_formula(a, inverse(a)), domain_error); // misaligned
}

TEST_CASE("ball_sides closed form") {
    for (int k = 1; k <= 4; ++k) {
        const auto s = ball_sides(1, k_bits(k, 2), 0.1, 2.0, 3.0);
        CHECK(s.first == doctest::Approx(0.2));
        CHECK(s.second == doctest::Approx(0.2));
    }
    const auto s1 = ball_sides(3, k_bits(1, 2), 0.1, 2.0, 3.0);
    CHECK(s1.first == doctest::Approx(0.2 / 36.0).epsilon(1e-12));
    CHECK(s1.second == doctest::Approx(0.2).epsilon(1e-12));
    const auto s2 = ball_sides(3, k_bits(2, 2), 0.1, 2.0, 3.0);
    CHECK(s2.first == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(s2.second == doctest::Approx(0.2 / 9.0).epsilon(1e-12));
    // k=1 and k=4 coincide, k=2 and k=3 coincide
    CHECK(ball_sides(4, k_bits(4, 2), 0.01, 2.0, 3.0) == ball_sides(4, k_bits(1, 2), 0.01, 2.0, 3.0));
    CHECK(ball_sides(4, k_bits(3, 2), 0.01, 2.0, 3.0) == ball_sides(4, k_bits(2, 2), 0.01, 2.0, 3.0));
    CHECK_THROWS_AS(ball_sides(0, k_bits(1, 2), 0.1, 2.0, 3.0), domain_error);
    CHECK_THROWS_AS(ball_sides(3, k_bits(1, 2), -0.1, 2.0, 3.0), domain_error);
    CHECK_THROWS_AS(ball_sides(3, k_bits(1, 2), 0.1, 0.5, 3.0), domain_error);
    CHECK_THROWS_AS(ball_sides(3, k_bits(1, 1), 0.1, 2.0, 3.0), domain_error);
}

TEST_CASE("ball_sides against the brute-force oracle") {
    const ToralSystem sys = make_toral({cat_map(), cat_map_squared()}, TorusMetric::eigen);
    const double la = sys.eigen().lambda_v1[0];
    const double lb = sys.eigen().lambda_v1[1];
    for (int k = 1; k <= 4; ++k) {
        for (int n = 1; n <= 5; ++n) {
            auto closed = ball_sides(n, k_bits(k, 2), 0.05, la, lb);
            auto brute = ball_sides_bruteforce(sys, n, k_bits(k, 2), 0.05);
            if (closed.first > closed.second) std::swap(closed.first, closed.second);
            if (brute.first > brute.second) std::swap(brute.first, brute.second);
            CHECK(closed.first == doctest::Approx(brute.first).epsilon(1e-10));
            CHECK(closed.second == doctest::Approx(brute.second).epsilon(1e-10));
        }
    }
    const ToralSystem mis = make_toral({cat_map(), inverse(cat_map())});
    CHECK_THROWS_AS(ball_sides_bruteforce(mis, 2, k_bits(1, 2), 0.1), domain_error);
}

TEST_CASE("estimate_toral refusals") {
    const ToralSystem sys = make_toral({cat_map(), cat_map_squared()});
    EstimateConfig cfg;
    cfg.eps_schedule = {0.05, 0.02, 0.01};
    cfg.n_min = 3;
    cfg.n_max = 7;
    cfg.sampler.count = 1000;
    const KIndex kx = k_bits(1, 2);

    auto bad = cfg;
    bad.eps_schedule = {0.01, 0.0005};
    CHECK_THROWS_AS(estimate_toral(sys, kx, IndexSetMode::quadrant, bad), resource_error);
    bad = cfg;
    bad.n_max = 8;
    CHECK_THROWS_AS(estimate_toral(sys, kx, IndexSetMode::quadrant, bad), resource_error);
    bad = cfg;
    bad.n_max = 4;
    CHECK_THROWS_AS(estimate_toral(sys, kx, IndexSetMode::quadrant, bad), domain_error);
    bad = cfg;
    bad.quantity = Quantity::span_upper;
    CHECK_THROWS_AS(estimate_toral(sys, kx, IndexSetMode::quadrant, bad), domain_error);
    CHECK_THROWS_AS(estimate_toral(sys, k_bits(1, 1), IndexSetMode::quadrant, cfg), domain_error);
}

TEST_CASE("estimate_toral: single cat map hits the classical value") {
    const ToralSystem sys = make_toral({cat_map()});
    EstimateConfig cfg;
    cfg.eps_schedule = {0.05, 0.02, 0.01};
    cfg.n_min = 3;
    cfg.n_max = 7;
    cfg.sampler.count = 200000;
    const EntropyEstimate est = estimate_toral(sys, k_bits(1, 1), IndexSetMode::quadrant, cfg);
    const double target = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    CHECK(est.extrapolated == doctest::Approx(target).epsilon(0.01));
    CHECK(est.qualifier == BoundQualifier::lower_bound);
    CHECK(est.rates_monotone);
    REQUIRE(est.per_eps.size() == 3);
    for (const auto& f : est.per_eps) CHECK(f.ns.size() == 5);
    // determinism
    const EntropyEstimate again = estimate_toral(sys, k_bits(1, 1), IndexSetMode::quadrant, cfg);
    CHECK(again.extrapolated == est.extrapolated);
    CHECK(again.per_eps[0].log_counts == est.per_eps[0].log_counts);
}

TEST_CASE("estimate_sampled on an isometric system is flat") {
    const TranslationSystem t({{0.21, 0.34}, {0.58, 0.13}});
    EstimateConfig cfg;
    cfg.eps_schedule = {0.25, 0.125};
    cfg.n_min = 3;
    cfg.n_max = 5;
    cfg.sampler.scheme = SampleScheme::grid;
    cfg.sampler.count = 100;
    const EntropyEstimate lower = estimate_sampled(t, k_bits(1, 2), IndexSetMode::quadrant, cfg);
    CHECK(lower.extrapolated == doctest::Approx(0.0));
    CHECK(lower.qualifier == BoundQualifier::lower_bound);

    auto up = cfg;
    up.quantity = Quantity::span_upper;
    up.density_slack = 0.05;
    const EntropyEstimate upper = estimate_sampled(t, k_bits(1, 2), IndexSetMode::quadrant, up);
    CHECK(upper.qualifier == BoundQualifier::upper_bound);
    CHECK(upper.extrapolated == doctest::Approx(0.0));
    // sep-lower rate does not exceed span-upper rate
    CHECK(lower.extrapolated <= upper.extrapolated + 1e-9);
}

TEST_CASE("iterate_bound_check input validation") {
    const ToralSystem sys = make_toral({cat_map(), cat_map_squared()});
    EstimateConfig cfg;
    cfg.eps_schedule = {0.05, 0.02, 0.01};
    cfg.sampler.count = 1000;
    CHECK_THROWS_AS(iterate_bound_check(sys, {1}, k_bits(1, 2), IndexSetMode::quadrant, cfg),
                    domain_error);
}

TEST_CASE("quantity strings") {
    CHECK(quantity_from_string("sep-lower") == Quantity::sep_lower);
    CHECK(quantity_from_string("span-upper") == Quantity::span_upper);
    CHECK_THROWS_AS(quantity_from_string("nope"), domain_error);
    CHECK(std::string(to_string(Quantity::span_upper)) == "span-upper");
}
