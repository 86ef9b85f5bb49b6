#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "kent/counting.hpp"
#include "kent/verify.hpp"

using namespace kent;

namespace {

// Four points of a unit square under the Euclidean metric, identity action.
FiniteSystem metric_square() {
    const double r2 = std::sqrt(2.0);
    std::vector<std::vector<double>> m{
        {0, 1, 1, r2}, {1, 0, r2, 1}, {1, r2, 0, 1}, {r2, 1, 1, 0}};
    return FiniteSystem::make(1, {{0, 1, 2, 3}}, m, "square");
}

FiniteSystem discrete_points(int n) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 1.0));
    for (int i = 0; i < n; ++i) m[i][i] = 0.0;
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    return FiniteSystem::make(1, {id}, m, "discrete");
}

const KIndex k1 = k_bits(1, 1);

} // namespace

TEST_CASE("k_metric basics") {
    const FiniteSystem s = metric_square();
    // n=1: any k and mode reduce to the base metric
    for (IndexSetMode mode : {IndexSetMode::strict, IndexSetMode::quadrant})
        for (int k = 1; k <= 2; ++k)
            CHECK(k_metric(s, 1, k_bits(k, 1), mode, 0, 3) == std::sqrt(2.0));
    // identity action: rho_{n,k} = rho for all n
    for (int n = 1; n <= 4; ++n) CHECK(k_metric(s, n, k1, IndexSetMode::quadrant, 0, 1) == 1.0);
}

TEST_CASE("d=1 reduction: quadrant rho_{n,1} is the classical Bowen metric") {
    std::mt19937_64 rng(17);
    const FiniteSystem s = random_finite_system(rng, 1, 8);
    for (int n = 1; n <= 4; ++n) {
        for (int x = 0; x < s.size(); ++x) {
            for (int y = 0; y < s.size(); ++y) {
                double fwd = 0.0, bwd = 0.0;
                for (int j = 0; j < n; ++j) {
                    fwd = std::max(fwd, s.dist(s.apply({j}, x), s.apply({j}, y)));
                    bwd = std::max(bwd, s.dist(s.apply({-j}, x), s.apply({-j}, y)));
                }
                CHECK(k_metric(s, n, k1, IndexSetMode::quadrant, x, y) == fwd);
                // k=2 is the classical metric of the inverse map
                CHECK(k_metric(s, n, k_bits(2, 1), IndexSetMode::quadrant, x, y) == bwd);
            }
        }
    }
}

TEST_CASE("rho_{n,k} monotonicity and metric axioms") {
    std::mt19937_64 rng(23);
    const FiniteSystem s = random_finite_system(rng, 2, 8);
    for (int k = 1; k <= 4; ++k) {
        const KIndex kx = k_bits(k, 2);
        for (IndexSetMode mode : {IndexSetMode::strict, IndexSetMode::quadrant}) {
            for (int x = 0; x < s.size(); ++x) {
                for (int y = 0; y < s.size(); ++y) {
                    const double d1 = k_metric(s, 1, kx, mode, x, y);
                    CHECK(d1 == s.dist(x, y));
                    double prev = d1;
                    for (int n = 2; n <= 4; ++n) {
                        const double dn = k_metric(s, n, kx, mode, x, y);
                        CHECK(dn >= prev);     // monotone in n
                        CHECK(dn >= s.dist(x, y)); // origin is in every index set
                        prev = dn;
                    }
                    CHECK(k_metric(s, 3, kx, mode, x, y) == k_metric(s, 3, kx, mode, y, x));
                    for (int z = 0; z < s.size(); ++z)
                        CHECK(k_metric(s, 3, kx, mode, x, y) <=
                              k_metric(s, 3, kx, mode, x, z) + k_metric(s, 3, kx, mode, z, y));
                }
            }
        }
    }
}

TEST_CASE("exact solvers on the metric square") {
    const FiniteSystem s = metric_square();
    // eps=1.2: side pairs are < eps, diagonals are not
    CHECK(exact_sep(s, 1, k1, IndexSetMode::quadrant, 1.2) == 2);
    CHECK(exact_span(s, 1, k1, IndexSetMode::quadrant, 1.2) == 2);
    CHECK(exact_cov(s, 1, k1, IndexSetMode::quadrant, 1.2) == 2);
    // eps below every distance: all points isolated
    CHECK(exact_sep(s, 1, k1, IndexSetMode::quadrant, 0.5) == 4);
    CHECK(exact_span(s, 1, k1, IndexSetMode::quadrant, 0.5) == 4);
    CHECK(exact_cov(s, 1, k1, IndexSetMode::quadrant, 0.5) == 4);
    // eps above the diameter: one ball suffices
    CHECK(exact_sep(s, 1, k1, IndexSetMode::quadrant, 2.0) == 1);
    CHECK(exact_span(s, 1, k1, IndexSetMode::quadrant, 2.0) == 1);
    CHECK(exact_cov(s, 1, k1, IndexSetMode::quadrant, 2.0) == 1);
}

TEST_CASE("strictness conventions at ties") {
    // two points at distance exactly eps: separated, but neither spans the
    // other and no diameter-<eps set contains both
    const FiniteSystem s = discrete_points(2);
    CHECK(exact_sep(s, 1, k1, IndexSetMode::quadrant, 1.0) == 2);
    CHECK(exact_span(s, 1, k1, IndexSetMode::quadrant, 1.0) == 2);
    CHECK(exact_cov(s, 1, k1, IndexSetMode::quadrant, 1.0) == 2);
}

TEST_CASE("chain on the discrete system") {
    const FiniteSystem s = discrete_points(6);
    const ChainReport rep = chain_check(s, 2, k1, IndexSetMode::quadrant, 0.5);
    CHECK(rep.pass);
    CHECK(rep.cov_2eps == 6);
    CHECK(rep.span_eps == 6);
    CHECK(rep.sep_eps == 6);
    CHECK(rep.cov_eps == 6);
    const ChainReport wide = chain_check(s, 2, k1, IndexSetMode::quadrant, 1.5);
    CHECK(wide.pass);
    CHECK(wide.cov_2eps == 1);
    CHECK(wide.sep_eps == 1);
}

TEST_CASE("exact solver size cap") {
    const FiniteSystem s = discrete_points(25);
    CHECK_THROWS_AS(exact_sep(s, 1, k1, IndexSetMode::quadrant, 0.5), resource_error);
    CHECK_THROWS_AS(exact_span(s, 1, k1, IndexSetMode::quadrant, 0.5), resource_error);
    CHECK_THROWS_AS(exact_cov(s, 1, k1, IndexSetMode::quadrant, 0.5), resource_error);
}

TEST_CASE("exact counts: monotone in eps and n") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const FiniteSystem s = random_finite_system(rng, 2, 9);
        const KIndex kx = k_bits(1 + trial % 4, 2);
        int prev_sep = s.size() + 1, prev_span = s.size() + 1, prev_cov = s.size() + 1;
        for (double eps : {0.01, 0.1, 0.3, 0.6, 1.2}) {
            const int sep = exact_sep(s, 2, kx, IndexSetMode::quadrant, eps);
            const int span = exact_span(s, 2, kx, IndexSetMode::quadrant, eps);
            const int cov = exact_cov(s, 2, kx, IndexSetMode::quadrant, eps);
            CHECK(sep <= prev_sep);
            CHECK(span <= prev_span);
            CHECK(cov <= prev_cov);
            prev_sep = sep;
            prev_span = span;
            prev_cov = cov;
        }
        int nsep = 0, nspan = 0, ncov = 0;
        for (int n = 1; n <= 3; ++n) {
            const int sep = exact_sep(s, n, kx, IndexSetMode::quadrant, 0.2);
            const int span = exact_span(s, n, kx, IndexSetMode::quadrant, 0.2);
            const int cov = exact_cov(s, n, kx, IndexSetMode::quadrant, 0.2);
            CHECK(sep >= nsep);
            CHECK(span >= nspan);
            CHECK(cov >= ncov);
            nsep = sep;
            nspan = span;
            ncov = cov;
        }
    }
}

TEST_CASE("exact_counts record and qualifier") {
    const FiniteSystem s = metric_square();
    const CountResult r = exact_counts(s, 1, k1, IndexSetMode::quadrant, 1.2);
    CHECK(r.sep.value == 2);
    CHECK(r.sep.qualifier == BoundQualifier::exact);
    CHECK(r.span.qualifier == BoundQualifier::exact);
    CHECK(r.cov.qualifier == BoundQualifier::exact);
}

TEST_CASE("greedy_separated is a certified lower-bound witness") {
    // identity action on the 4-point torus grid, eps = 0.4: all kept
    const TranslationSystem idact({{0.0, 0.0}, {0.0, 0.0}});
    SampleConfig cfg;
    cfg.scheme = SampleScheme::grid;
    cfg.count = 4;
    const auto sample = idact.sample(cfg);
    const auto kept = greedy_separated(idact, sample, 2, k_bits(1, 2), IndexSetMode::quadrant, 0.4);
    CHECK(kept.size() == 4);
    // eps above the diameter: singleton
    CHECK(greedy_separated(idact, sample, 2, k_bits(1, 2), IndexSetMode::quadrant, 0.9).size() == 1);

    // greedy output is separated and bounded by the exact optimum
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const FiniteSystem s = random_finite_system(rng, 2, 9);
        std::vector<int> pts(s.size());
        for (int i = 0; i < s.size(); ++i) pts[i] = i;
        const KIndex kx = k_bits(1 + trial % 4, 2);
        for (double eps : {0.1, 0.3, 0.6}) {
            const auto g = greedy_separated(s, pts, 2, kx, IndexSetMode::quadrant, eps);
            for (size_t i = 0; i < g.size(); ++i)
                for (size_t j = i + 1; j < g.size(); ++j)
                    CHECK(k_metric(s, 2, kx, IndexSetMode::quadrant, g[i], g[j]) >= eps);
            CHECK(static_cast<int>(g.size()) <= exact_sep(s, 2, kx, IndexSetMode::quadrant, eps));
        }
    }
    CHECK_THROWS_AS(greedy_separated(idact, std::vector<TranslationSystem::point_type>{}, 1,
                                     k_bits(1, 2), IndexSetMode::quadrant, 0.1),
                    domain_error);
}

TEST_CASE("greedy_spanning covers the sample") {
    const TranslationSystem idact({{0.0, 0.0}, {0.0, 0.0}});
    SampleConfig cfg;
    cfg.scheme = SampleScheme::grid;
    cfg.count = 400; // 20x20 grid, spacing 0.05
    const auto sample = idact.sample(cfg);
    const auto centers =
        greedy_spanning(idact, sample, 1, k_bits(1, 2), IndexSetMode::quadrant, 0.3, 0.05);
    CHECK(centers.size() >= 1);
    CHECK(centers.size() <= 16); // ceil(1/0.25)^2 area bound
    for (const auto& p : sample) {
        double best = 1e9;
        for (int c : centers) best = std::min(best, idact.dist(p, sample[c]));
        CHECK(best < 0.3);
    }
    CHECK_THROWS_AS(
        greedy_spanning(idact, sample, 1, k_bits(1, 2), IndexSetMode::quadrant, 0.3, 0.3),
        domain_error);
}

TEST_CASE("knk_matrix: symmetry, zero diagonal, thread independence") {
    std::mt19937_64 rng(41);
    const FiniteSystem s = random_finite_system(rng, 2, 10);
    std::vector<int> pts(s.size());
    for (int i = 0; i < s.size(); ++i) pts[i] = i;
    const auto m = knk_matrix(s, pts, 3, k_bits(2, 2), IndexSetMode::quadrant);
    const int np = s.size();
    for (int i = 0; i < np; ++i) {
        CHECK(m[i * np + i] == 0.0);
        for (int j = 0; j < np; ++j) CHECK(m[i * np + j] == m[j * np + i]);
    }
    setenv("KENT_THREADS", "1", 1);
    const auto m1 = knk_matrix(s, pts, 3, k_bits(2, 2), IndexSetMode::quadrant);
    unsetenv("KENT_THREADS");
    CHECK(m == m1);
}

TEST_CASE("chain inequality on seeded random systems (spot run)") {
    const VerifyReport rep = verify_chain(/*seed=*/99, /*systems=*/10);
    CHECK(rep.pass);
    CHECK(rep.details["failures"].empty());
}
