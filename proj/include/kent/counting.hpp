#pragma once

// The k-type metric rho_{n,k} and the three counting quantities: exact
// branch-and-bound on finite distance matrices, greedy witnesses on samples.

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kent/lattice.hpp"
#include "kent/systems.hpp"

namespace kent {

enum class BoundQualifier { exact, lower_bound, upper_bound };

const char* to_string(BoundQualifier q);

struct CountValue {
    int64_t value = 0;
    BoundQualifier qualifier = BoundQualifier::exact;
};

struct CountResult {
    int n = 1;
    KIndex k;
    IndexSetMode mode = IndexSetMode::quadrant;
    double eps = 0.0;
    CountValue sep, span, cov;
    std::string sample_descriptor;
};

// rho_{n,k}(x, y): max of base distances over the (n, k) index set.
template <class S>
double k_metric(const S& sys, int n, const KIndex& kx, IndexSetMode mode,
                const typename S::point_type& x, const typename S::point_type& y) {
    double best = 0.0;
    for (const auto& m : index_set(n, kx, mode))
        best = std::max(best, sys.dist(sys.apply(m, x), sys.apply(m, y)));
    return best;
}

// All-pairs rho_{n,k} matrix over a sample, row-major. Parallel over rows;
// thread count capped by the KENT_THREADS environment variable.
template <class S>
std::vector<double> knk_matrix(const S& sys, const std::vector<typename S::point_type>& sample,
                               int n, const KIndex& kx, IndexSetMode mode);

// Greedy maximal separated subset: scan in sample order, keep a point iff it
// is at rho_{n,k} distance >= eps from every kept point. The result is a
// certified separated set, so its size is a lower bound for sep.
template <class S>
std::vector<int> greedy_separated(const S& sys, const std::vector<typename S::point_type>& sample,
                                  int n, const KIndex& kx, IndexSetMode mode, double eps);

// Greedy cover of the sample by (eps - density_slack)-balls. When the sample
// is density_slack-dense under rho_{n,k}, the chosen centers span the whole
// space at radius eps, so their number is an upper bound for span.
template <class S>
std::vector<int> greedy_spanning(const S& sys, const std::vector<typename S::point_type>& sample,
                                 int n, const KIndex& kx, IndexSetMode mode, double eps,
                                 double density_slack);

// --- Exact solvers on a finite distance matrix (indices into the matrix).
// All throw resource_error above the size cap.

inline constexpr int kExactSolverCap = 24;

// Maximum (n,k,eps)-separated cardinality: maximum independent set of the
// graph with edges {x,y : dist < eps}.
int exact_sep_matrix(const std::vector<double>& dist, int n_points, double eps);

// Minimum (n,k,eps)-spanning cardinality: minimum dominating selection under
// strict-< balls.
int exact_span_matrix(const std::vector<double>& dist, int n_points, double eps);

// Minimum (n,k,eps)-covering cardinality: minimum clique cover of the <eps
// graph, i.e. the chromatic number of its complement.
int exact_cov_matrix(const std::vector<double>& dist, int n_points, double eps);

// Convenience wrappers computing rho_{n,k} over all points of a finite system.
int exact_sep(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode, double eps);
int exact_span(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode, double eps);
int exact_cov(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode, double eps);

CountResult exact_counts(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode,
                         double eps);

struct ChainReport {
    int64_t cov_2eps = 0;
    int64_t span_eps = 0;
    int64_t sep_eps = 0;
    int64_t cov_eps = 0;
    bool pass = false;
};

// Computes all four exact numbers and checks
// cov(2 eps) <= span(eps) <= sep(eps) <= cov(eps).
ChainReport chain_check(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode,
                        double eps);

// --- template definitions ------------------------------------------------

namespace detail {
int pair_thread_count();
}

template <class S>
std::vector<double> knk_matrix(const S& sys, const std::vector<typename S::point_type>& sample,
                               int n, const KIndex& kx, IndexSetMode mode) {
    const int np = static_cast<int>(sample.size());
    std::vector<double> out(static_cast<size_t>(np) * np, 0.0);
    const auto idx = index_set(n, kx, mode);
    auto row = [&](int i) {
        for (int j = i + 1; j < np; ++j) {
            double best = 0.0;
            for (const auto& m : idx)
                best = std::max(best, sys.dist(sys.apply(m, sample[i]), sys.apply(m, sample[j])));
            out[static_cast<size_t>(i) * np + j] = best;
            out[static_cast<size_t>(j) * np + i] = best;
        }
    };
    const int threads = detail::pair_thread_count();
    if (threads <= 1 || np < 16) {
        for (int i = 0; i < np; ++i) row(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < np; i = next.fetch_add(1)) row(i);
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

template <class S>
std::vector<int> greedy_separated(const S& sys, const std::vector<typename S::point_type>& sample,
                                  int n, const KIndex& kx, IndexSetMode mode, double eps) {
    if (sample.empty()) throw domain_error("greedy_separated: empty sample");
    const auto idx = index_set(n, kx, mode);
    std::vector<int> kept;
    for (int i = 0; i < static_cast<int>(sample.size()); ++i) {
        bool ok = true;
        for (int j : kept) {
            // separated check: some m must push the pair to >= eps
            bool far = false;
            for (const auto& m : idx) {
                if (sys.dist(sys.apply(m, sample[i]), sys.apply(m, sample[j])) >= eps) {
                    far = true;
                    break;
                }
            }
            if (!far) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(i);
    }
    return kept;
}

template <class S>
std::vector<int> greedy_spanning(const S& sys, const std::vector<typename S::point_type>& sample,
                                 int n, const KIndex& kx, IndexSetMode mode, double eps,
                                 double density_slack) {
    if (sample.empty()) throw domain_error("greedy_spanning: empty sample");
    if (density_slack >= eps)
        throw domain_error("greedy_spanning: sample too coarse for requested radius");
    const double radius = eps - density_slack;
    const auto idx = index_set(n, kx, mode);
    std::vector<char> covered(sample.size(), 0);
    std::vector<int> centers;
    for (int i = 0; i < static_cast<int>(sample.size()); ++i) {
        if (covered[i]) continue;
        centers.push_back(i);
        covered[i] = 1;
        for (int j = i + 1; j < static_cast<int>(sample.size()); ++j) {
            if (covered[j]) continue;
            double best = 0.0;
            for (const auto& m : idx) {
                best = std::max(best, sys.dist(sys.apply(m, sample[i]), sys.apply(m, sample[j])));
                if (best >= radius) break;
            }
            if (best < radius) covered[j] = 1;
        }
    }
    return centers;
}

} // namespace kent
