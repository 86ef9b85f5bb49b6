#pragma once

// Growth-rate fits over n, the h_k estimator (greedy counts on samples for
// generic systems, eigenline gap counts for toral systems) and the analytic
// oracles: toral formula, ball geometry, d=1 shift counting.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kent/counting.hpp"
#include "kent/lattice.hpp"
#include "kent/systems.hpp"

namespace kent {

enum class RateMethod { slope, tail_difference };
enum class Quantity { sep_lower, span_upper };

const char* to_string(Quantity q);
Quantity quantity_from_string(const std::string& s);

// Finite-n proxy for limsup (1/n) log count. `slope` is the least-squares
// slope of log-count against n; `tail_difference` uses the last increment.
double growth_rate(const std::vector<std::pair<int, double>>& log_counts, RateMethod method);

struct PerEpsFit {
    double eps = 0.0;
    std::vector<int> ns;
    std::vector<double> log_counts;
    double rate_slope = 0.0;
    double rate_tail = 0.0;
    double fit_residual = 0.0; // rms residual of the slope fit
};

struct EntropyEstimate {
    KIndex k;
    IndexSetMode mode = IndexSetMode::quadrant;
    Quantity quantity = Quantity::sep_lower;
    std::vector<PerEpsFit> per_eps;
    double extrapolated = 0.0;  // slope rate at the smallest eps
    bool rates_monotone = true; // fitted rate non-decreasing as eps decreases
    BoundQualifier qualifier = BoundQualifier::lower_bound;
    std::string sample_descriptor;
};

inline constexpr double kToralEpsFloor = 1e-3;
inline constexpr int kToralMaxN = 7;

struct EstimateConfig {
    std::vector<double> eps_schedule; // strictly decreasing
    int n_min = 3;
    int n_max = 7;
    SampleConfig sampler;
    Quantity quantity = Quantity::sep_lower;
    double density_slack = 0.0; // span-upper only; caller-supplied
};

void validate_eps_schedule(const std::vector<double>& eps_schedule);

// Generic sampled estimator: greedy witnesses over a fixed sample.
template <class S>
EntropyEstimate estimate_sampled(const S& sys, const KIndex& kx, IndexSetMode mode,
                                 const EstimateConfig& cfg);

// Toral estimator (sep-lower): separated-set sizes are counted per common
// eigendirection from the minimal separated gap along that eigenline (the
// gap is found by bisection on brute-force rho_{n,k} distances, never on the
// closed-form corner expression) and multiplied across the two directions.
// Refuses n_max > 7 and eps below the double-precision floor.
EntropyEstimate estimate_toral(const ToralSystem& sys, const KIndex& kx, IndexSetMode mode,
                               const EstimateConfig& cfg);

// log|lambda_A| + log|lambda_B| for an aligned commuting hyperbolic pair;
// throws domain_error when the pair is misaligned.
double toral_formula(const Mat2& a, const Mat2& b);

// Closed-form side lengths of the rho~_{n,k}-ball parallelogram (d=2,
// quadrant semantics).
std::pair<double, double> ball_sides(int n, const KIndex& kx, double eps, double lambda_a,
                                     double lambda_b);

// Independent oracle: the same extents by direct maximization of the two
// coordinate growth factors over the full quadrant index set. Returned
// ordered (along v1, along v2).
std::pair<double, double> ball_sides_bruteforce(const ToralSystem& sys, int n, const KIndex& kx,
                                                double eps);

struct ShiftSepCount {
    int window_length = 0;   // n + 2j
    double log_value = 0.0;  // log sep
    std::optional<int64_t> exact; // present unless overflow-scale
};

// Exact sep(n, k=1, 2^-j) for the d=1 full shift on q symbols.
ShiftSepCount shift_sep_oracle(int q, int n, int j);

struct IterateBoundReport {
    double lhs = 0.0;               // estimate for T^r
    std::vector<double> axis_rates; // estimate for each T^{e_i}
    double rhs = 0.0;               // max |r_i| * axis_rate_i
    double tolerance = 0.1;
    bool pass = false;
};

IterateBoundReport iterate_bound_check(const ToralSystem& sys, const LatticeVector& r,
                                       const KIndex& kx, IndexSetMode mode,
                                       const EstimateConfig& cfg, double tolerance = 0.1);

// --- template definitions ------------------------------------------------

namespace detail {
PerEpsFit fit_counts(double eps, const std::vector<int>& ns, const std::vector<double>& log_counts);
EntropyEstimate assemble_estimate(const KIndex& kx, IndexSetMode mode, Quantity q,
                                  std::vector<PerEpsFit> fits, std::string sample_descriptor);
}

template <class S>
EntropyEstimate estimate_sampled(const S& sys, const KIndex& kx, IndexSetMode mode,
                                 const EstimateConfig& cfg) {
    validate_eps_schedule(cfg.eps_schedule);
    if (cfg.n_max - cfg.n_min + 1 < 3) throw domain_error("estimate: need at least 3 n values");
    const auto sample = sys.sample(cfg.sampler);
    std::vector<PerEpsFit> fits;
    for (double eps : cfg.eps_schedule) {
        std::vector<int> ns;
        std::vector<double> logs;
        for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
            size_t count;
            if (cfg.quantity == Quantity::sep_lower)
                count = greedy_separated(sys, sample, n, kx, mode, eps).size();
            else
                count = greedy_spanning(sys, sample, n, kx, mode, eps, cfg.density_slack).size();
            ns.push_back(n);
            logs.push_back(std::log(static_cast<double>(count)));
        }
        fits.push_back(detail::fit_counts(eps, ns, logs));
    }
    return detail::assemble_estimate(
        kx, mode, cfg.quantity, std::move(fits),
        std::string(sys.descriptor()) + "|" + to_string(cfg.sampler.scheme) + ",count=" +
            std::to_string(cfg.sampler.count) + ",seed=" + std::to_string(cfg.sampler.seed));
}

} // namespace kent
