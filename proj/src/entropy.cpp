#include "kent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kent {

const char* to_string(Quantity q) {
    return q == Quantity::sep_lower ? "sep-lower" : "span-upper";
}

Quantity quantity_from_string(const std::string& s) {
    if (s == "sep-lower") return Quantity::sep_lower;
    if (s == "span-upper") return Quantity::span_upper;
    throw domain_error("unknown quantity '" + s + "' (expected sep-lower or span-upper)");
}

double growth_rate(const std::vector<std::pair<int, double>>& pts, RateMethod method) {
    if (pts.size() < 3) throw domain_error("growth_rate: need at least 3 points");
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].first <= pts[i - 1].first)
            throw domain_error("growth_rate: n values must be strictly increasing");
    if (method == RateMethod::tail_difference) {
        const auto& a = pts[pts.size() - 2];
        const auto& b = pts.back();
        return (b.second - a.second) / static_cast<double>(b.first - a.first);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double np = static_cast<double>(pts.size());
    for (const auto& [n, y] : pts) {
        sx += n;
        sy += y;
        sxx += static_cast<double>(n) * n;
        sxy += n * y;
    }
    const double denom = np * sxx - sx * sx;
    return (np * sxy - sx * sy) / denom;
}

void validate_eps_schedule(const std::vector<double>& eps_schedule) {
    if (eps_schedule.empty()) throw domain_error("estimate: empty eps schedule");
    for (double e : eps_schedule)
        if (!(e > 0)) throw domain_error("estimate: eps values must be positive");
    for (size_t i = 1; i < eps_schedule.size(); ++i)
        if (eps_schedule[i] >= eps_schedule[i - 1])
            throw domain_error("estimate: eps schedule must be strictly decreasing");
}

namespace detail {

PerEpsFit fit_counts(double eps, const std::vector<int>& ns, const std::vector<double>& logs) {
    PerEpsFit fit;
    fit.eps = eps;
    fit.ns = ns;
    fit.log_counts = logs;
    std::vector<std::pair<int, double>> pts;
    for (size_t i = 0; i < ns.size(); ++i) pts.emplace_back(ns[i], logs[i]);
    fit.rate_slope = growth_rate(pts, RateMethod::slope);
    fit.rate_tail = growth_rate(pts, RateMethod::tail_difference);
    // rms residual around the fitted line
    double mean_n = 0, mean_y = 0;
    for (const auto& [n, y] : pts) {
        mean_n += n;
        mean_y += y;
    }
    mean_n /= pts.size();
    mean_y /= pts.size();
    double ss = 0;
    for (const auto& [n, y] : pts) {
        const double pred = mean_y + fit.rate_slope * (n - mean_n);
        ss += (y - pred) * (y - pred);
    }
    fit.fit_residual = std::sqrt(ss / pts.size());
    return fit;
}

EntropyEstimate assemble_estimate(const KIndex& kx, IndexSetMode mode, Quantity q,
                                  std::vector<PerEpsFit> fits, std::string sample_descriptor) {
    EntropyEstimate est;
    est.k = kx;
    est.mode = mode;
    est.quantity = q;
    est.per_eps = std::move(fits);
    est.extrapolated = est.per_eps.back().rate_slope;
    est.rates_monotone = true;
    for (size_t i = 1; i < est.per_eps.size(); ++i)
        if (est.per_eps[i].rate_slope < est.per_eps[i - 1].rate_slope - 0.02)
            est.rates_monotone = false;
    est.qualifier =
        q == Quantity::sep_lower ? BoundQualifier::lower_bound : BoundQualifier::upper_bound;
    est.sample_descriptor = std::move(sample_descriptor);
    return est;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Toral eigenline estimator

namespace {

// Max over the index set of the absolute coordinate growth factor for the
// given per-generator eigenvalues.
double max_growth(const std::vector<LatticeVector>& idx, const std::vector<double>& lambdas) {
    double best = 0.0;
    for (const auto& m : idx) {
        double g = 1.0;
        for (size_t i = 0; i < lambdas.size(); ++i)
            g *= std::pow(std::abs(lambdas[i]), static_cast<double>(m[i]));
        best = std::max(best, g);
    }
    return best;
}

// Brute-force rho_{n,k} between the origin and t*v, through the system's own
// apply/dist path.
double line_rho(const ToralSystem& sys, const std::vector<LatticeVector>& idx,
                const std::array<double, 2>& v, double t) {
    const ToralSystem::point_type origin{0.0, 0.0};
    ToralSystem::point_type p{t * v[0], t * v[1]};
    p[0] -= std::floor(p[0]);
    p[1] -= std::floor(p[1]);
    double best = 0.0;
    for (const auto& m : idx) best = std::max(best, sys.dist(sys.apply(m, origin), sys.apply(m, p)));
    return best;
}

// Minimal separated gap along the eigenline: smallest t with
// rho_{n,k}(x, x + t v) >= eps. Returns nullopt when no t below ~0.75
// reaches eps (direction cannot separate at this scale).
std::optional<double> min_separated_gap(const ToralSystem& sys,
                                        const std::vector<LatticeVector>& idx,
                                        const std::array<double, 2>& v, double eps,
                                        double growth_hint) {
    double hi = eps / std::max(growth_hint, 1e-300);
    if (!(hi > 0) || !std::isfinite(hi)) hi = 1e-12;
    hi = std::min(hi, 0.75);
    while (line_rho(sys, idx, v, hi) < eps) {
        hi *= 2.0;
        if (hi > 0.75) return std::nullopt;
    }
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (line_rho(sys, idx, v, mid) >= eps)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace

EntropyEstimate estimate_toral(const ToralSystem& sys, const KIndex& kx, IndexSetMode mode,
                               const EstimateConfig& cfg) {
    validate_eps_schedule(cfg.eps_schedule);
    if (cfg.quantity != Quantity::sep_lower)
        throw domain_error("estimate_toral: only sep-lower is supported on the eigenline path; "
                           "use the sampled estimator for span-upper");
    if (cfg.n_max > kToralMaxN)
        throw resource_error("toral estimation refused for n > " + std::to_string(kToralMaxN) +
                             ": the required eigenline spacing falls below the double-precision "
                             "floor; lower n_max");
    if (cfg.n_max - cfg.n_min + 1 < 3) throw domain_error("estimate: need at least 3 n values");
    if (cfg.eps_schedule.back() < kToralEpsFloor)
        throw resource_error("toral estimation refused below eps = " +
                             std::to_string(kToralEpsFloor) + " in double precision");
    if (kx.d != sys.dim()) throw domain_error("estimate_toral: k index dimension mismatch");

    const int64_t budget = std::max<int64_t>(cfg.sampler.count, 2);
    const auto& eg = sys.eigen();
    const std::array<const std::vector<double>*, 2> lambdas{&eg.lambda_v1, &eg.lambda_v2};
    const std::array<std::array<double, 2>, 2> vecs{eg.v1, eg.v2};

    std::vector<PerEpsFit> fits;
    for (double eps : cfg.eps_schedule) {
        // fixed segment extents per eps so the n-dependence comes from the
        // dynamics alone
        const auto idx_max = index_set(cfg.n_max, kx, mode);
        std::array<double, 2> extent{};
        for (int dir = 0; dir < 2; ++dir) {
            const double g_top = max_growth(idx_max, *lambdas[dir]);
            extent[dir] = std::min(0.4, eps * static_cast<double>(budget) * 0.5 / g_top);
        }

        std::vector<int> ns;
        std::vector<double> logs;
        for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
            const auto idx = index_set(n, kx, mode);
            double log_count = 0.0;
            for (int dir = 0; dir < 2; ++dir) {
                const double g = max_growth(idx, *lambdas[dir]);
                const auto gap = min_separated_gap(sys, idx, vecs[dir], eps, g);
                int64_t s = 1;
                if (gap && *gap > 0.0)
                    s = std::min<int64_t>(budget,
                                          static_cast<int64_t>(std::floor(extent[dir] / *gap)) + 1);
                log_count += std::log(static_cast<double>(std::max<int64_t>(s, 1)));
            }
            ns.push_back(n);
            logs.push_back(log_count);
        }
        fits.push_back(detail::fit_counts(eps, ns, logs));
    }

    std::ostringstream desc;
    desc << sys.descriptor() << "|eigenline,K=" << budget << ",seed=" << cfg.sampler.seed;
    return detail::assemble_estimate(kx, mode, cfg.quantity, std::move(fits), desc.str());
}

double toral_formula(const Mat2& a, const Mat2& b) {
    const EigenData e = eigen_data(a, b);
    if (!e.aligned)
        throw domain_error("toral_formula: expanding eigenvalues are misaligned; the closed form "
                           "does not apply, use the estimator");
    return std::log(std::abs(e.lambda_v1[0])) + std::log(std::abs(e.lambda_v1[1]));
}

std::pair<double, double> ball_sides(int n, const KIndex& kx, double eps, double lambda_a,
                                     double lambda_b) {
    if (kx.d != 2) throw domain_error("ball_sides: defined for d=2 only");
    if (n < 1) throw domain_error("ball_sides: n must be >= 1");
    if (!(eps > 0)) throw domain_error("ball_sides: eps must be positive");
    const double la = std::abs(lambda_a), lb = std::abs(lambda_b);
    if (la <= 1.0 || lb <= 1.0)
        throw domain_error("ball_sides: expanding eigenvalues must exceed 1 in absolute value");
    const double e1 = static_cast<double>(n - 1);
    if (kx.k == 1 || kx.k == 4)
        return {2.0 * eps * std::pow(la * lb, -e1), 2.0 * eps};
    return {2.0 * eps * std::pow(la, -e1), 2.0 * eps * std::pow(lb, -e1)};
}

std::pair<double, double> ball_sides_bruteforce(const ToralSystem& sys, int n, const KIndex& kx,
                                                double eps) {
    if (sys.dim() != 2 || kx.d != 2)
        throw domain_error("ball_sides_bruteforce: defined for d=2 only");
    if (!sys.eigen().aligned)
        throw domain_error("ball_sides_bruteforce: system is not an aligned pair");
    if (n < 1) throw domain_error("ball_sides_bruteforce: n must be >= 1");
    const auto idx = index_set(n, kx, IndexSetMode::quadrant);
    const double g1 = max_growth(idx, sys.eigen().lambda_v1);
    const double g2 = max_growth(idx, sys.eigen().lambda_v2);
    return {2.0 * eps / g1, 2.0 * eps / g2};
}

ShiftSepCount shift_sep_oracle(int q, int n, int j) {
    if (q < 2) throw domain_error("shift_sep_oracle: q must be >= 2");
    if (n < 1) throw domain_error("shift_sep_oracle: n must be >= 1");
    if (j < 0) throw domain_error("shift_sep_oracle: j must be >= 0");
    ShiftSepCount out;
    out.window_length = n + 2 * j;
    out.log_value = out.window_length * std::log(static_cast<double>(q));
    if (out.window_length * std::log2(static_cast<double>(q)) <= 62.0) {
        int64_t v = 1;
        for (int i = 0; i < out.window_length; ++i) v *= q;
        out.exact = v;
    }
    return out;
}

IterateBoundReport iterate_bound_check(const ToralSystem& sys, const LatticeVector& r,
                                       const KIndex& kx, IndexSetMode mode,
                                       const EstimateConfig& cfg, double tolerance) {
    if (static_cast<int>(r.size()) != sys.dim())
        throw domain_error("iterate_bound_check: dimension mismatch");
    IterateBoundReport rep;
    rep.tolerance = tolerance;
    rep.lhs = estimate_toral(toral_iterate(sys, r), kx, mode, cfg).extrapolated;
    rep.rhs = 0.0;
    for (int i = 0; i < sys.dim(); ++i) {
        const double axis = estimate_toral(toral_subaction(sys, i), kx, mode, cfg).extrapolated;
        rep.axis_rates.push_back(axis);
        rep.rhs = std::max(rep.rhs, std::abs(static_cast<double>(r[i])) * axis);
    }
    rep.pass = rep.lhs >= rep.rhs - tolerance;
    return rep;
}

} // namespace kent
