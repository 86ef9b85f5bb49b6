#include "kent/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace kent {

const char* to_string(SampleScheme s) {
    switch (s) {
        case SampleScheme::grid: return "grid";
        case SampleScheme::unstable_line: return "unstable-line";
        case SampleScheme::random: return "random";
    }
    return "?";
}

const char* to_string(TorusMetric m) {
    return m == TorusMetric::standard ? "standard" : "eigen";
}

// ---------------------------------------------------------------------------
// FiniteSystem

static void validate_permutation(const std::vector<int>& g, int n, int which) {
    if (static_cast<int>(g.size()) != n)
        throw validation_error("generator " + std::to_string(which) + " has wrong length");
    std::vector<char> seen(n, 0);
    for (int v : g) {
        if (v < 0 || v >= n || seen[v])
            throw validation_error("generator " + std::to_string(which) + " is not a permutation");
        seen[v] = 1;
    }
}

FiniteSystem FiniteSystem::make(int d, std::vector<std::vector<int>> generators,
                                std::vector<std::vector<double>> metric_table,
                                std::string name) {
    if (d < 1) throw domain_error("make_finite: d must be >= 1");
    if (static_cast<int>(generators.size()) != d)
        throw validation_error("make_finite: expected " + std::to_string(d) + " generators");
    const int n = static_cast<int>(metric_table.size());
    if (n < 1) throw validation_error("make_finite: empty point set");

    for (int i = 0; i < d; ++i) validate_permutation(generators[i], n, i);

    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            for (int x = 0; x < n; ++x) {
                if (generators[i][generators[j][x]] != generators[j][generators[i][x]])
                    throw validation_error("make_finite: generators " + std::to_string(i) + " and " +
                                           std::to_string(j) + " do not commute at point " +
                                           std::to_string(x));
            }
        }
    }

    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(metric_table[x].size()) != n)
            throw validation_error("make_finite: metric table is not square");
        if (metric_table[x][x] != 0.0)
            throw validation_error("make_finite: nonzero diagonal at point " + std::to_string(x));
        for (int y = 0; y < n; ++y) {
            if (metric_table[x][y] < 0.0)
                throw validation_error("make_finite: negative distance (" + std::to_string(x) + "," +
                                       std::to_string(y) + ")");
            if (metric_table[x][y] != metric_table[y][x])
                throw validation_error("make_finite: asymmetric pair (" + std::to_string(x) + "," +
                                       std::to_string(y) + ")");
            if (x != y && metric_table[x][y] == 0.0)
                throw validation_error("make_finite: indistinguishable distinct points (" +
                                       std::to_string(x) + "," + std::to_string(y) + ")");
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (metric_table[x][z] > metric_table[x][y] + metric_table[y][z] + 1e-12)
                    throw validation_error("make_finite: triangle inequality fails on (" +
                                           std::to_string(x) + "," + std::to_string(y) + "," +
                                           std::to_string(z) + ")");

    FiniteSystem s;
    s.d_ = d;
    s.n_ = n;
    s.gens_ = std::move(generators);
    s.metric_ = std::move(metric_table);
    s.name_ = std::move(name);
    s.inv_gens_.resize(d, std::vector<int>(n));
    for (int i = 0; i < d; ++i)
        for (int x = 0; x < n; ++x) s.inv_gens_[i][s.gens_[i][x]] = x;
    return s;
}

FiniteSystem make_finite(int d, std::vector<std::vector<int>> generators,
                         std::vector<std::vector<double>> metric_table, std::string name) {
    return FiniteSystem::make(d, std::move(generators), std::move(metric_table), std::move(name));
}

FiniteSystem::point_type FiniteSystem::apply(const LatticeVector& m, point_type x) const {
    if (static_cast<int>(m.size()) != d_) throw domain_error("FiniteSystem::apply: dimension mismatch");
    if (x < 0 || x >= n_) throw domain_error("FiniteSystem::apply: point out of range");
    for (int i = 0; i < d_; ++i) {
        const auto& g = m[i] >= 0 ? gens_[i] : inv_gens_[i];
        for (int64_t step = 0; step < std::abs(m[i]); ++step) x = g[x];
    }
    return x;
}

std::vector<int> FiniteSystem::sample(const SampleConfig& cfg) const {
    std::vector<int> all(n_);
    std::iota(all.begin(), all.end(), 0);
    if (cfg.count >= n_ || cfg.scheme != SampleScheme::random) {
        if (cfg.count < n_) all.resize(cfg.count);
        return all;
    }
    std::mt19937_64 rng(cfg.seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(cfg.count);
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<std::vector<int>> FiniteSystem::orbits() const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : gens_)
        for (int x = 0; x < n_; ++x) parent[find(x)] = find(g[x]);
    std::vector<std::vector<int>> groups(n_);
    for (int x = 0; x < n_; ++x) groups[find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& grp : groups)
        if (!grp.empty()) out.push_back(std::move(grp));
    return out;
}

FiniteSystem finite_product(const FiniteSystem& s1, const FiniteSystem& s2) {
    if (s1.dim() != s2.dim()) throw domain_error("finite_product: dimension mismatch");
    const int n1 = s1.size(), n2 = s2.size(), d = s1.dim();
    std::vector<std::vector<int>> gens(d, std::vector<int>(n1 * n2));
    for (int i = 0; i < d; ++i)
        for (int x = 0; x < n1; ++x)
            for (int y = 0; y < n2; ++y)
                gens[i][x * n2 + y] = s1.generators()[i][x] * n2 + s2.generators()[i][y];
    std::vector<std::vector<double>> metric(n1 * n2, std::vector<double>(n1 * n2));
    for (int x = 0; x < n1 * n2; ++x)
        for (int y = 0; y < n1 * n2; ++y)
            metric[x][y] = std::max(s1.metric_table()[x / n2][y / n2],
                                    s2.metric_table()[x % n2][y % n2]);
    return FiniteSystem::make(d, std::move(gens), std::move(metric),
                              "product(" + s1.descriptor() + "," + s2.descriptor() + ")");
}

int finite_product_index(const FiniteSystem& s1, const FiniteSystem& s2, int x1, int x2) {
    (void)s1;
    return x1 * s2.size() + x2;
}

FiniteSystem finite_subsystem(const FiniteSystem& s, const std::vector<int>& subset) {
    if (subset.empty()) throw domain_error("finite_subsystem: empty subset");
    const int n = s.size(), d = s.dim();
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] < 0 || subset[i] >= n) throw domain_error("finite_subsystem: index out of range");
        pos[subset[i]] = static_cast<int>(i);
    }
    const int m = static_cast<int>(subset.size());
    std::vector<std::vector<int>> gens(d, std::vector<int>(m));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < m; ++j) {
            const int img = s.generators()[i][subset[j]];
            if (pos[img] < 0)
                throw validation_error("finite_subsystem: point " + std::to_string(subset[j]) +
                                       " escapes under generator " + std::to_string(i));
            gens[i][j] = pos[img];
        }
    }
    std::vector<std::vector<double>> metric(m, std::vector<double>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) metric[a][b] = s.metric_table()[subset[a]][subset[b]];
    return FiniteSystem::make(d, std::move(gens), std::move(metric),
                              s.descriptor() + "|subsystem");
}

FiniteSystem finite_conjugate(const FiniteSystem& s, const std::vector<int>& h) {
    const int n = s.size(), d = s.dim();
    validate_permutation(h, n, -1);
    std::vector<int> hinv(n);
    for (int x = 0; x < n; ++x) hinv[h[x]] = x;
    std::vector<std::vector<int>> gens(d, std::vector<int>(n));
    for (int i = 0; i < d; ++i)
        for (int y = 0; y < n; ++y) gens[i][y] = h[s.generators()[i][hinv[y]]];
    std::vector<std::vector<double>> metric(n, std::vector<double>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) metric[a][b] = s.metric_table()[hinv[a]][hinv[b]];
    return FiniteSystem::make(d, std::move(gens), std::move(metric),
                              s.descriptor() + "|conjugate");
}

// ---------------------------------------------------------------------------
// ToralSystem

namespace {

struct Hyperbolicity {
    double lambda_plus;  // |.| > 1
    double lambda_minus; // |.| < 1
    std::array<double, 2> v_plus;
    std::array<double, 2> v_minus;
};

std::array<double, 2> unit_eigenvector(const Mat2& m, double lambda) {
    double vx, vy;
    if (m.b != 0) {
        vx = static_cast<double>(m.b);
        vy = lambda - static_cast<double>(m.a);
    } else if (m.c != 0) {
        vx = lambda - static_cast<double>(m.d);
        vy = static_cast<double>(m.c);
    } else {
        // diagonal
        vx = (std::abs(static_cast<double>(m.a) - lambda) < std::abs(static_cast<double>(m.d) - lambda)) ? 1.0 : 0.0;
        vy = 1.0 - vx;
    }
    const double len = std::hypot(vx, vy);
    return {vx / len, vy / len};
}

Hyperbolicity check_hyperbolic(const Mat2& m) {
    const int64_t dt = m.det();
    if (dt != 1 && dt != -1)
        throw validation_error("matrix " + m.str() + " is not unimodular (|det| != 1)");
    const double tr = static_cast<double>(m.trace());
    const double disc = tr * tr - 4.0 * static_cast<double>(dt);
    if (disc <= 0.0)
        throw validation_error("matrix " + m.str() + " has complex or repeated eigenvalues");
    const double sq = std::sqrt(disc);
    const double l1 = (tr + sq) / 2.0;
    const double l2 = (tr - sq) / 2.0;
    if (std::abs(std::abs(l1) - 1.0) < 1e-12 || std::abs(std::abs(l2) - 1.0) < 1e-12)
        throw validation_error("matrix " + m.str() + " has an eigenvalue on the unit circle");
    Hyperbolicity h;
    h.lambda_plus = std::abs(l1) > 1.0 ? l1 : l2;
    h.lambda_minus = std::abs(l1) > 1.0 ? l2 : l1;
    h.v_plus = unit_eigenvector(m, h.lambda_plus);
    h.v_minus = unit_eigenvector(m, h.lambda_minus);
    return h;
}

double eigenvalue_along(const Mat2& g, const std::array<double, 2>& v) {
    const double wx = static_cast<double>(g.a) * v[0] + static_cast<double>(g.b) * v[1];
    const double wy = static_cast<double>(g.c) * v[0] + static_cast<double>(g.d) * v[1];
    const double mu = (std::abs(v[0]) >= std::abs(v[1])) ? wx / v[0] : wy / v[1];
    const double rx = wx - mu * v[0];
    const double ry = wy - mu * v[1];
    if (std::hypot(rx, ry) > 1e-9 * std::max(1.0, std::abs(mu)))
        throw validation_error("matrix " + g.str() + " does not share the common eigenvectors");
    return mu;
}

} // namespace

EigenData eigen_data(const Mat2& a, const Mat2& b) {
    if (!(a * b == b * a))
        throw validation_error("matrices do not commute: AB=" + (a * b).str() + " BA=" + (b * a).str());
    const Hyperbolicity ha = check_hyperbolic(a);
    check_hyperbolic(b);
    EigenData e;
    e.v1 = ha.v_plus;
    e.v2 = ha.v_minus;
    e.lambda_v1 = {ha.lambda_plus, eigenvalue_along(b, ha.v_plus)};
    e.lambda_v2 = {ha.lambda_minus, eigenvalue_along(b, ha.v_minus)};
    e.aligned = std::abs(e.lambda_v1[0]) > 1.0 && std::abs(e.lambda_v1[1]) > 1.0;
    e.det_signs = {a.det(), b.det()};
    return e;
}

ToralSystem ToralSystem::build(std::vector<Mat2> gens, TorusMetric metric, bool relaxed) {
    if (gens.empty()) throw domain_error("make_toral: no generators");
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (!(gens[i] * gens[j] == gens[j] * gens[i]))
                throw validation_error("make_toral: generators " + std::to_string(i) + " and " +
                                       std::to_string(j) + " do not commute: " +
                                       (gens[i] * gens[j]).str() + " != " + (gens[j] * gens[i]).str());

    int first_hyp = -1;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_identity()) {
            if (!relaxed)
                throw validation_error("make_toral: generator " + std::to_string(i) + " is the identity");
            continue;
        }
        check_hyperbolic(gens[i]);
        if (first_hyp < 0) first_hyp = static_cast<int>(i);
    }

    ToralSystem s;
    s.gens_ = std::move(gens);
    s.metric_ = metric;

    if (first_hyp >= 0) {
        const Hyperbolicity h0 = check_hyperbolic(s.gens_[first_hyp]);
        s.eigen_.v1 = h0.v_plus;
        s.eigen_.v2 = h0.v_minus;
        bool aligned = true;
        for (const auto& g : s.gens_) {
            s.eigen_.lambda_v1.push_back(eigenvalue_along(g, s.eigen_.v1));
            s.eigen_.lambda_v2.push_back(eigenvalue_along(g, s.eigen_.v2));
            s.eigen_.det_signs.push_back(g.det());
            if (!g.is_identity() && std::abs(s.eigen_.lambda_v1.back()) <= 1.0) aligned = false;
        }
        s.eigen_.aligned = aligned;
    } else {
        for (const auto& g : s.gens_) {
            s.eigen_.lambda_v1.push_back(1.0);
            s.eigen_.lambda_v2.push_back(1.0);
            s.eigen_.det_signs.push_back(g.det());
        }
        s.eigen_.aligned = false;
    }

    const double ex = s.eigen_.v1[0], ey = s.eigen_.v1[1];
    const double fx = s.eigen_.v2[0], fy = s.eigen_.v2[1];
    const double det = ex * fy - fx * ey;
    if (std::abs(det) < 1e-12) throw validation_error("make_toral: eigenbasis is degenerate");
    s.basis_inv_ = {fy / det, -fx / det, -ey / det, ex / det};
    return s;
}

ToralSystem ToralSystem::make(std::vector<Mat2> generators, TorusMetric metric) {
    return build(std::move(generators), metric, false);
}

ToralSystem ToralSystem::make_relaxed(std::vector<Mat2> generators, TorusMetric metric) {
    return build(std::move(generators), metric, true);
}

ToralSystem make_toral(std::vector<Mat2> generators, TorusMetric metric) {
    return ToralSystem::make(std::move(generators), metric);
}

Mat2 ToralSystem::power(const LatticeVector& m) const {
    if (m.size() != gens_.size()) throw domain_error("ToralSystem::power: dimension mismatch");
    {
        std::lock_guard<std::mutex> lk(cache_mutex_);
        auto it = power_cache_.find(m);
        if (it != power_cache_.end()) return it->second;
    }
    Mat2 acc = Mat2::identity();
    for (size_t i = 0; i < gens_.size(); ++i) acc = acc * kent::power(gens_[i], m[i]);
    std::lock_guard<std::mutex> lk(cache_mutex_);
    power_cache_.emplace(m, acc);
    return acc;
}

ToralSystem::point_type ToralSystem::apply(const LatticeVector& m, const point_type& x) const {
    point_type p{x[0] - std::floor(x[0]), x[1] - std::floor(x[1])};
    return apply_mod1(power(m), p);
}

static double wrap_abs(double t) {
    t = std::abs(t - std::round(t));
    return t;
}

double ToralSystem::dist_standard(const point_type& x, const point_type& y) const {
    return std::max(wrap_abs(x[0] - y[0]), wrap_abs(x[1] - y[1]));
}

double ToralSystem::dist_eigen(const point_type& x, const point_type& y) const {
    double dx = x[0] - y[0], dy = x[1] - y[1];
    dx -= std::floor(dx);
    dy -= std::floor(dy);
    double best = std::numeric_limits<double>::infinity();
    int bt1 = 0, bt2 = 0;
    for (int t1 = -2; t1 <= 2; ++t1) {
        for (int t2 = -2; t2 <= 2; ++t2) {
            const double u = dx + t1, v = dy + t2;
            const double a1 = basis_inv_[0] * u + basis_inv_[1] * v;
            const double a2 = basis_inv_[2] * u + basis_inv_[3] * v;
            const double val = std::max(std::abs(a1), std::abs(a2));
            if (val < best) {
                best = val;
                bt1 = t1;
                bt2 = t2;
            }
        }
    }
    if (std::abs(bt1) == 2 || std::abs(bt2) == 2)
        throw domain_error("eigen metric: translate minimizer on the search boundary; "
                           "enlarge the translate radius");
    return best;
}

double ToralSystem::dist(const point_type& x, const point_type& y) const {
    return metric_ == TorusMetric::standard ? dist_standard(x, y) : dist_eigen(x, y);
}

std::vector<ToralSystem::point_type> ToralSystem::sample(const SampleConfig& cfg) const {
    if (cfg.count < 1) throw domain_error("sample: count must be >= 1");
    std::vector<point_type> out;
    out.reserve(cfg.count);
    switch (cfg.scheme) {
        case SampleScheme::grid: {
            const int64_t side = std::max<int64_t>(1, static_cast<int64_t>(std::floor(std::sqrt(static_cast<double>(cfg.count)) + 1e-9)));
            for (int64_t i = 0; i < side; ++i)
                for (int64_t j = 0; j < side; ++j)
                    out.push_back({static_cast<double>(i) / side, static_cast<double>(j) / side});
            break;
        }
        case SampleScheme::unstable_line: {
            const point_type x0 = cfg.anchor.value_or(point_type{0.0, 0.0});
            const double delta = 1.0 / static_cast<double>(cfg.count);
            for (int64_t i = 0; i < cfg.count; ++i) {
                double px = x0[0] + i * delta * eigen_.v1[0];
                double py = x0[1] + i * delta * eigen_.v1[1];
                px -= std::floor(px);
                py -= std::floor(py);
                out.push_back({px, py});
            }
            break;
        }
        case SampleScheme::random: {
            std::mt19937_64 rng(cfg.seed);
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            for (int64_t i = 0; i < cfg.count; ++i) {
                const double px = uni(rng), py = uni(rng);
                out.push_back({px, py});
            }
            break;
        }
    }
    return out;
}

std::string ToralSystem::descriptor() const {
    std::ostringstream os;
    os << "toral(d=" << dim();
    for (const auto& g : gens_) os << ";" << g.str();
    os << ";metric=" << to_string(metric_) << ")";
    return os.str();
}

ToralSystem toral_iterate(const ToralSystem& s, const LatticeVector& r) {
    if (static_cast<int>(r.size()) != s.dim()) throw domain_error("toral_iterate: dimension mismatch");
    std::vector<Mat2> gens;
    for (int i = 0; i < s.dim(); ++i) gens.push_back(power(s.generators()[i], r[i]));
    return ToralSystem::make_relaxed(std::move(gens), s.metric_mode());
}

ToralSystem toral_subaction(const ToralSystem& s, int axis) {
    if (axis < 0 || axis >= s.dim()) throw domain_error("toral_subaction: axis out of range");
    std::vector<Mat2> gens(s.dim(), Mat2::identity());
    gens[axis] = s.generators()[axis];
    return ToralSystem::make_relaxed(std::move(gens), s.metric_mode());
}

ToralSystem toral_conjugate(const ToralSystem& s, const Mat2& p) {
    const Mat2 pinv = inverse(p); // throws unless |det p| = 1
    std::vector<Mat2> gens;
    for (const auto& g : s.generators()) gens.push_back(p * g * pinv);
    return ToralSystem::make_relaxed(std::move(gens), s.metric_mode());
}

// ---------------------------------------------------------------------------
// ShiftSystem

ShiftSystem::ShiftSystem(int q, int window_radius) : q_(q), w_(window_radius) {
    if (q < 2) throw domain_error("ShiftSystem: alphabet size must be >= 2");
    if (window_radius < 1) throw domain_error("ShiftSystem: window radius must be >= 1");
}

ShiftSystem::point_type ShiftSystem::apply(const LatticeVector& m, const point_type& x) const {
    if (m.size() != 1) throw domain_error("ShiftSystem::apply: dimension mismatch");
    if (static_cast<int>(x.size()) != 2 * w_ + 1)
        throw domain_error("ShiftSystem::apply: word has wrong window length");
    const int64_t s = m[0];
    point_type out(2 * w_ + 1, 0);
    for (int i = -w_; i <= w_; ++i) {
        const int64_t src = i + s;
        out[i + w_] = (src >= -w_ && src <= w_) ? x[src + w_] : 0;
    }
    return out;
}

double ShiftSystem::dist(const point_type& x, const point_type& y) const {
    for (int r = 0; r <= w_; ++r) {
        if (x[w_ + r] != y[w_ + r] || x[w_ - r] != y[w_ - r]) return std::pow(2.0, -r);
    }
    return 0.0;
}

std::vector<ShiftSystem::point_type> ShiftSystem::enumerate_words(int inner) const {
    if (inner > w_) throw domain_error("enumerate_words: inner window exceeds radius");
    std::vector<point_type> out;
    point_type cur(2 * w_ + 1, 0);
    const int lo = w_ - inner, hi = w_ + inner;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos > hi) {
            out.push_back(cur);
            return;
        }
        for (int s = 0; s < q_; ++s) {
            cur[pos] = s;
            self(self, pos + 1);
        }
    };
    rec(rec, lo);
    return out;
}

void ShiftSystem::require_window(int n, int j) const {
    if (w_ < n + j)
        throw domain_error("ShiftSystem: window radius " + std::to_string(w_) +
                           " too small for n=" + std::to_string(n) + ", j=" + std::to_string(j));
}

std::vector<ShiftSystem::point_type> ShiftSystem::sample(const SampleConfig& cfg) const {
    if (cfg.scheme == SampleScheme::random) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<int> sym(0, q_ - 1);
        std::vector<point_type> out;
        for (int64_t i = 0; i < cfg.count; ++i) {
            point_type w(2 * w_ + 1);
            for (auto& c : w) c = sym(rng);
            out.push_back(std::move(w));
        }
        return out;
    }
    int inner = 0;
    while (inner < w_ && std::pow(static_cast<double>(q_), 2 * (inner + 1) + 1) <= static_cast<double>(cfg.count))
        ++inner;
    auto out = enumerate_words(inner);
    if (static_cast<int64_t>(out.size()) > cfg.count) out.resize(cfg.count);
    return out;
}

std::string ShiftSystem::descriptor() const {
    return "shift(q=" + std::to_string(q_) + ",W=" + std::to_string(w_) + ")";
}

// ---------------------------------------------------------------------------
// TranslationSystem

TranslationSystem::TranslationSystem(std::vector<std::array<double, 2>> alphas)
    : alphas_(std::move(alphas)) {
    if (alphas_.empty()) throw domain_error("TranslationSystem: no generators");
}

TranslationSystem::point_type TranslationSystem::apply(const LatticeVector& m,
                                                       const point_type& x) const {
    if (m.size() != alphas_.size()) throw domain_error("TranslationSystem::apply: dimension mismatch");
    double px = x[0], py = x[1];
    for (size_t i = 0; i < alphas_.size(); ++i) {
        px += static_cast<double>(m[i]) * alphas_[i][0];
        py += static_cast<double>(m[i]) * alphas_[i][1];
    }
    px -= std::floor(px);
    py -= std::floor(py);
    return {px, py};
}

double TranslationSystem::dist(const point_type& x, const point_type& y) const {
    return std::max(wrap_abs(x[0] - y[0]), wrap_abs(x[1] - y[1]));
}

std::vector<TranslationSystem::point_type> TranslationSystem::sample(const SampleConfig& cfg) const {
    if (cfg.count < 1) throw domain_error("sample: count must be >= 1");
    std::vector<point_type> out;
    if (cfg.scheme == SampleScheme::unstable_line)
        throw domain_error("unstable-line sampling requires a toral system");
    if (cfg.scheme == SampleScheme::grid) {
        const int64_t side = std::max<int64_t>(1, static_cast<int64_t>(std::floor(std::sqrt(static_cast<double>(cfg.count)) + 1e-9)));
        for (int64_t i = 0; i < side; ++i)
            for (int64_t j = 0; j < side; ++j)
                out.push_back({static_cast<double>(i) / side, static_cast<double>(j) / side});
        return out;
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int64_t i = 0; i < cfg.count; ++i) {
        const double px = uni(rng), py = uni(rng);
        out.push_back({px, py});
    }
    return out;
}

std::string TranslationSystem::descriptor() const {
    std::ostringstream os;
    os << "translation(d=" << alphas_.size() << ")";
    return os.str();
}

} // namespace kent
