#include "kent/counting.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace kent {

const char* to_string(BoundQualifier q) {
    switch (q) {
        case BoundQualifier::exact: return "exact";
        case BoundQualifier::lower_bound: return "lower-bound";
        case BoundQualifier::upper_bound: return "upper-bound";
    }
    return "?";
}

namespace detail {

int pair_thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("KENT_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return static_cast<int>(hw);
}

} // namespace detail

namespace {

using Mask = uint32_t;

void check_cap(int n) {
    if (n > kExactSolverCap)
        throw resource_error("exact solver limited to " + std::to_string(kExactSolverCap) +
                             " points, got " + std::to_string(n));
    if (n < 1) throw domain_error("exact solver: empty point set");
}

// Adjacency of the "< eps" graph: adj[i] has bit j set iff dist(i,j) < eps.
std::vector<Mask> near_graph(const std::vector<double>& dist, int n, double eps) {
    std::vector<Mask> adj(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && dist[static_cast<size_t>(i) * n + j] < eps) adj[i] |= Mask{1} << j;
    return adj;
}

struct MisSolver {
    const std::vector<Mask>& adj;
    int best = 0;

    void run(Mask cand, int size) {
        if (size + std::popcount(cand) <= best) return;
        if (cand == 0) {
            best = std::max(best, size);
            return;
        }
        // branch on a highest-degree candidate
        int pivot = -1, pd = -1;
        for (Mask m = cand; m;) {
            const int v = std::countr_zero(m);
            m &= m - 1;
            const int deg = std::popcount(adj[v] & cand);
            if (deg > pd) {
                pd = deg;
                pivot = v;
            }
        }
        // include pivot
        run(cand & ~(adj[pivot] | (Mask{1} << pivot)), size + 1);
        // exclude pivot
        run(cand & ~(Mask{1} << pivot), size);
    }
};

struct CoverSolver {
    // Minimum number of "sets" (closed <eps balls around candidate centers)
    // covering all points. cover[c] = points dominated by center c.
    const std::vector<Mask>& cover;
    Mask all;
    int n;
    int best;

    void run(Mask covered, int used) {
        if (used >= best) return;
        if (covered == all) {
            best = used;
            return;
        }
        // pick the uncovered point with the fewest covering centers
        int target = -1, tc = INT32_MAX;
        for (int v = 0; v < n; ++v) {
            if (covered & (Mask{1} << v)) continue;
            int c = 0;
            for (int u = 0; u < n; ++u)
                if (cover[u] & (Mask{1} << v)) ++c;
            if (c < tc) {
                tc = c;
                target = v;
            }
        }
        if (target < 0 || tc == 0) return; // uncoverable (cannot happen: v covers itself)
        for (int u = 0; u < n; ++u)
            if (cover[u] & (Mask{1} << target)) run(covered | cover[u], used + 1);
    }
};

struct ColorSolver {
    // Chromatic number by branch and bound over vertices in static order.
    const std::vector<Mask>& adj;
    int n;
    std::vector<int> order;
    std::vector<int> color;
    int best;

    void run(int idx, int used) {
        if (used >= best) return;
        if (idx == n) {
            best = used;
            return;
        }
        const int v = order[idx];
        for (int c = 0; c < std::min(used + 1, best - 1); ++c) {
            bool ok = true;
            for (int u = 0; u < n && ok; ++u)
                if (color[u] == c && (adj[v] & (Mask{1} << u))) ok = false;
            if (!ok) continue;
            color[v] = c;
            run(idx + 1, std::max(used, c + 1));
            color[v] = -1;
        }
    }
};

int greedy_clique(const std::vector<Mask>& adj, int n) {
    // greedy clique in adj, used as a chromatic lower bound
    int best = 0;
    for (int start = 0; start < n; ++start) {
        Mask clique = Mask{1} << start;
        Mask cand = adj[start];
        while (cand) {
            const int v = std::countr_zero(cand);
            clique |= Mask{1} << v;
            cand &= adj[v] & ~(Mask{1} << v);
        }
        best = std::max(best, std::popcount(clique));
    }
    return best;
}

} // namespace

int exact_sep_matrix(const std::vector<double>& dist, int n, double eps) {
    check_cap(n);
    const auto adj = near_graph(dist, n, eps);
    MisSolver solver{adj};
    solver.run(n == 32 ? ~Mask{0} : (Mask{1} << n) - 1, 0);
    return solver.best;
}

int exact_span_matrix(const std::vector<double>& dist, int n, double eps) {
    check_cap(n);
    const auto adj = near_graph(dist, n, eps);
    std::vector<Mask> cover(n);
    for (int i = 0; i < n; ++i) cover[i] = adj[i] | (Mask{1} << i);
    const Mask all = (n == 32 ? ~Mask{0} : (Mask{1} << n) - 1);
    CoverSolver solver{cover, all, n, n};
    // greedy upper bound first so pruning has traction
    {
        Mask covered = 0;
        int used = 0;
        while (covered != all) {
            int bi = 0, bc = -1;
            for (int i = 0; i < n; ++i) {
                const int c = std::popcount(cover[i] & ~covered);
                if (c > bc) {
                    bc = c;
                    bi = i;
                }
            }
            covered |= cover[bi];
            ++used;
        }
        solver.best = used;
    }
    solver.run(0, 0);
    return solver.best;
}

int exact_cov_matrix(const std::vector<double>& dist, int n, double eps) {
    check_cap(n);
    // covering sets of diameter < eps are cliques of the <eps graph; color
    // the complement graph instead
    const auto near = near_graph(dist, n, eps);
    std::vector<Mask> comp(n);
    const Mask all = (n == 32 ? ~Mask{0} : (Mask{1} << n) - 1);
    for (int i = 0; i < n; ++i) comp[i] = all & ~near[i] & ~(Mask{1} << i);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::popcount(comp[a]) > std::popcount(comp[b]); });

    ColorSolver solver{comp, n, order, std::vector<int>(n, -1), n + 1};
    const int lb = greedy_clique(comp, n);
    solver.run(0, 0);
    return std::max(solver.best, lb);
}

static std::vector<double> finite_knk(const FiniteSystem& s, int n, const KIndex& kx,
                                      IndexSetMode mode) {
    std::vector<int> pts(s.size());
    for (int i = 0; i < s.size(); ++i) pts[i] = i;
    return knk_matrix(s, pts, n, kx, mode);
}

int exact_sep(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode, double eps) {
    return exact_sep_matrix(finite_knk(s, n, kx, mode), s.size(), eps);
}

int exact_span(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode, double eps) {
    return exact_span_matrix(finite_knk(s, n, kx, mode), s.size(), eps);
}

int exact_cov(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode, double eps) {
    return exact_cov_matrix(finite_knk(s, n, kx, mode), s.size(), eps);
}

CountResult exact_counts(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode,
                         double eps) {
    const auto d = finite_knk(s, n, kx, mode);
    CountResult r;
    r.n = n;
    r.k = kx;
    r.mode = mode;
    r.eps = eps;
    r.sep = {exact_sep_matrix(d, s.size(), eps), BoundQualifier::exact};
    r.span = {exact_span_matrix(d, s.size(), eps), BoundQualifier::exact};
    r.cov = {exact_cov_matrix(d, s.size(), eps), BoundQualifier::exact};
    r.sample_descriptor = s.descriptor() + "|all-points";
    return r;
}

ChainReport chain_check(const FiniteSystem& s, int n, const KIndex& kx, IndexSetMode mode,
                        double eps) {
    const auto d = finite_knk(s, n, kx, mode);
    ChainReport rep;
    rep.cov_2eps = exact_cov_matrix(d, s.size(), 2 * eps);
    rep.span_eps = exact_span_matrix(d, s.size(), eps);
    rep.sep_eps = exact_sep_matrix(d, s.size(), eps);
    rep.cov_eps = exact_cov_matrix(d, s.size(), eps);
    rep.pass = rep.cov_2eps <= rep.span_eps && rep.span_eps <= rep.sep_eps &&
               rep.sep_eps <= rep.cov_eps;
    return rep;
}

} // namespace kent
