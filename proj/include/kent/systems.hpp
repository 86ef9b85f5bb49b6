#pragma once

// Concrete Z^d-actions (finite permutation systems, toral systems from
// commuting hyperbolic matrices, one-sided-window shift substrates, torus
// translations) and combinators (product, iterate, subsystem, conjugate).
//
// A system S models:
//   using point_type = ...;
//   int dim() const;                                   // d of the acting group
//   point_type apply(const LatticeVector&, point) const;
//   double dist(point, point) const;
//   std::vector<point_type> sample(const SampleConfig&) const;
//   std::string descriptor() const;

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kent/errors.hpp"
#include "kent/lattice.hpp"
#include "kent/mat2.hpp"

namespace kent {

// ---------------------------------------------------------------------------
// Sampling

enum class SampleScheme { grid, unstable_line, random };

const char* to_string(SampleScheme s);

struct SampleConfig {
    SampleScheme scheme = SampleScheme::grid;
    int64_t count = 1;
    uint64_t seed = 0;
    std::optional<std::array<double, 2>> anchor; // toral schemes only
};

// ---------------------------------------------------------------------------
// Finite permutation systems

class FiniteSystem {
  public:
    using point_type = int;

    // Validates commutativity of the generators and the metric axioms;
    // throws validation_error naming a witness on failure.
    static FiniteSystem make(int d, std::vector<std::vector<int>> generators,
                             std::vector<std::vector<double>> metric_table,
                             std::string name = "finite");

    int dim() const { return d_; }
    int size() const { return n_; }
    point_type apply(const LatticeVector& m, point_type x) const;
    double dist(point_type x, point_type y) const { return metric_[x][y]; }
    std::vector<point_type> sample(const SampleConfig& cfg) const;
    const std::string& descriptor() const { return name_; }

    const std::vector<std::vector<int>>& generators() const { return gens_; }
    const std::vector<std::vector<double>>& metric_table() const { return metric_; }

    // Orbit partition of the full Z^d-action (unions of orbits are exactly
    // the invariant subsets).
    std::vector<std::vector<int>> orbits() const;

  private:
    int d_ = 0;
    int n_ = 0;
    std::vector<std::vector<int>> gens_;
    std::vector<std::vector<int>> inv_gens_;
    std::vector<std::vector<double>> metric_;
    std::string name_;
};

FiniteSystem make_finite(int d, std::vector<std::vector<int>> generators,
                         std::vector<std::vector<double>> metric_table,
                         std::string name = "finite");

// Product of two finite systems over the same acting group: pairs of points,
// componentwise generators, max metric.
FiniteSystem finite_product(const FiniteSystem& s1, const FiniteSystem& s2);

// Index of (x1, x2) in the product's point list, matching finite_product.
int finite_product_index(const FiniteSystem& s1, const FiniteSystem& s2, int x1, int x2);

// Restriction to an invariant subset; throws validation_error naming an
// escaping point when the subset is not invariant.
FiniteSystem finite_subsystem(const FiniteSystem& s, const std::vector<int>& subset);

// Relabel points through the bijection h (h[i] = image of point i) and carry
// the pullback metric, so the result is isometrically conjugate to s.
FiniteSystem finite_conjugate(const FiniteSystem& s, const std::vector<int>& h);

// ---------------------------------------------------------------------------
// Toral systems

enum class TorusMetric { standard, eigen };

const char* to_string(TorusMetric m);

struct EigenData {
    std::array<double, 2> v1{1, 0}; // common eigenvectors, unit length
    std::array<double, 2> v2{0, 1};
    std::vector<double> lambda_v1;  // per-generator eigenvalue along v1
    std::vector<double> lambda_v2;
    bool aligned = false;           // every hyperbolic generator expands along v1
    std::vector<int64_t> det_signs;
};

// Common eigen-decomposition of a pair of commuting hyperbolic matrices.
// Returned lambdas are ordered (A, B); v1 carries A's expanding eigenvalue.
EigenData eigen_data(const Mat2& A, const Mat2& B);

class ToralSystem {
  public:
    using point_type = std::array<double, 2>;

    // Strict validation per make_toral: pairwise commuting, |det| = 1,
    // distinct real eigenvalues off the unit circle for every generator.
    static ToralSystem make(std::vector<Mat2> generators, TorusMetric metric);

    // Internal constructor that also admits identity generators (used by
    // iterates and coordinate sub-actions). Non-identity generators are still
    // required to be hyperbolic and commuting.
    static ToralSystem make_relaxed(std::vector<Mat2> generators, TorusMetric metric);

    int dim() const { return static_cast<int>(gens_.size()); }
    point_type apply(const LatticeVector& m, const point_type& x) const;
    double dist(const point_type& x, const point_type& y) const;
    std::vector<point_type> sample(const SampleConfig& cfg) const;
    std::string descriptor() const;

    const std::vector<Mat2>& generators() const { return gens_; }
    TorusMetric metric_mode() const { return metric_; }
    const EigenData& eigen() const { return eigen_; }

    // Exact integer power Pi A_i^{m_i}, memoized.
    Mat2 power(const LatticeVector& m) const;

    double dist_standard(const point_type& x, const point_type& y) const;
    double dist_eigen(const point_type& x, const point_type& y) const;

  private:
    ToralSystem() = default;
    static ToralSystem build(std::vector<Mat2> gens, TorusMetric metric, bool relaxed);

    std::vector<Mat2> gens_;
    TorusMetric metric_ = TorusMetric::standard;
    EigenData eigen_;
    std::array<double, 4> basis_inv_{1, 0, 0, 1}; // inverse of [v1 v2], row-major

    mutable std::map<LatticeVector, Mat2> power_cache_;
    mutable std::mutex cache_mutex_;

  public:
    ToralSystem(const ToralSystem& o)
        : gens_(o.gens_), metric_(o.metric_), eigen_(o.eigen_), basis_inv_(o.basis_inv_) {}
    ToralSystem& operator=(const ToralSystem& o) {
        gens_ = o.gens_;
        metric_ = o.metric_;
        eigen_ = o.eigen_;
        basis_inv_ = o.basis_inv_;
        std::lock_guard<std::mutex> lk(cache_mutex_);
        power_cache_.clear();
        return *this;
    }
};

ToralSystem make_toral(std::vector<Mat2> generators, TorusMetric metric = TorusMetric::standard);

// The iterate T^r realized exactly: generator i becomes A_i^{r_i}.
ToralSystem toral_iterate(const ToralSystem& s, const LatticeVector& r);

// The sub-action generated by generator i alone, as a Z^d-action
// (identity in every other slot).
ToralSystem toral_subaction(const ToralSystem& s, int axis);

// Conjugation by a unimodular integer matrix P: generators become P A P^{-1}.
ToralSystem toral_conjugate(const ToralSystem& s, const Mat2& p);

// ---------------------------------------------------------------------------
// d = 1 full-shift substrate (combinatorial oracle support)

class ShiftSystem {
  public:
    // A point is a word over {0..q-1} on the window [-W, W], read as a
    // bi-infinite sequence extended by symbol 0.
    using point_type = std::vector<int>;

    ShiftSystem(int q, int window_radius);

    int dim() const { return 1; }
    int alphabet() const { return q_; }
    int window_radius() const { return w_; }
    point_type apply(const LatticeVector& m, const point_type& x) const;
    double dist(const point_type& x, const point_type& y) const;
    std::vector<point_type> sample(const SampleConfig& cfg) const;
    std::string descriptor() const;

    // Every word supported on [-inner, inner] (zeros elsewhere). Used by the
    // exhaustive oracle validation; q^(2*inner+1) points.
    std::vector<point_type> enumerate_words(int inner) const;

    // Enforces W >= n + j before a rho_{n,k} evaluation at eps = 2^-j.
    void require_window(int n, int j) const;

  private:
    int q_;
    int w_;
};

// ---------------------------------------------------------------------------
// Torus translations (isometric actions)

class TranslationSystem {
  public:
    using point_type = std::array<double, 2>;

    // Generator i translates by alpha_i on the 2-torus.
    explicit TranslationSystem(std::vector<std::array<double, 2>> alphas);

    int dim() const { return static_cast<int>(alphas_.size()); }
    point_type apply(const LatticeVector& m, const point_type& x) const;
    double dist(const point_type& x, const point_type& y) const;
    std::vector<point_type> sample(const SampleConfig& cfg) const;
    std::string descriptor() const;

  private:
    std::vector<std::array<double, 2>> alphas_;
};

// ---------------------------------------------------------------------------
// Generic combinators

template <class S1, class S2>
class ProductSystem {
  public:
    using point_type = std::pair<typename S1::point_type, typename S2::point_type>;

    ProductSystem(S1 a, S2 b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_.dim() != b_.dim()) throw domain_error("make_product: dimension mismatch");
    }

    int dim() const { return a_.dim(); }
    point_type apply(const LatticeVector& m, const point_type& x) const {
        return {a_.apply(m, x.first), b_.apply(m, x.second)};
    }
    double dist(const point_type& x, const point_type& y) const {
        return std::max(a_.dist(x.first, y.first), b_.dist(x.second, y.second));
    }
    std::vector<point_type> sample(const SampleConfig& cfg) const {
        auto sa = a_.sample(cfg);
        auto sb = b_.sample(cfg);
        std::vector<point_type> out;
        for (const auto& x : sa) {
            for (const auto& y : sb) {
                out.emplace_back(x, y);
                if (static_cast<int64_t>(out.size()) >= cfg.count) return out;
            }
        }
        return out;
    }
    std::string descriptor() const {
        return "product(" + std::string(a_.descriptor()) + "," + std::string(b_.descriptor()) + ")";
    }

    const S1& first() const { return a_; }
    const S2& second() const { return b_; }

  private:
    S1 a_;
    S2 b_;
};

template <class S1, class S2>
ProductSystem<S1, S2> make_product(S1 a, S2 b) {
    return ProductSystem<S1, S2>(std::move(a), std::move(b));
}

template <class S>
class IterateSystem {
  public:
    using point_type = typename S::point_type;

    IterateSystem(S base, LatticeVector r) : base_(std::move(base)), r_(std::move(r)) {
        if (static_cast<int>(r_.size()) != base_.dim())
            throw domain_error("make_iterate: dimension mismatch");
    }

    int dim() const { return base_.dim(); }
    point_type apply(const LatticeVector& m, const point_type& x) const {
        return base_.apply(star(m, r_), x);
    }
    double dist(const point_type& x, const point_type& y) const { return base_.dist(x, y); }
    std::vector<point_type> sample(const SampleConfig& cfg) const { return base_.sample(cfg); }
    std::string descriptor() const {
        std::string rs;
        for (auto c : r_) rs += (rs.empty() ? "" : ",") + std::to_string(c);
        return "iterate(" + std::string(base_.descriptor()) + ";r=" + rs + ")";
    }

  private:
    S base_;
    LatticeVector r_;
};

template <class S>
IterateSystem<S> make_iterate(S base, LatticeVector r) {
    return IterateSystem<S>(std::move(base), std::move(r));
}

// Conjugated system on h-images: action h . T^m . h_inv. The metric is the
// pullback through h_inv, making h an isometry onto the original system.
template <class S>
class ConjugateSystem {
  public:
    using point_type = typename S::point_type;
    using map_type = std::function<point_type(const point_type&)>;

    ConjugateSystem(S base, map_type h, map_type h_inv, double check_tol = 1e-9)
        : base_(std::move(base)), h_(std::move(h)), hinv_(std::move(h_inv)) {
        // Spot-check that h and h_inv invert each other on a small sample.
        SampleConfig cfg;
        cfg.scheme = SampleScheme::random;
        cfg.count = 8;
        cfg.seed = 7;
        for (const auto& x : base_.sample(cfg)) {
            const auto y = h_(x);
            if (base_.dist(hinv_(y), x) > check_tol)
                throw validation_error("make_conjugate: h_inv(h(x)) deviates from x beyond tolerance");
        }
    }

    int dim() const { return base_.dim(); }
    point_type apply(const LatticeVector& m, const point_type& y) const {
        return h_(base_.apply(m, hinv_(y)));
    }
    double dist(const point_type& y1, const point_type& y2) const {
        return base_.dist(hinv_(y1), hinv_(y2));
    }
    std::vector<point_type> sample(const SampleConfig& cfg) const {
        auto pts = base_.sample(cfg);
        for (auto& p : pts) p = h_(p);
        return pts;
    }
    std::string descriptor() const {
        return "conjugate(" + std::string(base_.descriptor()) + ")";
    }

  private:
    S base_;
    map_type h_;
    map_type hinv_;
};

template <class S>
ConjugateSystem<S> make_conjugate(S base, typename ConjugateSystem<S>::map_type h,
                                  typename ConjugateSystem<S>::map_type h_inv) {
    return ConjugateSystem<S>(std::move(base), std::move(h), std::move(h_inv));
}

} // namespace kent
