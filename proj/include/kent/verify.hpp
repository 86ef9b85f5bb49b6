#pragma once

// Count-level property verifiers behind `kent verify <which>` and the
// acceptance suite. Each runs a pinned experiment and reports pass/fail with
// a machine-readable witness.

#include <cstdint>
#include <random>
#include <string>

#include <json.hpp>

#include "kent/systems.hpp"

namespace kent {

struct VerifyReport {
    std::string name;
    bool pass = false;
    nlohmann::json details;
};

// Seeded random finite system: 2..max_points grid-embedded points (exact
// sup-norm metric) with commuting generators (powers of one permutation, or
// an identity slot).
FiniteSystem random_finite_system(std::mt19937_64& rng, int d, int max_points);

// cov(2e) <= span(e) <= sep(e) <= cov(e) on `systems` random finite systems,
// exact brute force, all k, both modes, n <= 3, 5 eps quantiles each.
VerifyReport verify_chain(uint64_t seed = 1, int systems = 100);

// Count-level product laws on random finite pairs plus the exact shift-rate
// identity log q1 + log q2 = log(q1 q2).
VerifyReport verify_product(uint64_t seed = 2, int pairs = 50);

// sep_{A_i} <= sep_X and span_X <= span_{A_1} + span_{A_2} for invariant
// covering subsets of random finite systems.
VerifyReport verify_union(uint64_t seed = 3, int systems = 50);

// sep_{T_2}(n,k,eps) <= sep_{T_1}(n,k,delta(eps)) across explicit finite
// factor maps with exactly computed modulus.
VerifyReport verify_factor(uint64_t seed = 4, int systems = 25);

// Exact pullback-metric identity on finite systems; toral estimate invariance
// under a swap conjugation within 5%.
VerifyReport verify_conjugacy(uint64_t seed = 5);

// Closed-form rho~_{n,k}-ball sides against brute-force maximization on the
// cat-map pair, absolute error <= 1e-9.
VerifyReport verify_torus_balls();

// Standard vs eigen torus metrics: two-sided Lipschitz bounds from the
// eigenbasis with 10% slack, and matching toral estimates within 5%.
VerifyReport verify_metric_equivalence(uint64_t seed = 6);

// h_k(T^r) >= max |r_i| h_k(T^{e_i}) - 0.1 for r = (2,1) on the cat-map
// pair, and estimate(T^r) within 10% of the closed form.
VerifyReport verify_iterate();

// Single cat map as a Z-action: k=1 and k=2 estimates agree within 5% and
// match log lambda_A within 10%.
VerifyReport verify_d1_symmetry();

// Cyclic-rotation finite system and torus translation: extrapolated rates
// <= 0.05 for every k.
VerifyReport verify_isometry();

VerifyReport run_verifier(const std::string& which);

// The worked toral example: A = [[2,1],[1,1]], B = A^2.
Mat2 cat_map();
Mat2 cat_map_squared();

} // namespace kent
