// kent: estimate / verify / oracle front end.
//
// Exit codes: 0 success, 1 property failure, 2 config error,
// 3 numeric-floor or resource refusal.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kent/io.hpp"

namespace {

using namespace kent;

EntropyEstimate run_estimate(const RunConfig& rc, const KIndex& kx) {
    return std::visit(
        [&](const auto& sys) -> EntropyEstimate {
            using S = std::decay_t<decltype(sys)>;
            if constexpr (std::is_same_v<S, ToralSystem>) {
                if (rc.estimate.quantity == Quantity::sep_lower)
                    return estimate_toral(sys, kx, rc.mode, rc.estimate);
            }
            return estimate_sampled(sys, kx, rc.mode, rc.estimate);
        },
        rc.system);
}

int cmd_estimate(const std::string& config_path, RunConfig rc) {
    nlohmann::json reports = nlohmann::json::array();
    std::string csv;
    for (int k : rc.ks) {
        const int d = std::visit([](const auto& s) { return s.dim(); }, rc.system);
        const EntropyEstimate est = run_estimate(rc, k_bits(k, d));
        reports.push_back(estimate_to_json(est, rc.config_hash));
        csv += estimate_to_csv(est);
        std::printf("k=%d mode=%s quantity=%s extrapolated=%.6f qualifier=%s monotone=%s\n", k,
                    to_string(rc.mode), to_string(est.quantity), est.extrapolated,
                    to_string(est.qualifier), est.rates_monotone ? "yes" : "no");
    }
    if (!rc.out_path.empty()) {
        atomic_write(rc.out_path + ".json",
                     nlohmann::json{{"config", config_path},
                                    {"config_hash", hash_hex(rc.config_hash)},
                                    {"estimates", reports}}
                             .dump(2) +
                         "\n");
        atomic_write(rc.out_path + ".csv", csv);
    }
    return 0;
}

int cmd_verify(const std::string& which, const std::string& out_path, uint64_t config_hash) {
    const VerifyReport rep = run_verifier(which);
    const std::string body = verify_to_json(rep, config_hash).dump(2) + "\n";
    if (out_path.empty())
        std::cout << body;
    else
        atomic_write(out_path, body);
    std::printf("verify %s: %s\n", rep.name.c_str(), rep.pass ? "pass" : "FAIL");
    return rep.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-type entropy toolkit for Z^d-actions"};
    app.require_subcommand(1);

    // estimate
    auto* est = app.add_subcommand("estimate", "Run the entropy estimator from a config file");
    std::string config_path, out_path, mode_str, eps_str, k_str;
    int n_min = -1, n_max = -1;
    int64_t samples = -1;
    int64_t seed = -1;
    est->add_option("--config", config_path, "Config file")->required();
    est->add_option("--k", k_str, "Comma-separated k list (overrides config)");
    est->add_option("--mode", mode_str, "strict or quadrant (overrides config)");
    est->add_option("--eps", eps_str, "Comma-separated decreasing eps schedule (overrides config)");
    est->add_option("--n-min", n_min, "Smallest n (overrides config)");
    est->add_option("--n-max", n_max, "Largest n (overrides config)");
    est->add_option("--samples", samples, "Sample budget (overrides config)");
    est->add_option("--seed", seed, "Sampler seed (overrides config)");
    est->add_option("--out", out_path, "Report base path; writes <out>.json and <out>.csv");

    // verify
    auto* ver = app.add_subcommand("verify", "Run a pinned property suite");
    std::string which;
    std::string verify_out;
    ver->add_option("which", which,
                    "chain|product|union|factor|conjugacy|torus-balls|metric-equivalence|"
                    "iterate|d1-symmetry|isometry")
        ->required();
    ver->add_option("--out", verify_out, "Write the JSON report here instead of stdout");

    // oracle
    auto* ora = app.add_subcommand("oracle", "Print closed-form / exact oracle values");
    auto* o_shift = ora->add_subcommand("shift-sep", "Exact sep count for the d=1 full shift");
    int oq = 2, on = 1, oj = 0;
    o_shift->add_option("--q", oq, "Alphabet size")->required();
    o_shift->add_option("--n", on, "Window parameter n")->required();
    o_shift->add_option("--j", oj, "eps = 2^-j")->required();
    auto* o_formula = ora->add_subcommand("toral-formula", "log|lambda_A| + log|lambda_B|");
    std::string oa_str, ob_str;
    o_formula->add_option("--A", oa_str, "Row-major a,b,c,d")->required();
    o_formula->add_option("--B", ob_str, "Row-major a,b,c,d")->required();
    auto* o_ball = ora->add_subcommand("ball-sides", "Closed-form rho-ball side lengths");
    int bk = 1, bn = 1;
    double beps = 0.1, bla = 2.0, blb = 3.0;
    o_ball->add_option("--k", bk, "Direction index 1..4")->required();
    o_ball->add_option("--n", bn, "Window parameter n")->required();
    o_ball->add_option("--eps", beps, "Radius eps")->required();
    o_ball->add_option("--lA", bla, "Expanding eigenvalue of A")->required();
    o_ball->add_option("--lB", blb, "Expanding eigenvalue of B")->required();
    ora->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (est->parsed()) {
            RunConfig rc = build_run_config(load_config(config_path));
            if (!k_str.empty()) {
                rc.ks.clear();
                const int d = std::visit([](const auto& s) { return s.dim(); }, rc.system);
                for (int64_t k : parse_int_list(k_str, "--k")) {
                    if (k < 1 || k > (int64_t{1} << d))
                        throw domain_error("--k: " + std::to_string(k) + " outside 1..2^" +
                                           std::to_string(d));
                    rc.ks.push_back(static_cast<int>(k));
                }
            }
            if (!mode_str.empty()) rc.mode = index_set_mode_from_string(mode_str);
            if (!eps_str.empty()) {
                rc.estimate.eps_schedule = parse_double_list(eps_str, "--eps");
                validate_eps_schedule(rc.estimate.eps_schedule);
            }
            if (n_min > 0) rc.estimate.n_min = n_min;
            if (n_max > 0) rc.estimate.n_max = n_max;
            if (rc.estimate.n_min < 1 || rc.estimate.n_max < rc.estimate.n_min)
                throw domain_error("need 1 <= n_min <= n_max");
            if (samples > 0) rc.estimate.sampler.count = samples;
            if (seed >= 0) rc.estimate.sampler.seed = static_cast<uint64_t>(seed);
            if (!out_path.empty()) rc.out_path = out_path;
            return cmd_estimate(config_path, std::move(rc));
        }
        if (ver->parsed()) return cmd_verify(which, verify_out, 0);
        if (o_shift->parsed()) {
            const ShiftSepCount c = shift_sep_oracle(oq, on, oj);
            if (c.exact)
                std::printf("%lld\n", static_cast<long long>(*c.exact));
            else
                std::printf("exp(%.12g)\n", c.log_value);
            return 0;
        }
        if (o_formula->parsed()) {
            std::printf("%.6f\n", toral_formula(parse_mat2(oa_str, "--A"), parse_mat2(ob_str, "--B")));
            return 0;
        }
        if (o_ball->parsed()) {
            const auto sides = ball_sides(bn, k_bits(bk, 2), beps, bla, blb);
            std::printf("%.6g, %.6g\n", sides.first, sides.second);
            return 0;
        }
    } catch (const resource_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
