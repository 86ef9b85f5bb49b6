#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "kent/io.hpp"

using namespace kent;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("config text parsing") {
    const ParsedConfig cfg = parse_config_text(
        "# comment\n[system]\ntype = toral  # trailing comment\nmatrix1 = 2,1,1,1\n\n"
        "[run]\nk = 1,2\n");
    CHECK(cfg.get("system", "type") == "toral");
    CHECK(cfg.get("system", "matrix1") == "2,1,1,1");
    CHECK(cfg.get("run", "k") == "1,2");
    CHECK(cfg.get_or("run", "mode", "quadrant") == "quadrant");
    CHECK_FALSE(cfg.has("run", "mode"));
    CHECK_THROWS_AS(cfg.get("run", "mode"), domain_error);
    CHECK_THROWS_AS(cfg.get("missing", "x"), domain_error);

    CHECK_THROWS_AS(parse_config_text("key = 1\n"), domain_error);            // outside section
    CHECK_THROWS_AS(parse_config_text("[s]\njust a line\n"), domain_error);   // no '='
    CHECK_THROWS_AS(parse_config_text("[s\nk = 1\n"), domain_error);          // bad header
    CHECK_THROWS_AS(parse_config_text("[s]\nk = 1\nk = 2\n"), domain_error);  // duplicate
}

TEST_CASE("list and matrix parsing errors name the field") {
    CHECK(parse_int_list("1, 2,3", "f") == std::vector<int64_t>{1, 2, 3});
    CHECK(parse_double_list("0.5,0.25", "f") == std::vector<double>{0.5, 0.25});
    CHECK_THROWS_WITH_AS(parse_int_list("1,x", "run.k"), doctest::Contains("run.k"),
                         domain_error);
    CHECK_THROWS_WITH_AS(parse_double_list("0.1,oops", "run.eps"), doctest::Contains("run.eps"),
                         domain_error);
    const Mat2 m = parse_mat2("2,1,1,1", "system.matrix1");
    CHECK(m.a == 2);
    CHECK(m.d == 1);
    CHECK_THROWS_WITH_AS(parse_mat2("2,1,1", "system.matrix1"),
                         doctest::Contains("system.matrix1"), domain_error);
}

TEST_CASE("cycle notation") {
    CHECK(parse_cycles("(1 2 3)(4 5)", 5, "p") == std::vector<int>{1, 2, 0, 4, 3});
    CHECK(parse_cycles("id", 4, "p") == std::vector<int>{0, 1, 2, 3});
    CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 3, "p"), domain_error); // repeated element
    CHECK_THROWS_AS(parse_cycles("(0 1)", 3, "p"), domain_error);      // out of range (1-based)
    CHECK_THROWS_AS(parse_cycles("(1 2", 3, "p"), domain_error);       // unclosed
    CHECK_THROWS_AS(parse_cycles("(1)", 3, "p"), domain_error);        // trivial cycle
    CHECK_THROWS_AS(parse_cycles("", 3, "p"), domain_error);
}

TEST_CASE("metric CSV sidecar") {
    const std::string path = "test_metric_tmp.csv";
    {
        std::ofstream out(path);
        out << "0,1\n1,0\n";
    }
    const auto t = load_metric_csv(path);
    CHECK(t == std::vector<std::vector<double>>{{0, 1}, {1, 0}});
    {
        std::ofstream out(path);
        out << "0,1,2\n1,0\n";
    }
    CHECK_THROWS_AS(load_metric_csv(path), domain_error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_metric_csv("no_such_file.csv"), domain_error);
}

TEST_CASE("build_system per type") {
    const auto toral = build_system(parse_config_text(
        "[system]\ntype = toral\nmatrix1 = 2,1,1,1\nmatrix2 = 5,3,3,2\nmetric = eigen\n"));
    CHECK(std::get<ToralSystem>(toral).metric_mode() == TorusMetric::eigen);
    CHECK(std::get<ToralSystem>(toral).dim() == 2);

    const auto shift =
        build_system(parse_config_text("[system]\ntype = shift\nalphabet = 3\nwindow = 5\n"));
    CHECK(std::get<ShiftSystem>(shift).alphabet() == 3);

    const auto trans = build_system(parse_config_text(
        "[system]\ntype = translation\nalpha1 = 0.2,0.3\nalpha2 = 0.5,0.1\n"));
    CHECK(std::get<TranslationSystem>(trans).dim() == 2);

    const std::string metric_path = "test_sys_metric.csv";
    {
        std::ofstream out(metric_path);
        out << "0,1,2\n1,0,1\n2,1,0\n";
    }
    const auto fin = build_system(parse_config_text(
        "[system]\ntype = finite\npoints = 3\nperm1 = (1 2 3)\nperm2 = (1 3 2)\n"
        "metric_file = " + metric_path + "\n"));
    CHECK(std::get<FiniteSystem>(fin).size() == 3);
    std::remove(metric_path.c_str());

    CHECK_THROWS_WITH_AS(
        build_system(parse_config_text("[system]\ntype = toral\nmatrix1 = 2,1,x,1\n")),
        doctest::Contains("matrix1"), domain_error);
    CHECK_THROWS_AS(build_system(parse_config_text("[system]\ntype = fancy\n")), domain_error);
    CHECK_THROWS_AS(build_system(parse_config_text("[system]\ntype = toral\n")), domain_error);
}

TEST_CASE("build_run_config defaults and validation") {
    const RunConfig rc = build_run_config(parse_config_text(
        "[system]\ntype = toral\nmatrix1 = 2,1,1,1\n[run]\nk = 1,2\neps = 0.1,0.05,0.01\n"));
    CHECK(rc.ks == std::vector<int>{1, 2});
    CHECK(rc.mode == IndexSetMode::quadrant);
    CHECK(rc.estimate.n_min == 3);
    CHECK(rc.estimate.n_max == 7);
    CHECK(rc.estimate.sampler.count == 200000);
    CHECK(rc.estimate.quantity == Quantity::sep_lower);
    CHECK(rc.config_hash != 0);

    CHECK_THROWS_AS(build_run_config(parse_config_text(
                        "[system]\ntype = toral\nmatrix1 = 2,1,1,1\n[run]\nk = 3\n")),
                    domain_error); // k outside 1..2^d for d=1
    CHECK_THROWS_AS(build_run_config(parse_config_text(
                        "[system]\ntype = toral\nmatrix1 = 2,1,1,1\n[run]\neps = 0.01,0.1\n")),
                    domain_error);
    CHECK_THROWS_AS(build_run_config(parse_config_text(
                        "[system]\ntype = toral\nmatrix1 = 2,1,1,1\n[run]\nn_min = 5\nn_max = 3\n")),
                    domain_error);
    CHECK_THROWS_AS(build_run_config(parse_config_text(
                        "[system]\ntype = toral\nmatrix1 = 2,1,1,1\n[run]\nsampler = warp\n")),
                    domain_error);
}

TEST_CASE("fnv1a64 known vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(hash_hex(0xcbf29ce484222325ull) == "cbf29ce484222325");
}

TEST_CASE("report serialization") {
    EntropyEstimate est;
    est.k = k_bits(2, 2);
    est.mode = IndexSetMode::quadrant;
    est.quantity = Quantity::sep_lower;
    est.qualifier = BoundQualifier::lower_bound;
    est.extrapolated = 1.5;
    est.rates_monotone = true;
    est.sample_descriptor = "test";
    PerEpsFit fit;
    fit.eps = 0.5;
    fit.ns = {3, 4};
    fit.log_counts = {1.0, 2.5};
    fit.rate_slope = 1.5;
    fit.rate_tail = 1.5;
    est.per_eps = {fit};

    const auto j = estimate_to_json(est, 7);
    CHECK(j["k"] == 2);
    CHECK(j["mode"] == "quadrant");
    CHECK(j["qualifier"] == "lower-bound");
    CHECK(j["config_hash"] == "0000000000000007");
    CHECK(j["per_eps"].size() == 1);

    CHECK(estimate_to_csv(est) ==
          "eps,n,log_count,rate_slope,rate_tail\n"
          "0.5,3,1,1.5,1.5\n"
          "0.5,4,2.5,1.5,1.5\n");

    CountResult r;
    r.n = 2;
    r.k = k_bits(1, 2);
    r.mode = IndexSetMode::strict;
    r.eps = 0.25;
    r.sep = {5, BoundQualifier::exact};
    r.span = {4, BoundQualifier::exact};
    r.cov = {6, BoundQualifier::exact};
    CHECK(count_to_csv(r) ==
          "n,k,mode,eps,sep,sep_qualifier,span,span_qualifier,cov,cov_qualifier\n"
          "2,1,strict,0.25,5,exact,4,exact,6,exact\n");
    const auto cj = count_to_json(r, 1);
    CHECK(cj["sep"]["value"] == 5);
    CHECK(cj["mode"] == "strict");

    VerifyReport vr;
    vr.name = "chain";
    vr.pass = true;
    vr.details = {{"instances", 3}};
    const auto vj = verify_to_json(vr, 2);
    CHECK(vj["pass"] == true);
    CHECK(vj["name"] == "chain");
}

TEST_CASE("atomic_write") {
    const std::string path = "test_atomic_tmp.txt";
    atomic_write(path, "hello\n");
    CHECK(slurp(path) == "hello\n");
    atomic_write(path, "replaced\n");
    CHECK(slurp(path) == "replaced\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(atomic_write("/no/such/dir/file.txt", "x"), resource_error);
}
