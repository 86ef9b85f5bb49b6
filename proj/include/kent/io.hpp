#pragma once

// Config loading (flat key-value text with [section] headers), report
// serialization (JSON + CSV) and atomic file output. Formats are documented
// in the README and pinned by golden-file tests.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kent/counting.hpp"
#include "kent/entropy.hpp"
#include "kent/systems.hpp"
#include "kent/verify.hpp"

namespace kent {

// FNV-1a over the raw config text; embedded in every report so numbers stay
// attached to the exact configuration that produced them.
uint64_t fnv1a64(const std::string& data);
std::string hash_hex(uint64_t h);

struct ParsedConfig {
    // section -> key -> value, plus the raw file text for hashing
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string raw;
    std::string source_path; // directory base for sidecar files

    bool has(const std::string& section, const std::string& key) const;
    const std::string& get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
};

// Parses `key = value` lines under [section] headers; '#' starts a comment.
// Throws domain_error on malformed lines or duplicate keys.
ParsedConfig parse_config_text(const std::string& text, const std::string& source_path = "");
ParsedConfig load_config(const std::string& path);

// Small parsing helpers shared with the CLI (throw domain_error with the
// offending field named).
std::vector<int64_t> parse_int_list(const std::string& s, const std::string& field);
std::vector<double> parse_double_list(const std::string& s, const std::string& field);
Mat2 parse_mat2(const std::string& s, const std::string& field);
// Cycle notation, 1-based: "(1 2 3)(4 5)" on n points.
std::vector<int> parse_cycles(const std::string& s, int n, const std::string& field);
// Square CSV table of nonnegative reals.
std::vector<std::vector<double>> load_metric_csv(const std::string& path);

using SystemVariant = std::variant<FiniteSystem, ToralSystem, ShiftSystem, TranslationSystem>;

// Builds the system described by the [system] section:
//   type = toral:        matrix1, matrix2, ... (row-major a,b,c,d), metric
//   type = finite:       points, perm1, ..., metric_file (CSV sidecar)
//   type = shift:        alphabet, window
//   type = translation:  alpha1, alpha2, ... (x,y)
SystemVariant build_system(const ParsedConfig& cfg);

struct RunConfig {
    SystemVariant system;
    std::vector<int> ks;
    IndexSetMode mode = IndexSetMode::quadrant;
    EstimateConfig estimate;
    std::string out_path; // empty: stdout summary only
    uint64_t config_hash = 0;
};

// [run] section (k, mode, eps, n_min, n_max, sampler, samples, seed,
// quantity) merged with CLI overrides by the caller.
RunConfig build_run_config(const ParsedConfig& cfg);

// --- report serialization -------------------------------------------------

nlohmann::json estimate_to_json(const EntropyEstimate& est, uint64_t config_hash);
// Header "eps,n,log_count,rate_slope,rate_tail" then one row per (eps, n).
std::string estimate_to_csv(const EntropyEstimate& est);

nlohmann::json count_to_json(const CountResult& r, uint64_t config_hash);
// Header "n,k,mode,eps,sep,sep_qualifier,span,span_qualifier,cov,cov_qualifier".
std::string count_to_csv(const CountResult& r);

nlohmann::json verify_to_json(const VerifyReport& rep, uint64_t config_hash);

// Writes via a temp file in the same directory and renames into place.
void atomic_write(const std::string& path, const std::string& content);

} // namespace kent
