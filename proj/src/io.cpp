#include "kent/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kent {

using nlohmann::json;

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string dirname_of(const std::string& path) {
    const size_t pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

bool ParsedConfig::has(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) > 0;
}

const std::string& ParsedConfig::get(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    if (s == sections.end())
        throw domain_error("config: missing section [" + section + "]");
    const auto k = s->second.find(key);
    if (k == s->second.end())
        throw domain_error("config: missing key '" + key + "' in section [" + section + "]");
    return k->second;
}

std::string ParsedConfig::get_or(const std::string& section, const std::string& key,
                                 const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

ParsedConfig parse_config_text(const std::string& text, const std::string& source_path) {
    ParsedConfig cfg;
    cfg.raw = text;
    cfg.source_path = source_path;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line.substr(0, line.find('#')));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3)
                throw domain_error("config line " + std::to_string(lineno) +
                                   ": malformed section header '" + t + "'");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw domain_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw domain_error("config line " + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw domain_error("config line " + std::to_string(lineno) +
                               ": key '" + key + "' outside any [section]");
        if (!cfg.sections[section].emplace(key, value).second)
            throw domain_error("config: duplicate key '" + key + "' in section [" + section + "]");
    }
    return cfg;
}

ParsedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::vector<int64_t> parse_int_list(const std::string& s, const std::string& field) {
    std::vector<int64_t> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        try {
            size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw domain_error(field + ": '" + tok + "' is not an integer");
        }
    }
    if (out.empty()) throw domain_error(field + ": empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& field) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        try {
            size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw domain_error(field + ": '" + tok + "' is not a number");
        }
    }
    if (out.empty()) throw domain_error(field + ": empty list");
    return out;
}

Mat2 parse_mat2(const std::string& s, const std::string& field) {
    const auto v = parse_int_list(s, field);
    if (v.size() != 4)
        throw domain_error(field + ": expected 4 row-major entries a,b,c,d, got " +
                           std::to_string(v.size()));
    return Mat2{v[0], v[1], v[2], v[3]};
}

std::vector<int> parse_cycles(const std::string& s, int n, const std::string& field) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    if (trim(s) == "id") return perm;
    std::vector<char> moved(n, 0);
    size_t pos = 0;
    bool any = false;
    while (pos < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
            continue;
        }
        if (s[pos] != '(')
            throw domain_error(field + ": expected '(' at position " + std::to_string(pos));
        const size_t close = s.find(')', pos);
        if (close == std::string::npos) throw domain_error(field + ": unclosed cycle");
        std::istringstream cyc(s.substr(pos + 1, close - pos - 1));
        std::vector<int> elems;
        std::string tok;
        while (cyc >> tok) {
            try {
                const int v = std::stoi(tok);
                if (v < 1 || v > n)
                    throw domain_error(field + ": element " + tok + " outside 1.." +
                                       std::to_string(n));
                if (moved[v - 1])
                    throw domain_error(field + ": element " + tok + " appears twice");
                moved[v - 1] = 1;
                elems.push_back(v - 1);
            } catch (const domain_error&) {
                throw;
            } catch (const std::exception&) {
                throw domain_error(field + ": '" + tok + "' is not an integer");
            }
        }
        if (elems.size() < 2) throw domain_error(field + ": cycles need at least 2 elements");
        for (size_t i = 0; i < elems.size(); ++i)
            perm[elems[i]] = elems[(i + 1) % elems.size()];
        pos = close + 1;
        any = true;
    }
    if (!any) throw domain_error(field + ": expected cycle notation like (1 2 3), or 'id'");
    return perm;
}

std::vector<std::vector<double>> load_metric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("metric table: cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        rows.push_back(parse_double_list(line, path + " line " + std::to_string(lineno)));
    }
    if (rows.empty()) throw domain_error("metric table '" + path + "' is empty");
    for (const auto& r : rows)
        if (r.size() != rows.size())
            throw domain_error("metric table '" + path + "' is not square");
    return rows;
}

SystemVariant build_system(const ParsedConfig& cfg) {
    const std::string type = cfg.get("system", "type");
    if (type == "toral") {
        std::vector<Mat2> gens;
        for (int i = 1; cfg.has("system", "matrix" + std::to_string(i)); ++i)
            gens.push_back(parse_mat2(cfg.get("system", "matrix" + std::to_string(i)),
                                      "system.matrix" + std::to_string(i)));
        if (gens.empty()) throw domain_error("system: toral type needs matrix1, matrix2, ...");
        const std::string metric = cfg.get_or("system", "metric", "standard");
        if (metric != "standard" && metric != "eigen")
            throw domain_error("system.metric: expected standard or eigen, got '" + metric + "'");
        return make_toral(std::move(gens),
                          metric == "eigen" ? TorusMetric::eigen : TorusMetric::standard);
    }
    if (type == "finite") {
        int n = 0;
        try {
            n = std::stoi(cfg.get("system", "points"));
        } catch (const std::exception&) {
            throw domain_error("system.points: not an integer");
        }
        if (n < 1) throw domain_error("system.points: must be >= 1");
        std::vector<std::vector<int>> perms;
        for (int i = 1; cfg.has("system", "perm" + std::to_string(i)); ++i)
            perms.push_back(parse_cycles(cfg.get("system", "perm" + std::to_string(i)), n,
                                         "system.perm" + std::to_string(i)));
        if (perms.empty()) throw domain_error("system: finite type needs perm1, perm2, ...");
        std::string metric_path = cfg.get("system", "metric_file");
        if (!metric_path.empty() && metric_path.front() != '/' && !cfg.source_path.empty())
            metric_path = dirname_of(cfg.source_path) + "/" + metric_path;
        auto table = load_metric_csv(metric_path);
        if (static_cast<int>(table.size()) != n)
            throw domain_error("system.metric_file: table size " + std::to_string(table.size()) +
                               " does not match points = " + std::to_string(n));
        const int d = static_cast<int>(perms.size());
        return make_finite(d, std::move(perms), std::move(table),
                           cfg.get_or("system", "name", "finite"));
    }
    if (type == "shift") {
        int q = 0, w = 0;
        try {
            q = std::stoi(cfg.get("system", "alphabet"));
            w = std::stoi(cfg.get("system", "window"));
        } catch (const std::exception&) {
            throw domain_error("system: alphabet/window must be integers");
        }
        return ShiftSystem(q, w);
    }
    if (type == "translation") {
        std::vector<std::array<double, 2>> alphas;
        for (int i = 1; cfg.has("system", "alpha" + std::to_string(i)); ++i) {
            const auto v = parse_double_list(cfg.get("system", "alpha" + std::to_string(i)),
                                            "system.alpha" + std::to_string(i));
            if (v.size() != 2)
                throw domain_error("system.alpha" + std::to_string(i) + ": expected x,y");
            alphas.push_back({v[0], v[1]});
        }
        if (alphas.empty()) throw domain_error("system: translation type needs alpha1, ...");
        return TranslationSystem(std::move(alphas));
    }
    throw domain_error("system.type: unknown type '" + type +
                       "' (expected toral, finite, shift or translation)");
}

RunConfig build_run_config(const ParsedConfig& cfg) {
    RunConfig rc;
    rc.system = build_system(cfg);
    rc.config_hash = fnv1a64(cfg.raw);
    const int d = std::visit([](const auto& s) { return s.dim(); }, rc.system);

    for (int64_t k : parse_int_list(cfg.get_or("run", "k", "1"), "run.k")) {
        if (k < 1 || k > (int64_t{1} << d))
            throw domain_error("run.k: " + std::to_string(k) + " outside 1..2^" +
                               std::to_string(d));
        rc.ks.push_back(static_cast<int>(k));
    }
    rc.mode = index_set_mode_from_string(cfg.get_or("run", "mode", "quadrant"));
    rc.estimate.eps_schedule =
        parse_double_list(cfg.get_or("run", "eps", "0.1,0.05,0.02,0.01,0.005"), "run.eps");
    validate_eps_schedule(rc.estimate.eps_schedule);
    try {
        rc.estimate.n_min = std::stoi(cfg.get_or("run", "n_min", "3"));
        rc.estimate.n_max = std::stoi(cfg.get_or("run", "n_max", "7"));
        rc.estimate.sampler.count = std::stoll(cfg.get_or("run", "samples", "200000"));
        rc.estimate.sampler.seed = std::stoull(cfg.get_or("run", "seed", "0"));
    } catch (const std::exception&) {
        throw domain_error("run: n_min/n_max/samples/seed must be integers");
    }
    if (rc.estimate.n_min < 1 || rc.estimate.n_max < rc.estimate.n_min)
        throw domain_error("run: need 1 <= n_min <= n_max");
    if (rc.estimate.sampler.count < 1) throw domain_error("run.samples: must be >= 1");
    const std::string scheme = cfg.get_or("run", "sampler", "grid");
    if (scheme == "grid")
        rc.estimate.sampler.scheme = SampleScheme::grid;
    else if (scheme == "unstable-line")
        rc.estimate.sampler.scheme = SampleScheme::unstable_line;
    else if (scheme == "random")
        rc.estimate.sampler.scheme = SampleScheme::random;
    else
        throw domain_error("run.sampler: unknown scheme '" + scheme + "'");
    rc.estimate.quantity = quantity_from_string(cfg.get_or("run", "quantity", "sep-lower"));
    if (cfg.has("run", "density_slack")) {
        try {
            rc.estimate.density_slack = std::stod(cfg.get("run", "density_slack"));
        } catch (const std::exception&) {
            throw domain_error("run.density_slack: not a number");
        }
    }
    rc.out_path = cfg.get_or("run", "out", "");
    return rc;
}

// --- report serialization -------------------------------------------------

json estimate_to_json(const EntropyEstimate& est, uint64_t config_hash) {
    json per = json::array();
    for (const auto& f : est.per_eps)
        per.push_back({{"eps", f.eps},
                       {"ns", f.ns},
                       {"log_counts", f.log_counts},
                       {"rate_slope", f.rate_slope},
                       {"rate_tail", f.rate_tail},
                       {"fit_residual", f.fit_residual}});
    return json{{"report", "estimate"},
                {"config_hash", hash_hex(config_hash)},
                {"k", est.k.k},
                {"d", est.k.d},
                {"mode", to_string(est.mode)},
                {"quantity", to_string(est.quantity)},
                {"qualifier", to_string(est.qualifier)},
                {"extrapolated", est.extrapolated},
                {"rates_monotone", est.rates_monotone},
                {"sample", est.sample_descriptor},
                {"per_eps", per}};
}

std::string estimate_to_csv(const EntropyEstimate& est) {
    std::string out = "eps,n,log_count,rate_slope,rate_tail\n";
    for (const auto& f : est.per_eps)
        for (size_t i = 0; i < f.ns.size(); ++i)
            out += fmt_double(f.eps) + "," + std::to_string(f.ns[i]) + "," +
                   fmt_double(f.log_counts[i]) + "," + fmt_double(f.rate_slope) + "," +
                   fmt_double(f.rate_tail) + "\n";
    return out;
}

json count_to_json(const CountResult& r, uint64_t config_hash) {
    return json{{"report", "counts"},
                {"config_hash", hash_hex(config_hash)},
                {"n", r.n},
                {"k", r.k.k},
                {"d", r.k.d},
                {"mode", to_string(r.mode)},
                {"eps", r.eps},
                {"sep", {{"value", r.sep.value}, {"qualifier", to_string(r.sep.qualifier)}}},
                {"span", {{"value", r.span.value}, {"qualifier", to_string(r.span.qualifier)}}},
                {"cov", {{"value", r.cov.value}, {"qualifier", to_string(r.cov.qualifier)}}},
                {"sample", r.sample_descriptor}};
}

std::string count_to_csv(const CountResult& r) {
    std::string out = "n,k,mode,eps,sep,sep_qualifier,span,span_qualifier,cov,cov_qualifier\n";
    out += std::to_string(r.n) + "," + std::to_string(r.k.k) + "," + to_string(r.mode) + "," +
           fmt_double(r.eps) + "," + std::to_string(r.sep.value) + "," +
           to_string(r.sep.qualifier) + "," + std::to_string(r.span.value) + "," +
           to_string(r.span.qualifier) + "," + std::to_string(r.cov.value) + "," +
           to_string(r.cov.qualifier) + "\n";
    return out;
}

json verify_to_json(const VerifyReport& rep, uint64_t config_hash) {
    return json{{"report", "verify"},
                {"config_hash", hash_hex(config_hash)},
                {"name", rep.name},
                {"pass", rep.pass},
                {"details", rep.details}};
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw resource_error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush()) throw resource_error("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw resource_error("cannot rename '" + tmp + "' to '" + path + "'");
}

} // namespace kent
