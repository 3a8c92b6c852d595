#include "tcdkit/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tcd::cli {

namespace {

using json = nlohmann::ordered_json;

double require_number(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ConfigError(ctx + ": missing or non-numeric field '" + key + "'");
    }
    return j[key].get<double>();
}

// A tuned parameter is either a number or {"table": [[eps, value], ...],
// "epsilon": e} resolved through the piecewise-linear q(eps) map.
double resolve_tuned(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) {
        throw ConfigError(ctx + ": missing field '" + key + "'");
    }
    const json& v = j[key];
    if (v.is_number()) return v.get<double>();
    if (v.is_object()) {
        if (!v.contains("table") || !v["table"].is_array()) {
            throw ConfigError(ctx + "." + key + ": tuned-from-error form needs a 'table' array");
        }
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : v["table"]) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
                throw ConfigError(ctx + "." + key + ": table rows must be [error, value] pairs");
            }
            pts.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
        if (!v.contains("epsilon") || !v["epsilon"].is_number()) {
            throw ConfigError(ctx + "." + key + ": tuned-from-error form needs 'epsilon'");
        }
        try {
            return tuned_from_error(PiecewiseLinearTable(std::move(pts)), v["epsilon"].get<double>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(ctx + "." + key + ": " + e.what());
        }
    }
    throw ConfigError(ctx + "." + key + ": expected a number or a tuned-from-error object");
}

ChangeModel parse_metric(const std::string& name, const json& j) {
    const std::string ctx = "metrics." + name;
    if (!j.contains("type") || !j["type"].is_string()) {
        throw ConfigError(ctx + ": missing 'type' (mean_change | variance_change | general_change)");
    }
    const std::string type = j["type"].get<std::string>();
    try {
        if (type == "mean_change") {
            const double mu0 = require_number(j, "mu0", ctx);
            const double sigma2 = require_number(j, "sigma2", ctx);
            const double mu1_tuned = resolve_tuned(j, "mu1_tuned", ctx);
            const double mu1_actual = j.contains("mu1_actual") ? require_number(j, "mu1_actual", ctx) : mu1_tuned;
            return ChangeModel(MeanChange{mu0, sigma2, mu1_tuned, mu1_actual});
        }
        if (type == "variance_change") {
            const double s0 = require_number(j, "sigma2_0", ctx);
            const double s1t = resolve_tuned(j, "sigma2_1_tuned", ctx);
            const double s1a = j.contains("sigma2_1_actual") ? require_number(j, "sigma2_1_actual", ctx) : s1t;
            return ChangeModel(VarianceChange{s0, s1t, s1a});
        }
        if (type == "general_change") {
            const double mu0 = require_number(j, "mu0", ctx);
            const double s0 = require_number(j, "sigma2_0", ctx);
            const double mu1t = resolve_tuned(j, "mu1_tuned", ctx);
            const double s1t = resolve_tuned(j, "sigma2_1_tuned", ctx);
            const double mu1a = j.contains("mu1_actual") ? require_number(j, "mu1_actual", ctx) : mu1t;
            const double s1a = j.contains("sigma2_1_actual") ? require_number(j, "sigma2_1_actual", ctx) : s1t;
            return ChangeModel(GeneralChange{{mu0, s0}, {mu1t, s1t}, {mu1a, s1a}});
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(ctx + ": " + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    throw ConfigError(ctx + ": unknown metric type '" + type + "'");
}

TcdConfig parse_tcd(const json& j) {
    if (!j.contains("tcd") || !j["tcd"].is_object()) {
        throw ConfigError("config: missing 'tcd' section");
    }
    const json& t = j["tcd"];
    const double alpha = require_number(t, "alpha_tilde", "tcd");
    const double beta = t.contains("beta_tilde") ? require_number(t, "beta_tilde", "tcd") : 0.01;
    Probability alpha_p, beta_p;
    try {
        alpha_p = Probability(alpha);
        beta_p = Probability(beta);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("tcd: ") + e.what());
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("tcd.alpha_tilde must lie strictly inside (0,1)");
    }

    const bool has_windows = t.contains("m") && t.contains("m_alpha");
    const bool has_times = t.contains("fs") && t.contains("t_tta") && t.contains("t_alpha");
    try {
        if (has_times) {
            TcdConfig c = TcdConfig::from_times(require_number(t, "fs", "tcd"), require_number(t, "t_tta", "tcd"),
                                                require_number(t, "t_alpha", "tcd"), alpha_p, beta_p);
            // Explicit windows override the rounded fs * t values.
            if (t.contains("m")) c.m = t["m"].get<int>();
            if (t.contains("m_alpha")) c.m_alpha = t["m_alpha"].get<int>();
            if (c.m < 1 || c.m_alpha < 1) throw ConfigError("tcd: m and m_alpha must be >= 1");
            return c;
        }
        if (has_windows) {
            return TcdConfig::from_windows(t["m"].get<int>(), t["m_alpha"].get<int>(), alpha_p, beta_p);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("tcd: ") + e.what());
    }
    throw ConfigError("tcd: provide either {m, m_alpha} or {fs, t_tta, t_alpha}");
}

} // namespace

RunConfig parse_config(const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": JSON parse error: " + e.what());
    }

    RunConfig cfg;
    cfg.tcd = parse_tcd(j);

    if (!j.contains("metrics") || !j["metrics"].is_object() || j["metrics"].empty()) {
        throw ConfigError("config: no models (the 'metrics' section is missing or empty)");
    }
    for (const auto& [name, body] : j["metrics"].items()) {
        cfg.metrics.push_back(MetricConfig{name, parse_metric(name, body)});
    }

    if (j.contains("detectors")) {
        for (const auto& d : j["detectors"]) {
            try {
                cfg.detectors.push_back(detector_kind_from_string(d.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("detectors: ") + e.what());
            }
        }
    }
    if (cfg.detectors.empty()) {
        cfg.detectors = {DetectorKind::fma, DetectorKind::cusum, DetectorKind::wlc};
    }

    if (j.contains("threshold_rule")) {
        try {
            cfg.rule = threshold_rule_from_string(j["threshold_rule"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("threshold_rule: ") + e.what());
        }
    }

    if (j.contains("alpha_grid")) {
        for (const auto& a : j["alpha_grid"]) {
            const double v = a.get<double>();
            if (!(v > 0.0 && v < 1.0)) {
                throw ConfigError("alpha_grid values must lie strictly inside (0,1)");
            }
            cfg.alpha_grid.push_back(Probability(v));
        }
    }
    if (cfg.alpha_grid.empty()) cfg.alpha_grid.push_back(cfg.tcd.alpha_tilde);

    if (j.contains("montecarlo")) {
        const json& m = j["montecarlo"];
        if (m.contains("runs")) cfg.montecarlo.runs = m["runs"].get<std::int64_t>();
        if (m.contains("seed")) cfg.montecarlo.seed = m["seed"].get<std::uint64_t>();
        if (m.contains("threads")) cfg.montecarlo.threads = m["threads"].get<int>();
        if (m.contains("v_sweep")) {
            for (const auto& v : m["v_sweep"]) cfg.montecarlo.v_sweep.push_back(v.get<std::int64_t>());
        }
        if (cfg.montecarlo.runs < 1) throw ConfigError("montecarlo.runs must be >= 1");
        for (std::int64_t v : cfg.montecarlo.v_sweep) {
            if (v <= cfg.tcd.m) throw ConfigError("montecarlo.v_sweep entries must be > m");
        }
    }

    if (j.contains("detect")) {
        const json& d = j["detect"];
        DetectConfig dc;
        if (!d.contains("metric") || !d["metric"].is_string()) {
            throw ConfigError("detect: missing 'metric' name");
        }
        dc.metric = d["metric"].get<std::string>();
        bool found = false;
        for (const auto& mconf : cfg.metrics) found = found || mconf.name == dc.metric;
        if (!found) throw ConfigError("detect.metric '" + dc.metric + "' is not a configured metric");
        if (d.contains("h") && !d["h"].is_null()) dc.h = d["h"].get<double>();
        cfg.detect = dc;
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

} // namespace tcd::cli
