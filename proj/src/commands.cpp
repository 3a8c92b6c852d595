#include "tcdkit/commands.hpp"

#include "tcdkit/montecarlo.hpp"
#include "tcdkit/sigraim.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>

namespace tcd::cli {

namespace {

using json = nlohmann::ordered_json;

std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json tcd_echo(const RunConfig& cfg) {
    json e;
    e["m"] = cfg.tcd.m;
    e["m_alpha"] = cfg.tcd.m_alpha;
    e["alpha_tilde"] = cfg.tcd.alpha_tilde.value();
    e["beta_tilde"] = cfg.tcd.beta_tilde.value();
    e["threshold_rule"] = to_string(cfg.rule);
    return e;
}

json header(const char* command, const RunConfig& cfg) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["tcd"] = tcd_echo(cfg);
    return j;
}

double threshold_for(const RunConfig& cfg, const MetricConfig& metric, DetectorKind kind) {
    return detector_threshold(metric.model, kind, cfg.tcd, cfg.rule);
}

} // namespace

std::string cmd_threshold(const RunConfig& cfg) {
    json out = header("threshold", cfg);
    json rows = json::array();
    for (const auto& metric : cfg.metrics) {
        for (DetectorKind kind : cfg.detectors) {
            json row;
            row["metric"] = metric.name;
            row["method"] = to_string(kind);
            row["h"] = threshold_for(cfg, metric, kind);
            rows.push_back(std::move(row));
        }
    }
    out["rows"] = std::move(rows);
    return out.dump(2) + "\n";
}

std::string cmd_bounds(const RunConfig& cfg) {
    json out = header("bounds", cfg);
    json rows = json::array();
    for (const auto& metric : cfg.metrics) {
        for (DetectorKind kind : cfg.detectors) {
            const double h = threshold_for(cfg, metric, kind);
            json row;
            row["metric"] = metric.name;
            row["method"] = to_string(kind);
            row["h"] = h;
            row["alpha_bound"] = kind == DetectorKind::fma
                                     ? pfa_bound(metric.model, h, cfg.tcd.m, cfg.tcd.m_alpha).value()
                                     : cfg.tcd.alpha_tilde.value();
            row["beta_bound"] = pmd_bound(metric.model, h, cfg.tcd.m).value();
            rows.push_back(std::move(row));
        }
    }
    out["rows"] = std::move(rows);
    return out.dump(2) + "\n";
}

std::string cmd_roc(const RunConfig& cfg) {
    std::ostringstream out;
    out << "# tcdkit roc schema=1 m=" << cfg.tcd.m << " m_alpha=" << cfg.tcd.m_alpha
        << " runs=" << cfg.montecarlo.runs << " seed=" << cfg.montecarlo.seed
        << " rule=" << to_string(cfg.rule) << "\n";
    out << "# columns: metric,method,alpha,h,pfa_bound,pmd_bound,pfa_hat,pfa_stderr,pmd_hat,pmd_stderr\n";
    std::uint64_t salt = 0;
    for (const auto& metric : cfg.metrics) {
        for (DetectorKind kind : cfg.detectors) {
            const auto points =
                mc::simulate_roc(metric.model, kind, cfg.alpha_grid, cfg.tcd, cfg.montecarlo.runs,
                                 mc::derive_seed(cfg.montecarlo.seed, salt++), cfg.rule,
                                 cfg.montecarlo.threads);
            for (const auto& p : points) {
                out << metric.name << ',' << to_string(kind) << ',' << csv_num(p.alpha_target) << ','
                    << csv_num(p.h) << ',' << csv_num(p.pfa_bound) << ',' << csv_num(p.pmd_bound) << ','
                    << csv_num(p.pfa.p_hat) << ',' << csv_num(p.pfa.stderr_) << ',' << csv_num(p.pmd.p_hat)
                    << ',' << csv_num(p.pmd.stderr_) << '\n';
            }
        }
    }
    return out.str();
}

std::string cmd_simulate(const RunConfig& cfg) {
    json out = header("simulate", cfg);
    out["runs"] = cfg.montecarlo.runs;
    out["seed"] = cfg.montecarlo.seed;
    json rows = json::array();
    std::uint64_t salt = 0;
    for (const auto& metric : cfg.metrics) {
        for (DetectorKind kind : cfg.detectors) {
            mc::SimScenario scn(metric.model);
            scn.kind = kind;
            scn.h = threshold_for(cfg, metric, kind);
            scn.m = cfg.tcd.m;
            scn.m_alpha = cfg.tcd.m_alpha;
            scn.v_sweep = cfg.montecarlo.v_sweep;
            scn.runs = cfg.montecarlo.runs;
            scn.threads = cfg.montecarlo.threads;
            scn.seed = mc::derive_seed(cfg.montecarlo.seed, salt++);
            const auto pfa = mc::simulate_pfa(scn);
            scn.seed = mc::derive_seed(cfg.montecarlo.seed, salt++);
            const auto pmd = mc::simulate_pmd(scn);
            json row;
            row["metric"] = metric.name;
            row["method"] = to_string(kind);
            row["h"] = scn.h;
            row["pfa_hat"] = pfa.p_hat;
            row["pfa_stderr"] = pfa.stderr_;
            row["pfa_runs"] = pfa.runs;
            row["pmd_hat"] = pmd.p_hat;
            row["pmd_stderr"] = pmd.stderr_;
            row["pmd_runs"] = pmd.runs;
            rows.push_back(std::move(row));
        }
    }
    out["rows"] = std::move(rows);
    return out.dump(2) + "\n";
}

std::string cmd_detect(const RunConfig& cfg, std::istream& csv_in, const std::string& stream_id) {
    if (!cfg.detect) {
        throw ConfigError("detect: config has no 'detect' section");
    }
    const MetricConfig* metric = nullptr;
    for (const auto& m : cfg.metrics) {
        if (m.name == cfg.detect->metric) metric = &m;
    }
    if (metric == nullptr) {
        throw ConfigError("detect: metric '" + cfg.detect->metric + "' not configured");
    }

    std::string line;
    if (!std::getline(csv_in, line)) {
        throw ConfigError("detect: empty input stream");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const bool with_time = line == "n,value,t";
    if (!with_time && line != "n,value") {
        throw ConfigError("detect: row 1: expected header 'n,value', got '" + line + "'");
    }

    std::vector<double> values;
    std::vector<double> times;
    long long expected_n = 0;
    std::size_t row = 1;
    while (std::getline(csv_in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        long long n = 0;
        double value = 0.0;
        double t = 0.0;
        int consumed = 0;
        const int fields = with_time
                               ? std::sscanf(line.c_str(), "%lld,%lf,%lf%n", &n, &value, &t, &consumed)
                               : std::sscanf(line.c_str(), "%lld,%lf%n", &n, &value, &consumed);
        if (fields != (with_time ? 3 : 2) || consumed != static_cast<int>(line.size())) {
            throw ConfigError("detect: row " + std::to_string(row) + ": malformed line '" + line + "'");
        }
        if (n != expected_n + 1) {
            throw ConfigError("detect: row " + std::to_string(row) + ": sample index " + std::to_string(n) +
                              " is not monotone (expected " + std::to_string(expected_n + 1) + ")");
        }
        expected_n = n;
        values.push_back(value);
        if (with_time) times.push_back(t);
    }
    if (values.empty()) {
        throw ConfigError("detect: no data rows after the header");
    }

    std::vector<double> llrs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) llrs[i] = llr(metric->model, values[i]);

    json out = header("detect", cfg);
    out["stream"] = stream_id;
    out["metric"] = metric->name;
    json events = json::array();
    for (DetectorKind kind : cfg.detectors) {
        const double h = cfg.detect->h ? *cfg.detect->h : threshold_for(cfg, *metric, kind);
        if (const auto alarm = run(kind, cfg.tcd.m, h, llrs)) {
            json ev;
            ev["stream"] = stream_id;
            ev["detector"] = to_string(kind);
            ev["h"] = h;
            ev["alarm_index"] = alarm->stop_index;
            ev["statistic"] = alarm->statistic;
            if (!times.empty()) ev["t"] = times[static_cast<std::size_t>(alarm->stop_index - 1)];
            events.push_back(std::move(ev));
        }
    }
    out["events"] = std::move(events);
    return out.dump(2) + "\n";
}

std::string cmd_availability(const RunConfig& cfg) {
    json out = header("availability", cfg);
    json rows = json::array();
    for (const auto& metric : cfg.metrics) {
        for (DetectorKind kind : cfg.detectors) {
            const AvailabilityReport rep = availability(metric.model, cfg.tcd, kind, cfg.rule, metric.name);
            json row;
            row["metric"] = rep.metric;
            row["method"] = to_string(rep.method);
            row["h"] = rep.h;
            row["beta_bound"] = rep.beta_bound.value();
            row["beta_tilde"] = cfg.tcd.beta_tilde.value();
            row["available"] = rep.available;
            rows.push_back(std::move(row));
        }
    }
    out["rows"] = std::move(rows);
    return out.dump(2) + "\n";
}

} // namespace tcd::cli
