#include "tcdkit/commands.hpp"
#include "tcdkit/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return 3;
    }
    out << text;
    return out ? 0 : 3;
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string in_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> runs;
    std::optional<int> threads;
    std::optional<std::string> rule;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input) {
    cmd->add_option("--config", o.config_path, "JSON config file")->required();
    cmd->add_option("--out", o.out_path, "output file (default: stdout)");
    cmd->add_option("--seed", o.seed, "Monte-Carlo seed override");
    cmd->add_option("--runs", o.runs, "Monte-Carlo runs override");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    cmd->add_option("--threshold-rule", o.rule, "corollary | quantile")
        ->check(CLI::IsMember({"corollary", "quantile"}));
    if (with_input) {
        cmd->add_option("--in", o.in_path, "input CSV stream (default: stdin)");
    }
}

tcd::cli::RunConfig load_with_overrides(const CommonOpts& o) {
    tcd::cli::RunConfig cfg = tcd::cli::load_config(o.config_path);
    if (o.seed) cfg.montecarlo.seed = *o.seed;
    if (o.runs) cfg.montecarlo.runs = *o.runs;
    if (o.threads) cfg.montecarlo.threads = *o.threads;
    if (o.rule) cfg.rule = tcd::threshold_rule_from_string(*o.rule);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tcdkit: transient change detection bounds, simulation and sig-RAIM availability"};
    app.require_subcommand(1);

    CommonOpts o_threshold, o_bounds, o_roc, o_simulate, o_detect, o_availability;
    add_common(app.add_subcommand("threshold", "detection thresholds per metric and method"), o_threshold,
               false);
    add_common(app.add_subcommand("bounds", "analytic false-alarm/missed-detection bounds"), o_bounds,
               false);
    add_common(app.add_subcommand("roc", "bound + simulated ROC over the alpha grid (CSV)"), o_roc, false);
    add_common(app.add_subcommand("simulate", "simulated worst-case Pfa/Pmd at the operating point"),
               o_simulate, false);
    add_common(app.add_subcommand("detect", "run detectors over a n,value CSV stream"), o_detect, true);
    add_common(app.add_subcommand("availability", "sig-RAIM availability verdicts"), o_availability,
               false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are config errors
    }

    try {
        if (app.got_subcommand("threshold")) {
            return write_output(tcd::cli::cmd_threshold(load_with_overrides(o_threshold)),
                                o_threshold.out_path);
        }
        if (app.got_subcommand("bounds")) {
            return write_output(tcd::cli::cmd_bounds(load_with_overrides(o_bounds)), o_bounds.out_path);
        }
        if (app.got_subcommand("roc")) {
            return write_output(tcd::cli::cmd_roc(load_with_overrides(o_roc)), o_roc.out_path);
        }
        if (app.got_subcommand("simulate")) {
            return write_output(tcd::cli::cmd_simulate(load_with_overrides(o_simulate)),
                                o_simulate.out_path);
        }
        if (app.got_subcommand("detect")) {
            const auto cfg = load_with_overrides(o_detect);
            std::string rendered;
            if (o_detect.in_path.empty()) {
                rendered = tcd::cli::cmd_detect(cfg, std::cin, "stdin");
            } else {
                std::ifstream in(o_detect.in_path);
                if (!in) {
                    std::cerr << "error: cannot open input file: " << o_detect.in_path << "\n";
                    return 2;
                }
                rendered = tcd::cli::cmd_detect(cfg, in, o_detect.in_path);
            }
            return write_output(rendered, o_detect.out_path);
        }
        if (app.got_subcommand("availability")) {
            return write_output(tcd::cli::cmd_availability(load_with_overrides(o_availability)),
                                o_availability.out_path);
        }
    } catch (const tcd::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
