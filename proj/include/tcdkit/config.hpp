#pragma once

#include "tcdkit/bounds.hpp"
#include "tcdkit/change_model.hpp"
#include "tcdkit/detectors.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcd::cli {

/// Configuration problem (bad file, bad field, missing input). Maps to exit
/// code 2 at the CLI boundary.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MetricConfig {
    std::string name;
    ChangeModel model;
};

struct MonteCarloConfig {
    std::int64_t runs = 10000;
    std::uint64_t seed = 1;
    int threads = 0; // 0 = hardware concurrency
    std::vector<std::int64_t> v_sweep;
};

struct DetectConfig {
    std::string metric;
    std::optional<double> h; // absent: derive from the false-alarm requirement
};

/// Parsed and invariant-checked run configuration.
struct RunConfig {
    std::vector<MetricConfig> metrics;
    TcdConfig tcd;
    std::vector<DetectorKind> detectors;
    ThresholdRule rule = ThresholdRule::corollary;
    std::vector<Probability> alpha_grid;
    MonteCarloConfig montecarlo;
    std::optional<DetectConfig> detect;
};

/// Load and validate a JSON config file. Throws ConfigError with the
/// offending field in the message.
RunConfig load_config(const std::string& path);

/// Parse a config from JSON text (used by load_config and tests).
RunConfig parse_config(const std::string& json_text, const std::string& origin = "<string>");

} // namespace tcd::cli
