#pragma once

#include "tcdkit/config.hpp"

#include <istream>
#include <string>

namespace tcd::cli {

/// Command bodies shared by the CLI entry point and the test suites. Each
/// returns the rendered report (JSON, or CSV for roc); the caller decides
/// where it goes.

/// Thresholds per (metric, method) at the configured alpha_tilde.
std::string cmd_threshold(const RunConfig& cfg);

/// Thresholds plus analytic alpha/beta bounds per (metric, method).
std::string cmd_bounds(const RunConfig& cfg);

/// Bound + simulated ROC over the alpha grid, one CSV row per
/// (metric, method, alpha).
std::string cmd_roc(const RunConfig& cfg);

/// Simulated worst-case Pfa and Pmd at the configured operating point.
std::string cmd_simulate(const RunConfig& cfg);

/// Stream a `n,value` CSV through the configured detectors.
std::string cmd_detect(const RunConfig& cfg, std::istream& csv_in, const std::string& stream_id);

/// Availability verdict per (metric, method).
std::string cmd_availability(const RunConfig& cfg);

} // namespace tcd::cli
