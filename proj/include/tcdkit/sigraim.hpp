#pragma once

#include "tcdkit/bounds.hpp"
#include "tcdkit/change_model.hpp"

#include <string>

namespace tcd {

/// Availability verdict for one metric/method pair: the integrity-risk bound
/// at the requirement-derived threshold, compared against beta_tilde.
struct AvailabilityReport {
    std::string metric;
    DetectorKind method = DetectorKind::fma;
    double h = 0.0;
    Probability beta_bound;
    bool available = false;
    TcdConfig config;
    ThresholdRule rule = ThresholdRule::corollary;
};

/// Fix h so the false-alarm requirement holds (quantile/EVT closed forms
/// for FMA, ln(m_alpha/alpha) for CUSUM and WLC, which share one branch),
/// evaluate the metric-appropriate missed-detection bound, and declare the
/// algorithm available iff it meets beta_tilde.
AvailabilityReport availability(const ChangeModel& model, const TcdConfig& config, DetectorKind method,
                                ThresholdRule rule = ThresholdRule::corollary,
                                const std::string& metric_name = "");

} // namespace tcd
