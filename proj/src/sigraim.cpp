#include "tcdkit/sigraim.hpp"

namespace tcd {

AvailabilityReport availability(const ChangeModel& model, const TcdConfig& config, DetectorKind method,
                                ThresholdRule rule, const std::string& metric_name) {
    AvailabilityReport r;
    r.metric = metric_name;
    r.method = method;
    r.config = config;
    r.rule = rule;
    r.h = detector_threshold(model, method, config, rule);
    r.beta_bound = pmd_bound(model, r.h, config.m);
    r.available = r.beta_bound.value() <= config.beta_tilde.value();
    return r;
}

} // namespace tcd
