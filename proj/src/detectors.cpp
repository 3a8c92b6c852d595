#include "tcdkit/detectors.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcd {

namespace {
constexpr std::int64_t kRecomputePeriod = std::int64_t{1} << 20;
}

std::string to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::shewhart: return "shewhart";
        case DetectorKind::cusum: return "cusum";
        case DetectorKind::wlc: return "wlc";
        case DetectorKind::fma: return "fma";
    }
    return "unknown";
}

DetectorKind detector_kind_from_string(const std::string& name) {
    if (name == "shewhart") return DetectorKind::shewhart;
    if (name == "cusum") return DetectorKind::cusum;
    if (name == "wlc") return DetectorKind::wlc;
    if (name == "fma") return DetectorKind::fma;
    throw std::invalid_argument("unknown detector kind: " + name);
}

Detector::Detector(DetectorKind kind, int m, double h) : kind_(kind), m_(m), h_(h) {
    const bool windowed = kind == DetectorKind::fma || kind == DetectorKind::wlc;
    if (windowed) {
        if (m < 1) throw std::invalid_argument("windowed detector requires m >= 1");
        window_.reserve(static_cast<std::size_t>(m));
    } else {
        m_ = 1;
    }
}

double Detector::window_statistic() const {
    if (kind_ == DetectorKind::fma) return window_sum_;
    // WLC: max over the suffix sums of the window, newest sample first.
    const std::size_t m = static_cast<std::size_t>(m_);
    const std::size_t newest = static_cast<std::size_t>((n_ - 1) % m_);
    double acc = window_[newest];
    double best = acc;
    for (std::size_t back = 1; back < m; ++back) {
        acc += window_[(newest + m - back) % m];
        best = std::max(best, acc);
    }
    return best;
}

std::optional<Alarm> Detector::step(double llr_value) {
    if (stopped_) {
        throw std::logic_error("Detector::step called after an alarm");
    }
    ++n_;

    double statistic = 0.0;
    bool operational = true;
    switch (kind_) {
        case DetectorKind::shewhart:
            statistic = llr_value;
            break;
        case DetectorKind::cusum:
            cusum_acc_ = std::max(cusum_acc_, 0.0) + llr_value;
            statistic = cusum_acc_;
            break;
        case DetectorKind::fma:
        case DetectorKind::wlc: {
            if (window_.size() < static_cast<std::size_t>(m_)) {
                window_.push_back(llr_value);
                window_sum_ += llr_value;
            } else {
                const std::size_t slot = static_cast<std::size_t>((n_ - 1) % m_);
                window_sum_ += llr_value - window_[slot];
                window_[slot] = llr_value;
            }
            if (n_ % kRecomputePeriod == 0) {
                window_sum_ = 0.0;
                for (double v : window_) window_sum_ += v;
            }
            operational = n_ >= m_;
            if (operational) statistic = window_statistic();
            break;
        }
    }

    if (operational && statistic >= h_) {
        stopped_ = true;
        return Alarm{n_, statistic};
    }
    return std::nullopt;
}

std::optional<Alarm> run(DetectorKind kind, int m, double h, std::span<const double> llr_stream) {
    Detector det(kind, m, h);
    for (double v : llr_stream) {
        if (auto alarm = det.step(v)) return alarm;
    }
    return std::nullopt;
}

} // namespace tcd
