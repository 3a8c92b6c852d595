#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tcd {

/// Stopping-time family operating on a stream of per-sample LLR values.
enum class DetectorKind { shewhart, cusum, wlc, fma };

std::string to_string(DetectorKind kind);
DetectorKind detector_kind_from_string(const std::string& name);

/// Raised alarm: 1-based sample index and the statistic that crossed h.
struct Alarm {
    std::int64_t stop_index = 0;
    double statistic = 0.0;
};

/// Streaming detector state. One instance per stream; feed LLR samples with
/// step() until it returns an alarm. Ties (statistic == h) alarm.
///
/// Windowed kinds (fma, wlc) are not operational for the first m-1 samples.
/// The window sum is maintained incrementally and recomputed exactly every
/// 2^20 steps to bound float drift.
class Detector {
public:
    /// m is the window length for fma/wlc and ignored for shewhart/cusum.
    Detector(DetectorKind kind, int m, double h);

    /// Advance by one LLR sample. Throws std::logic_error once stopped.
    std::optional<Alarm> step(double llr_value);

    DetectorKind kind() const noexcept { return kind_; }
    double threshold() const noexcept { return h_; }
    int window_length() const noexcept { return m_; }
    /// 1-based index of the last consumed sample (0 before the first step).
    std::int64_t samples_seen() const noexcept { return n_; }
    bool stopped() const noexcept { return stopped_; }

private:
    double window_statistic() const;

    DetectorKind kind_;
    int m_;
    double h_;
    std::int64_t n_ = 0;
    bool stopped_ = false;
    double cusum_acc_ = 0.0;
    double window_sum_ = 0.0;
    std::vector<double> window_; // ring buffer of the last m LLR values
};

/// Run a detector over a finite stream; first alarm or nothing.
std::optional<Alarm> run(DetectorKind kind, int m, double h, std::span<const double> llr_stream);

} // namespace tcd
