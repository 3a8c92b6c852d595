#pragma once

#include "tcdkit/bounds.hpp"
#include "tcdkit/change_model.hpp"
#include "tcdkit/detectors.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace tcd::mc {

/// SplitMix64 generator with per-run substreams. Stream r under seed s
/// starts from the scrambled origin mix64(s + r * 0x9E3779B97F4A7C15) and
/// then follows the standard golden-gamma orbit, so distinct runs use
/// unrelated state windows. Estimates therefore do not depend on how runs
/// are partitioned across threads. Gaussian variates use the inverse-cdf
/// transform, so equal seeds reproduce bit-identical streams on any platform
/// with IEEE doubles.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform in the open interval (0, 1).
    double uniform01();
    double gaussian(double mu, double sigma);

private:
    std::uint64_t state_;
};

/// Derived seed for an auxiliary simulation (ROC grid points, rhs runs...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

/// One simulation request. v_sweep lists candidate change onsets for the
/// missed-detection estimate (all > m); empty means the default {m + 1}.
struct SimScenario {
    explicit SimScenario(ChangeModel m) : model(std::move(m)) {}

    ChangeModel model;
    DetectorKind kind = DetectorKind::fma;
    double h = 0.0;
    int m = 1;
    int m_alpha = 1;
    std::vector<std::int64_t> v_sweep;
    std::int64_t runs = 10000;
    std::uint64_t seed = 0;
    int threads = 1; // <= 0 picks hardware concurrency
};

/// Estimated probability with its binomial standard error. `runs` is the
/// number of runs the estimate is over (the conditioning count for Pmd), so
/// stderr = sqrt(p (1-p) / runs) always holds.
struct SimEstimate {
    double p_hat = 0.0;
    double stderr_ = 0.0;
    std::int64_t runs = 0;
    std::uint64_t seed = 0;
};

/// Worst-case false-alarm probability under pure H0: the fraction of runs
/// alarming in the first operational window of length m_alpha. A run
/// simulates m + m_alpha - 1 samples for fma/wlc and m_alpha for
/// cusum/shewhart.
SimEstimate simulate_pfa(const SimScenario& s);

/// Worst-case missed-detection probability: among runs surviving to the
/// change onset v, the fraction not alarming within m samples of it. Samples
/// before v come from the pre-change distribution, samples in [v, v+m) from
/// the actual post-change one. With a sweep, the worst (largest) estimate is
/// returned. Throws when no run survives to v.
SimEstimate simulate_pmd(const SimScenario& s);

/// One simulated ROC point: bound and estimate for both error probabilities.
struct RocPoint {
    double alpha_target = 0.0;
    double h = 0.0;
    double pfa_bound = 0.0;
    double pmd_bound = 0.0;
    SimEstimate pfa;
    SimEstimate pmd;
};

/// Simulated ROC over the requirement grid; thresholds follow the detector
/// kind (quantile/EVT closed forms for FMA, ln(m_alpha/alpha) for
/// CUSUM/WLC). Rows sorted ascending by alpha_target.
std::vector<RocPoint> simulate_roc(const ChangeModel& model, DetectorKind kind,
                                   const std::vector<Probability>& alpha_grid, const TcdConfig& config,
                                   std::int64_t runs, std::uint64_t seed,
                                   ThresholdRule rule = ThresholdRule::corollary, int threads = 1);

/// Monte-Carlo check of the association inequality
/// P( S_i < h for i = m .. m+N-1 ) >= [P(S_m < h)]^N under H0.
/// Returns (lhs, rhs); the rhs standard error uses the delta method.
std::pair<SimEstimate, SimEstimate> check_association(const ChangeModel& model, double h, int n_windows,
                                                      int m, std::int64_t runs, std::uint64_t seed,
                                                      int threads = 1);

} // namespace tcd::mc
