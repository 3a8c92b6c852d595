#pragma once

#include "tcdkit/change_model.hpp"
#include "tcdkit/detectors.hpp"
#include "tcdkit/sam_dist.hpp"
#include "tcdkit/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace tcd {

/// How the FMA threshold is derived for a Gaussian-sum (mean change) metric.
///
/// corollary: h = sqrt(m sigma_y^2) Phi^{-1}[(1-a)^{1/m_alpha}] + m mu_{y,0},
///            the closed form in sum units.
/// quantile:  h = Phi^{-1}[(1-a)^{1/m_alpha}], the bare standard-normal
///            quantile. Only the Gaussian branch distinguishes the two rules;
///            the chi-squared and Edgeworth branches always use their closed
///            forms.
enum class ThresholdRule { corollary, quantile };

std::string to_string(ThresholdRule rule);
ThresholdRule threshold_rule_from_string(const std::string& name);

/// Requirement set for one transient-change detection problem: change window
/// m, false-alarm window m_alpha, and the probability requirements.
struct TcdConfig {
    int m = 1;
    int m_alpha = 1;
    Probability alpha_tilde{0.01};
    Probability beta_tilde{0.01};
    double fs = 0.0;    // Hz; 0 when windows were given directly
    double t_tta = 0.0; // s
    double t_alpha = 0.0;

    static TcdConfig from_windows(int m, int m_alpha, Probability alpha_tilde, Probability beta_tilde);
    /// m = round(fs t_tta), m_alpha = round(fs t_alpha), nearest rounding.
    static TcdConfig from_times(double fs, double t_tta, double t_alpha, Probability alpha_tilde,
                                Probability beta_tilde);
};

/// Distribution of the windowed LLR sum S_m under one hypothesis.
class SumCdf {
public:
    struct Normal {
        double mean;
        double var;
    };
    struct ScaledChi2 {
        double shift; // m c
        double scale; // k_i = sigma_i^2 a, must be > 0
        int dof;      // m
    };

    static SumCdf normal(double mean, double var, Hypothesis hyp);
    static SumCdf scaled_chi2(double shift, double scale, int dof, Hypothesis hyp);
    static SumCdf edgeworth(sam::EdgeworthCdf d, Hypothesis hyp);

    Probability cdf(double x) const;
    double quantile(double p) const;
    Hypothesis hypothesis() const noexcept { return hyp_; }

    bool is_normal() const noexcept { return std::holds_alternative<Normal>(v_); }
    bool is_scaled_chi2() const noexcept { return std::holds_alternative<ScaledChi2>(v_); }
    bool is_edgeworth() const noexcept { return std::holds_alternative<sam::EdgeworthCdf>(v_); }
    const Normal& as_normal() const { return std::get<Normal>(v_); }
    const ScaledChi2& as_scaled_chi2() const { return std::get<ScaledChi2>(v_); }
    const sam::EdgeworthCdf& as_edgeworth() const { return std::get<sam::EdgeworthCdf>(v_); }

private:
    SumCdf(std::variant<Normal, ScaledChi2, sam::EdgeworthCdf> v, Hypothesis hyp)
        : v_(std::move(v)), hyp_(hyp) {}

    std::variant<Normal, ScaledChi2, sam::EdgeworthCdf> v_;
    Hypothesis hyp_;
};

/// Distribution of S_m for a mean- or variance-change model. The H1 variant
/// uses the actual post-change parameters inside the distribution and the
/// tuned ones inside the LLR coefficients. General changes route to the
/// Edgeworth machinery in sam_dist.
SumCdf llr_sum_stats(const ChangeModel& model, int m, Hypothesis hypothesis);

/// Worst-case false-alarm bound 1 - [F0(h)]^{m_alpha}.
Probability fma_pfa_bound(const SumCdf& f0, double h, int m_alpha);

/// Worst-case missed-detection bound F1(h).
Probability fma_pmd_bound(const SumCdf& f1, double h);

/// Threshold h = F0^{-1}[(1 - alpha_tilde)^{1/m_alpha}].
double fma_threshold(const SumCdf& f0, Probability alpha_tilde, int m_alpha);

/// Literature threshold for CUSUM and WLC: ln(m_alpha / alpha_tilde).
double cusum_threshold(Probability alpha_tilde, int m_alpha);

/// Threshold for any model/detector pair under the corollary or quantile
/// rule. FMA: metric-specific closed form (EVT for general changes);
/// CUSUM/WLC/Shewhart: ln(m_alpha / alpha_tilde).
double detector_threshold(const ChangeModel& model, DetectorKind kind, const TcdConfig& config,
                          ThresholdRule rule = ThresholdRule::corollary);

/// Missed-detection bound F1(h) for the metric-appropriate H1 distribution.
Probability pmd_bound(const ChangeModel& model, double h, int m);

/// False-alarm bound at h: the window-power form 1 - [F0(h)]^{m_alpha} for
/// mean/variance changes, the Gumbel form for general changes.
Probability pfa_bound(const ChangeModel& model, double h, int m, int m_alpha);

/// Analytic bound summary at one operating point.
struct BoundReport {
    DetectorKind method = DetectorKind::fma;
    double h = 0.0;
    Probability alpha_bound;
    Probability beta_bound;
    int m = 1;
    int m_alpha = 1;
    Probability alpha_tilde;
};

BoundReport bound_report(const ChangeModel& model, DetectorKind kind, const TcdConfig& config,
                         ThresholdRule rule = ThresholdRule::corollary);

/// Bound-based ROC: beta bound as a function of the false-alarm requirement.
/// Rows come back sorted ascending by alpha.
std::vector<BoundReport> bound_roc(const ChangeModel& model, DetectorKind kind,
                                   const std::vector<Probability>& alpha_grid, const TcdConfig& config,
                                   ThresholdRule rule = ThresholdRule::corollary);

} // namespace tcd
