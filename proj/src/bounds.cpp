#include "tcdkit/bounds.hpp"

#include "tcdkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcd {

std::string to_string(ThresholdRule rule) {
    return rule == ThresholdRule::corollary ? "corollary" : "quantile";
}

ThresholdRule threshold_rule_from_string(const std::string& name) {
    if (name == "corollary") return ThresholdRule::corollary;
    if (name == "quantile") return ThresholdRule::quantile;
    throw std::invalid_argument("unknown threshold rule: " + name);
}

TcdConfig TcdConfig::from_windows(int m, int m_alpha, Probability alpha_tilde, Probability beta_tilde) {
    if (m < 1 || m_alpha < 1) {
        throw std::invalid_argument("TcdConfig: m and m_alpha must be >= 1");
    }
    TcdConfig c;
    c.m = m;
    c.m_alpha = m_alpha;
    c.alpha_tilde = alpha_tilde;
    c.beta_tilde = beta_tilde;
    return c;
}

TcdConfig TcdConfig::from_times(double fs, double t_tta, double t_alpha, Probability alpha_tilde,
                                Probability beta_tilde) {
    if (!(fs > 0.0) || !(t_tta > 0.0) || !(t_alpha > 0.0)) {
        throw std::invalid_argument("TcdConfig: fs, t_tta and t_alpha must be > 0");
    }
    const int m = static_cast<int>(std::lround(fs * t_tta));
    const int m_alpha = static_cast<int>(std::lround(fs * t_alpha));
    TcdConfig c = from_windows(std::max(m, 1), std::max(m_alpha, 1), alpha_tilde, beta_tilde);
    c.fs = fs;
    c.t_tta = t_tta;
    c.t_alpha = t_alpha;
    return c;
}

SumCdf SumCdf::normal(double mean, double var, Hypothesis hyp) {
    if (!(var > 0.0)) throw std::domain_error("SumCdf::normal: variance must be > 0");
    return SumCdf(Normal{mean, var}, hyp);
}

SumCdf SumCdf::scaled_chi2(double shift, double scale, int dof, Hypothesis hyp) {
    if (!(scale > 0.0)) {
        throw std::domain_error("SumCdf::scaled_chi2: scale must be > 0 (variance increase)");
    }
    if (dof < 1) throw std::domain_error("SumCdf::scaled_chi2: dof must be >= 1");
    return SumCdf(ScaledChi2{shift, scale, dof}, hyp);
}

SumCdf SumCdf::edgeworth(sam::EdgeworthCdf d, Hypothesis hyp) { return SumCdf(d, hyp); }

Probability SumCdf::cdf(double x) const {
    if (is_normal()) {
        const auto& n = as_normal();
        return stats::norm_cdf((x - n.mean) / std::sqrt(n.var));
    }
    if (is_scaled_chi2()) {
        const auto& s = as_scaled_chi2();
        const double t = (x - s.shift) / s.scale;
        if (t <= 0.0) return Probability(0.0);
        return stats::chi2_cdf(t, DegreesOfFreedom(s.dof));
    }
    return as_edgeworth().cdf(x);
}

double SumCdf::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("SumCdf::quantile: p outside (0,1)");
    }
    if (is_normal()) {
        const auto& n = as_normal();
        return n.mean + std::sqrt(n.var) * stats::norm_quantile(p);
    }
    if (is_scaled_chi2()) {
        const auto& s = as_scaled_chi2();
        return s.shift + s.scale * stats::chi2_quantile(p, DegreesOfFreedom(s.dof));
    }
    return as_edgeworth().quantile(p);
}

SumCdf llr_sum_stats(const ChangeModel& model, int m, Hypothesis hypothesis) {
    if (m < 1) throw std::domain_error("llr_sum_stats: m must be >= 1");
    const double md = static_cast<double>(m);
    if (model.is_mean_change()) {
        const auto& mc = model.mean_change();
        const double d = mc.mu1_tuned - mc.mu0;
        const double mu_y0 = -d * d / (2.0 * mc.sigma2);
        const double var_y = -2.0 * mu_y0;
        if (hypothesis == Hypothesis::h0) {
            return SumCdf::normal(md * mu_y0, md * var_y, hypothesis);
        }
        const double mu_y1 = d / mc.sigma2 * (mc.mu1_actual - 0.5 * (mc.mu1_tuned + mc.mu0));
        return SumCdf::normal(md * mu_y1, md * var_y, hypothesis);
    }
    if (model.is_variance_change()) {
        const auto& vc = model.variance_change();
        const LlrCoeffs co = llr_coeffs(model);
        const double sigma2_i = hypothesis == Hypothesis::h0 ? vc.sigma2_0 : vc.sigma2_1_actual;
        return SumCdf::scaled_chi2(md * co.c, sigma2_i * co.a, m, hypothesis);
    }
    throw std::invalid_argument(
        "llr_sum_stats: general Gaussian changes have no closed-form sum cdf; "
        "use the Edgeworth machinery in tcd::sam");
}

Probability fma_pfa_bound(const SumCdf& f0, double h, int m_alpha) {
    if (m_alpha < 1) throw std::domain_error("fma_pfa_bound: m_alpha must be >= 1");
    const double f = f0.cdf(h).value();
    return Probability(1.0 - std::pow(f, static_cast<double>(m_alpha)));
}

Probability fma_pmd_bound(const SumCdf& f1, double h) { return f1.cdf(h); }

double fma_threshold(const SumCdf& f0, Probability alpha_tilde, int m_alpha) {
    if (!(alpha_tilde.value() > 0.0 && alpha_tilde.value() < 1.0)) {
        throw std::domain_error("fma_threshold: alpha_tilde outside (0,1)");
    }
    if (m_alpha < 1) throw std::domain_error("fma_threshold: m_alpha must be >= 1");
    const double p = std::pow(1.0 - alpha_tilde.value(), 1.0 / static_cast<double>(m_alpha));
    return f0.quantile(p);
}

double cusum_threshold(Probability alpha_tilde, int m_alpha) {
    if (!(alpha_tilde.value() > 0.0 && alpha_tilde.value() < 1.0)) {
        throw std::domain_error("cusum_threshold: alpha_tilde outside (0,1)");
    }
    if (m_alpha < 1) throw std::domain_error("cusum_threshold: m_alpha must be >= 1");
    return std::log(static_cast<double>(m_alpha) / alpha_tilde.value());
}

double detector_threshold(const ChangeModel& model, DetectorKind kind, const TcdConfig& config,
                          ThresholdRule rule) {
    if (kind != DetectorKind::fma) {
        return cusum_threshold(config.alpha_tilde, config.m_alpha);
    }
    if (model.is_general_change()) {
        const auto f0 = sam::edgeworth_from_moments(sam::llr_sum_moments(model, config.m, Hypothesis::h0));
        return sam::sam_threshold(sam::evt_params(f0, config.m_alpha), config.alpha_tilde);
    }
    const SumCdf f0 = llr_sum_stats(model, config.m, Hypothesis::h0);
    if (rule == ThresholdRule::quantile && f0.is_normal()) {
        const double p = std::pow(1.0 - config.alpha_tilde.value(), 1.0 / config.m_alpha);
        return stats::norm_quantile(p);
    }
    return fma_threshold(f0, config.alpha_tilde, config.m_alpha);
}

Probability pmd_bound(const ChangeModel& model, double h, int m) {
    if (model.is_general_change()) {
        const auto f1 = sam::edgeworth_from_moments(sam::llr_sum_moments(model, m, Hypothesis::h1));
        return sam::sam_pmd_bound(f1, h);
    }
    return fma_pmd_bound(llr_sum_stats(model, m, Hypothesis::h1), h);
}

Probability pfa_bound(const ChangeModel& model, double h, int m, int m_alpha) {
    if (model.is_general_change()) {
        const auto f0 = sam::edgeworth_from_moments(sam::llr_sum_moments(model, m, Hypothesis::h0));
        return sam::sam_pfa_bound(sam::evt_params(f0, m_alpha), h);
    }
    return fma_pfa_bound(llr_sum_stats(model, m, Hypothesis::h0), h, m_alpha);
}

BoundReport bound_report(const ChangeModel& model, DetectorKind kind, const TcdConfig& config,
                         ThresholdRule rule) {
    BoundReport r;
    r.method = kind;
    r.m = config.m;
    r.m_alpha = config.m_alpha;
    r.alpha_tilde = config.alpha_tilde;
    r.h = detector_threshold(model, kind, config, rule);
    r.beta_bound = pmd_bound(model, r.h, config.m);
    r.alpha_bound = kind == DetectorKind::fma
                        ? pfa_bound(model, r.h, config.m, config.m_alpha)
                        : config.alpha_tilde; // CUSUM/WLC: h chosen so Pfa <= alpha_tilde
    return r;
}

std::vector<BoundReport> bound_roc(const ChangeModel& model, DetectorKind kind,
                                   const std::vector<Probability>& alpha_grid, const TcdConfig& config,
                                   ThresholdRule rule) {
    std::vector<BoundReport> rows;
    rows.reserve(alpha_grid.size());
    for (const Probability& alpha : alpha_grid) {
        TcdConfig point = config;
        point.alpha_tilde = alpha;
        rows.push_back(bound_report(model, kind, point, rule));
    }
    std::sort(rows.begin(), rows.end(),
              [](const BoundReport& a, const BoundReport& b) { return a.alpha_tilde.value() < b.alpha_tilde.value(); });
    return rows;
}

} // namespace tcd
