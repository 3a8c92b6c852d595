#pragma once

#include "tcdkit/change_model.hpp"
#include "tcdkit/types.hpp"

#include <array>

namespace tcd::sam {

/// Raw moments of one LLR sample and of the windowed sum S_m built from it.
struct LlrMoments {
    std::array<double, 4> xi_y{}; // xi_y[n-1] = E[Y^n], n = 1..4
    double mu_z = 0.0;            // E[S_m]
    double sigma2_z = 0.0;        // Var[S_m]
    double xi_z2 = 0.0;           // E[S_m^2]
    double xi_z3 = 0.0;           // E[S_m^3]
    double xi_z4 = 0.0;           // E[S_m^4]
    int m = 1;
    Hypothesis hypothesis = Hypothesis::h0;
};

/// Two-term Edgeworth expansion of the cdf of S_m around its Gaussian core.
///
/// With zt = (z - mu_z) / sigma_z:
///   F(z) = Phi(zt) - phi(zt) [ C3/3! He_2(zt) + C4/4! He_3(zt) + C6/6! He_5(zt) ]
///   f(z) = phi(zt)/sigma_z [ 1 + C3/3! He_3(zt) + C4/4! He_4(zt) + C6/6! He_6(zt) ]
/// where C3 is the skewness, C4 the excess kurtosis and C6 = 10 C3^2.
/// The cdf is clamped to [0,1]; the pdf to >= 0.
struct EdgeworthCdf {
    double mu_z = 0.0;
    double sigma_z = 1.0;
    double c3 = 0.0;
    double c4 = 0.0;
    double c6 = 0.0;

    Probability cdf(double z) const;
    double pdf(double z) const;
    /// Bracketed bisection over [mu_z - 12 sigma_z, mu_z + 12 sigma_z]. The
    /// truncated series can dip locally; the result is a crossing point of
    /// the clamped cdf.
    double quantile(double p) const;
};

/// Gumbel approximation of the maximum-over-window exceedance, from the H0
/// sum distribution: delta = F0^{-1}(1 - 1/m_alpha), gamma = m_alpha f0(delta).
struct EvtParams {
    double delta = 0.0;
    double gamma = 1.0;
};

/// Raw moment E[Y^n] of Y = a X^2 + b X + c for X ~ metric, n in {1..4},
/// expanded over the Gaussian raw moments of X.
double llr_raw_moment(const LlrCoeffs& coeffs, const GaussianSpec& metric, int n);

/// Moments of S_m = sum of m iid copies of Y, from the per-sample raw moments.
LlrMoments sum_moments(const std::array<double, 4>& xi_y, int m, Hypothesis hypothesis);

/// Convenience: per-sample moments then sum moments for the model/hypothesis.
/// Coefficients always come from the tuned parameters; the H1 metric
/// distribution uses the actual post-change parameters.
LlrMoments llr_sum_moments(const ChangeModel& model, int m, Hypothesis hypothesis);

/// (C3, C4, C6): skewness, excess kurtosis and the 10 C3^2 cross term.
std::array<double, 3> edgeworth_coefficients(const LlrMoments& moments);

/// Edgeworth cdf assembled from sum moments.
EdgeworthCdf edgeworth_from_moments(const LlrMoments& moments);

/// EVT location/rate from the H0 sum cdf. Requires m_alpha >= 2.
EvtParams evt_params(const EdgeworthCdf& f0, int m_alpha);

/// h(alpha) = delta - ln(-ln(1 - alpha)) / gamma.
double sam_threshold(const EvtParams& p, Probability alpha_tilde);

/// 1 - exp(-e^{-gamma (h - delta)}).
Probability sam_pfa_bound(const EvtParams& p, double h);

/// F1(h) under the H1 Edgeworth cdf.
Probability sam_pmd_bound(const EdgeworthCdf& f1, double h);

} // namespace tcd::sam
