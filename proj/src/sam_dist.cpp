#include "tcdkit/sam_dist.hpp"

#include "tcdkit/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace tcd::sam {

namespace {

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

} // namespace

double llr_raw_moment(const LlrCoeffs& coeffs, const GaussianSpec& metric, int n) {
    if (n < 1 || n > 4) {
        throw std::domain_error("llr_raw_moment: order must be in {1..4}");
    }
    // E[(a x^2 + b x + c)^n] expanded with the multinomial theorem; the
    // x-power of a term with i non-a factors, j of them c, is 2n - i - j.
    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double coeff = binom(n, i) * binom(i, j) * ipow(coeffs.a, n - i) *
                                 ipow(coeffs.b, i - j) * ipow(coeffs.c, j);
            if (coeff == 0.0) continue;
            total += coeff * stats::gaussian_raw_moment(metric.mu, metric.sigma2, 2 * n - i - j);
        }
    }
    return total;
}

LlrMoments sum_moments(const std::array<double, 4>& xi_y, int m, Hypothesis hypothesis) {
    if (m < 1) throw std::domain_error("sum_moments: m must be >= 1");
    const double md = static_cast<double>(m);
    const double y1 = xi_y[0];
    const double y2 = xi_y[1];
    const double y3 = xi_y[2];
    const double y4 = xi_y[3];

    LlrMoments out;
    out.xi_y = xi_y;
    out.m = m;
    out.hypothesis = hypothesis;
    out.mu_z = md * y1;
    out.sigma2_z = md * (y2 - y1 * y1);
    if (!(out.sigma2_z > 0.0)) {
        throw std::domain_error("sum_moments: nonpositive LLR variance");
    }
    out.xi_z2 = out.mu_z * out.mu_z + out.sigma2_z;
    // iid-sum expansions in the per-sample mean y1 (not the m-scaled mean).
    out.xi_z3 = md * (y3 + (md - 1.0) * (3.0 * y1 * y2 + (md - 2.0) * y1 * y1 * y1));
    const double omega = 4.0 * y1 * y3 + 3.0 * y2 * y2;
    const double gamma_t = 6.0 * y1 * y1 * y2;
    const double lambda = (md - 3.0) * ipow(y1, 4);
    out.xi_z4 = md * (y4 + (md - 1.0) * (omega + (md - 2.0) * (gamma_t + lambda)));
    return out;
}

LlrMoments llr_sum_moments(const ChangeModel& model, int m, Hypothesis hypothesis) {
    const LlrCoeffs coeffs = llr_coeffs(model);
    const GaussianSpec metric = hypothesis == Hypothesis::h0 ? model.pre() : model.actual();
    std::array<double, 4> xi_y{};
    for (int n = 1; n <= 4; ++n) xi_y[static_cast<std::size_t>(n - 1)] = llr_raw_moment(coeffs, metric, n);
    return sum_moments(xi_y, m, hypothesis);
}

std::array<double, 3> edgeworth_coefficients(const LlrMoments& mo) {
    if (!(mo.sigma2_z > 0.0)) {
        throw std::domain_error("edgeworth_coefficients: zero variance");
    }
    const double mu = mo.mu_z;
    const double s2 = mo.sigma2_z;
    const double s3 = s2 * std::sqrt(s2);
    const double c3 = (mo.xi_z3 - 3.0 * mu * mo.xi_z2 + 2.0 * mu * mu * mu) / s3;
    const double c4 =
        (mo.xi_z4 - 4.0 * mu * mo.xi_z3 + 6.0 * mu * mu * mo.xi_z2 - 3.0 * ipow(mu, 4)) / (s2 * s2) - 3.0;
    return {c3, c4, 10.0 * c3 * c3};
}

EdgeworthCdf edgeworth_from_moments(const LlrMoments& mo) {
    const auto c = edgeworth_coefficients(mo);
    return {mo.mu_z, std::sqrt(mo.sigma2_z), c[0], c[1], c[2]};
}

Probability EdgeworthCdf::cdf(double z) const {
    const double zt = (z - mu_z) / sigma_z;
    const double correction = stats::norm_pdf(zt) * (c3 / 6.0 * stats::hermite_poly(2, zt) +
                                                     c4 / 24.0 * stats::hermite_poly(3, zt) +
                                                     c6 / 720.0 * stats::hermite_poly(5, zt));
    const double f = stats::norm_cdf(zt).value() - correction;
    return Probability(f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f));
}

double EdgeworthCdf::pdf(double z) const {
    const double zt = (z - mu_z) / sigma_z;
    const double f = stats::norm_pdf(zt) / sigma_z *
                     (1.0 + c3 / 6.0 * stats::hermite_poly(3, zt) + c4 / 24.0 * stats::hermite_poly(4, zt) +
                      c6 / 720.0 * stats::hermite_poly(6, zt));
    return f < 0.0 ? 0.0 : f;
}

double EdgeworthCdf::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("EdgeworthCdf::quantile: p outside (0,1)");
    }
    double lo = mu_z - 12.0 * sigma_z;
    double hi = mu_z + 12.0 * sigma_z;
    if (cdf(lo).value() > p || cdf(hi).value() < p) {
        throw std::runtime_error("EdgeworthCdf::quantile: p not bracketed in +/- 12 sigma");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid).value() < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-10 * (1.0 + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

EvtParams evt_params(const EdgeworthCdf& f0, int m_alpha) {
    if (m_alpha < 2) throw std::domain_error("evt_params: m_alpha must be >= 2");
    const double delta = f0.quantile(1.0 - 1.0 / static_cast<double>(m_alpha));
    const double gamma = static_cast<double>(m_alpha) * f0.pdf(delta);
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::runtime_error("evt_params: nonpositive density at the EVT location");
    }
    return {delta, gamma};
}

double sam_threshold(const EvtParams& p, Probability alpha_tilde) {
    if (!(alpha_tilde.value() > 0.0 && alpha_tilde.value() < 1.0)) {
        throw std::domain_error("sam_threshold: alpha_tilde outside (0,1)");
    }
    return p.delta - std::log(-std::log1p(-alpha_tilde.value())) / p.gamma;
}

Probability sam_pfa_bound(const EvtParams& p, double h) {
    return Probability(-std::expm1(-std::exp(-p.gamma * (h - p.delta))));
}

Probability sam_pmd_bound(const EdgeworthCdf& f1, double h) { return f1.cdf(h); }

} // namespace tcd::sam
