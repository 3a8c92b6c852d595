#include "tcdkit/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tcd::stats {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

// Acklam's rational approximation to the normal quantile (~1.15e-9 relative),
// used as the initial guess before the Halley refinement.
double norm_quantile_approx(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), valid for x >= a + 1.
// Modified Lentz evaluation.
double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

Probability norm_cdf(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("norm_cdf: non-finite argument");
    }
    return Probability(0.5 * std::erfc(-x * kInvSqrt2));
}

double norm_quantile(double p) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("norm_quantile: p outside [0,1]: " + std::to_string(p));
    }
    double x = norm_quantile_approx(p);
    // One Halley step against the high-accuracy cdf. Skipped in the extreme
    // tails where the density underflows.
    const double pdf = norm_pdf(x);
    if (pdf > 0.0) {
        const double e = 0.5 * std::erfc(-x * kInvSqrt2) - p;
        const double u = e / pdf;
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("gamma_p: require a > 0, x >= 0 finite");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

Probability chi2_cdf(double x, DegreesOfFreedom k) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("chi2_cdf: x must be finite and >= 0");
    }
    const double p = gamma_p(0.5 * k.value(), 0.5 * x);
    return Probability(p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p));
}

double chi2_quantile(double p, DegreesOfFreedom k) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("chi2_quantile: p outside (0,1): " + std::to_string(p));
    }
    const int kk = k.value();
    double lo = 0.0;
    double hi = kk + 10.0 * std::sqrt(2.0 * kk) + 10.0;
    while (chi2_cdf(hi, k).value() < p) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("chi2_quantile: bracket expansion failed");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (chi2_cdf(mid, k).value() < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-14 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double hermite_poly(int k, double z) {
    if (k < 0 || k > 6) {
        throw std::domain_error("hermite_poly: degree must be in {0..6}, got " + std::to_string(k));
    }
    double hkm1 = 1.0; // He_0
    if (k == 0) return hkm1;
    double hk = z; // He_1
    for (int j = 1; j < k; ++j) {
        const double next = z * hk - static_cast<double>(j) * hkm1;
        hkm1 = hk;
        hk = next;
    }
    return hk;
}

double gaussian_raw_moment(double mu, double sigma2, int k) {
    if (sigma2 < 0.0) {
        throw std::domain_error("gaussian_raw_moment: sigma2 must be >= 0");
    }
    if (k < 0) {
        throw std::domain_error("gaussian_raw_moment: order must be >= 0");
    }
    double mkm2 = 1.0; // E[X^0]
    if (k == 0) return mkm2;
    double mkm1 = mu; // E[X^1]
    for (int j = 2; j <= k; ++j) {
        const double next = mu * mkm1 + static_cast<double>(j - 1) * sigma2 * mkm2;
        mkm2 = mkm1;
        mkm1 = next;
    }
    return mkm1;
}

} // namespace tcd::stats
