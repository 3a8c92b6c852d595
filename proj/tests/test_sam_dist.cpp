#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tcdkit/bounds.hpp"
#include "tcdkit/montecarlo.hpp"
#include "tcdkit/sam_dist.hpp"
#include "tcdkit/stats.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace tcd;
using doctest::Approx;

namespace {

ChangeModel case3_model() {
    return ChangeModel(GeneralChange{{0.1, 1.14e-3}, {0.2, 2.03e-3}, {0.2, 2.03e-3}});
}

// Batch-means standard error of an arbitrary statistic of iid samples.
template <typename Stat>
std::pair<double, double> batch_estimate(const std::vector<double>& samples, int batches, Stat stat) {
    const std::size_t per = samples.size() / static_cast<std::size_t>(batches);
    std::vector<double> vals;
    for (int b = 0; b < batches; ++b) {
        vals.push_back(stat(samples.data() + per * static_cast<std::size_t>(b), per));
    }
    const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / batches;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= (batches - 1);
    return {mean, std::sqrt(var / batches)};
}

std::vector<double> simulate_sums(const ChangeModel& model, Hypothesis hyp, int m, std::size_t runs,
                                  std::uint64_t seed) {
    const GaussianSpec g = hyp == Hypothesis::h0 ? model.pre() : model.actual();
    const double sigma = std::sqrt(g.sigma2);
    std::vector<double> sums(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        mc::Rng rng(seed, r);
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += llr(model, rng.gaussian(g.mu, sigma));
        sums[r] = s;
    }
    return sums;
}

double ks_distance(std::vector<double> samples, const sam::EdgeworthCdf& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf.cdf(samples[i]).value();
        sup = std::max(sup, std::fabs(f - static_cast<double>(i + 1) / n));
        sup = std::max(sup, std::fabs(f - static_cast<double>(i) / n));
    }
    return sup;
}

} // namespace

TEST_CASE("llr_raw_moment: first order and identity transform") {
    const GaussianSpec g{0.7, 1.9};
    const LlrCoeffs co{0.3, -1.1, 0.25};
    CHECK(sam::llr_raw_moment(co, g, 1) ==
          Approx(co.a * (g.mu * g.mu + g.sigma2) + co.b * g.mu + co.c).epsilon(1e-12));

    const LlrCoeffs identity{0.0, 1.0, 0.0};
    for (int n = 1; n <= 4; ++n) {
        CHECK(sam::llr_raw_moment(identity, g, n) ==
              Approx(stats::gaussian_raw_moment(g.mu, g.sigma2, n)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(sam::llr_raw_moment(co, g, 5), std::domain_error);
}

TEST_CASE("llr_raw_moment matches a Monte-Carlo estimate for the SAM coefficients") {
    const ChangeModel model = case3_model();
    const LlrCoeffs co = llr_coeffs(model);
    const GaussianSpec g = model.pre();

    const std::size_t n = 1000000;
    std::vector<double> y2(n);
    mc::Rng rng(91, 0);
    for (auto& v : y2) {
        const double y = llr(model, rng.gaussian(g.mu, std::sqrt(g.sigma2)));
        v = y * y;
    }
    const auto [mc_mean, mc_se] = batch_estimate(y2, 20, [](const double* p, std::size_t k) {
        return std::accumulate(p, p + k, 0.0) / static_cast<double>(k);
    });
    const double analytic = sam::llr_raw_moment(co, g, 2);
    CHECK(std::fabs(analytic - mc_mean) < 3.0 * mc_se);
}

TEST_CASE("sum_moments: m = 1 is the identity") {
    const std::array<double, 4> xi{1.5, 4.0, 11.0, 39.0};
    const auto mo = sam::sum_moments(xi, 1, Hypothesis::h0);
    CHECK(mo.mu_z == Approx(1.5));
    CHECK(mo.sigma2_z == Approx(4.0 - 2.25));
    CHECK(mo.xi_z3 == Approx(11.0));
    CHECK(mo.xi_z4 == Approx(39.0));
    CHECK(mo.xi_z2 == Approx(4.0));
}

TEST_CASE("sum_moments: linear-Gaussian case has the closed-form normal moments") {
    // a = 0: Y is Gaussian, so S_m ~ N(m mu, m var) and the third raw moment
    // is mu3 + 3 mu s2 with the sum-level parameters.
    const GaussianSpec g{0.4, 2.2};
    const LlrCoeffs co{0.0, 1.3, -0.7};
    const int m = 6;
    std::array<double, 4> xi{};
    for (int n = 1; n <= 4; ++n) xi[static_cast<std::size_t>(n - 1)] = sam::llr_raw_moment(co, g, n);
    const auto mo = sam::sum_moments(xi, m, Hypothesis::h0);

    const double mu = co.b * g.mu + co.c;
    const double s2 = co.b * co.b * g.sigma2;
    CHECK(mo.mu_z == Approx(m * mu).epsilon(1e-12));
    CHECK(mo.sigma2_z == Approx(m * s2).epsilon(1e-12));
    CHECK(mo.xi_z3 == Approx(stats::gaussian_raw_moment(m * mu, m * s2, 3)).epsilon(1e-12));
    CHECK(mo.xi_z4 == Approx(stats::gaussian_raw_moment(m * mu, m * s2, 4)).epsilon(1e-12));
}

TEST_CASE("sum_moments invariant: sigma2_z consistent with raw moments") {
    const auto mo = sam::llr_sum_moments(case3_model(), 6, Hypothesis::h0);
    CHECK(mo.sigma2_z == Approx(mo.xi_z2 - mo.mu_z * mo.mu_z).epsilon(1e-9));
}

TEST_CASE("case-3 sum moments match Monte Carlo within 3 batch standard errors") {
    const ChangeModel model = case3_model();
    const auto mo = sam::llr_sum_moments(model, 6, Hypothesis::h0);
    auto sums = simulate_sums(model, Hypothesis::h0, 6, 400000, 92);

    struct Named {
        double analytic;
        double (*stat)(const double*, std::size_t);
    };
    const auto mean_stat = [](const double* p, std::size_t k) {
        return std::accumulate(p, p + k, 0.0) / static_cast<double>(k);
    };
    const auto var_stat = [](const double* p, std::size_t k) {
        const double m = std::accumulate(p, p + k, 0.0) / static_cast<double>(k);
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i) acc += (p[i] - m) * (p[i] - m);
        return acc / static_cast<double>(k);
    };
    const auto skew_stat = [](const double* p, std::size_t k) {
        const double m = std::accumulate(p, p + k, 0.0) / static_cast<double>(k);
        double m2 = 0.0, m3 = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double d = p[i] - m;
            m2 += d * d;
            m3 += d * d * d;
        }
        m2 /= static_cast<double>(k);
        m3 /= static_cast<double>(k);
        return m3 / std::pow(m2, 1.5);
    };
    const auto kurt_stat = [](const double* p, std::size_t k) {
        const double m = std::accumulate(p, p + k, 0.0) / static_cast<double>(k);
        double m2 = 0.0, m4 = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double d = p[i] - m;
            m2 += d * d;
            m4 += d * d * d * d;
        }
        m2 /= static_cast<double>(k);
        m4 /= static_cast<double>(k);
        return m4 / (m2 * m2) - 3.0;
    };

    const auto coeffs = sam::edgeworth_coefficients(mo);
    {
        const auto [est, se] = batch_estimate(sums, 20, mean_stat);
        CHECK(std::fabs(mo.mu_z - est) < 3.0 * se);
    }
    {
        const auto [est, se] = batch_estimate(sums, 20, var_stat);
        CHECK(std::fabs(mo.sigma2_z - est) < 3.0 * se);
    }
    {
        const auto [est, se] = batch_estimate(sums, 20, skew_stat);
        CHECK(std::fabs(coeffs[0] - est) < 3.0 * se);
    }
    {
        const auto [est, se] = batch_estimate(sums, 20, kurt_stat);
        CHECK(std::fabs(coeffs[1] - est) < 3.0 * se);
    }
}

TEST_CASE("edgeworth_coefficients anchors") {
    // Exact Gaussian moments give zero coefficients.
    std::array<double, 4> xi{};
    for (int n = 1; n <= 4; ++n) xi[static_cast<std::size_t>(n - 1)] = stats::gaussian_raw_moment(1.3, 0.8, n);
    const auto c_gauss = sam::edgeworth_coefficients(sam::sum_moments(xi, 1, Hypothesis::h0));
    CHECK(c_gauss[0] == Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(c_gauss[1] == Approx(0.0).scale(1.0).epsilon(1e-9));

    // Chi-squared(k) raw moments: E[X^n] = k (k+2) ... (k+2n-2).
    for (int k : {2, 6, 11}) {
        sam::LlrMoments mo;
        mo.mu_z = k;
        mo.sigma2_z = 2.0 * k;
        mo.xi_z2 = static_cast<double>(k) * (k + 2);
        mo.xi_z3 = static_cast<double>(k) * (k + 2) * (k + 4);
        mo.xi_z4 = static_cast<double>(k) * (k + 2) * (k + 4) * (k + 6);
        const auto c = sam::edgeworth_coefficients(mo);
        CHECK(c[0] == Approx(std::sqrt(8.0 / k)).epsilon(1e-9));
        CHECK(c[1] == Approx(12.0 / k).epsilon(1e-9));
        CHECK(c[2] == Approx(10.0 * c[0] * c[0]).epsilon(1e-12));
    }
}

TEST_CASE("edgeworth coefficients are scale invariant") {
    const auto mo = sam::llr_sum_moments(case3_model(), 6, Hypothesis::h0);
    const auto base = sam::edgeworth_coefficients(mo);
    for (double c : {0.1, 3.0, 42.0}) {
        sam::LlrMoments scaled = mo;
        scaled.mu_z *= c;
        scaled.sigma2_z *= c * c;
        scaled.xi_z2 *= c * c;
        scaled.xi_z3 *= c * c * c;
        scaled.xi_z4 *= c * c * c * c;
        const auto s = sam::edgeworth_coefficients(scaled);
        CHECK(s[0] == Approx(base[0]).epsilon(1e-9));
        CHECK(s[1] == Approx(base[1]).epsilon(1e-9));
        CHECK(s[2] == Approx(base[2]).epsilon(1e-9));
    }
}

TEST_CASE("edgeworth cdf/pdf: Gaussian reduction and tails") {
    sam::EdgeworthCdf d{2.0, 3.0, 0.0, 0.0, 0.0};
    for (double z = -10.0; z <= 14.0; z += 0.61) {
        CHECK(d.cdf(z).value() == Approx(oracle::norm_cdf((z - 2.0) / 3.0)).epsilon(1e-9).scale(1.0));
    }
    const auto f1 = sam::edgeworth_from_moments(sam::llr_sum_moments(case3_model(), 6, Hypothesis::h1));
    CHECK(f1.cdf(-1e9).value() == 0.0);
    CHECK(f1.cdf(1e9).value() == 1.0);
    for (double z = -40.0; z <= 80.0; z += 1.7) {
        CHECK(f1.pdf(z) >= 0.0);
    }
}

TEST_CASE("edgeworth cdf tracks the empirical S_m distribution for case 3") {
    const ChangeModel model = case3_model();
    for (auto hyp : {Hypothesis::h0, Hypothesis::h1}) {
        const auto cdf = sam::edgeworth_from_moments(sam::llr_sum_moments(model, 6, hyp));
        auto sums = simulate_sums(model, hyp, 6, 200000, hyp == Hypothesis::h0 ? 93 : 94);
        CHECK(ks_distance(std::move(sums), cdf) < 0.01);
    }
}

TEST_CASE("evt_params anchors") {
    const sam::EdgeworthCdf std_normal{0.0, 1.0, 0.0, 0.0, 0.0};
    const auto p300 = sam::evt_params(std_normal, 300);
    // Frozen from the normal quantile/pdf oracle.
    CHECK(p300.delta == Approx(2.713052).epsilon(1e-3));
    CHECK(p300.gamma == Approx(300.0 * stats::norm_pdf(p300.delta)).epsilon(1e-9));
    CHECK(p300.gamma == Approx(3.0178).epsilon(1e-2));

    const auto p2 = sam::evt_params(std_normal, 2);
    CHECK(p2.delta == Approx(0.0).scale(1.0).epsilon(1e-8));
    CHECK(p2.gamma == Approx(0.7978846).epsilon(1e-4));

    CHECK_THROWS_AS(sam::evt_params(std_normal, 1), std::domain_error);
}

TEST_CASE("sam_threshold arithmetic") {
    CHECK(sam::sam_threshold({2.713, 3.087}, Probability(0.01)) == Approx(4.203).epsilon(0.01 / 4.203));
    const sam::EvtParams p{1.7, 2.9};
    CHECK(sam::sam_threshold(p, Probability(1.0 - std::exp(-1.0))) == Approx(p.delta).epsilon(1e-12));
}

TEST_CASE("sam pfa bound: Gumbel location and tail") {
    const sam::EvtParams p{1.2, 0.8};
    CHECK(sam::sam_pfa_bound(p, p.delta).value() == Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(sam::sam_pfa_bound(p, 1e9).value() == 0.0);
}

TEST_CASE("the EVT formula is its own inverse") {
    const auto f0 = sam::edgeworth_from_moments(sam::llr_sum_moments(case3_model(), 6, Hypothesis::h0));
    const auto evt = sam::evt_params(f0, 300);
    for (double alpha : {1e-4, 1e-3, 1e-2, 0.1, 0.63}) {
        const double h = sam::sam_threshold(evt, Probability(alpha));
        CHECK(sam::sam_pfa_bound(evt, h).value() == Approx(alpha).epsilon(1e-10));
    }
}

TEST_CASE("case-3 chain reproduces the reported numbers") {
    const ChangeModel model = case3_model();
    const auto f0 = sam::edgeworth_from_moments(sam::llr_sum_moments(model, 6, Hypothesis::h0));
    const auto f1 = sam::edgeworth_from_moments(sam::llr_sum_moments(model, 6, Hypothesis::h1));
    const auto evt = sam::evt_params(f0, 300);
    const double hs = sam::sam_threshold(evt, Probability(0.01));
    CHECK(hs == Approx(5.53).epsilon(0.05 / 5.53));
    CHECK(sam::sam_pmd_bound(f1, 5.53).value() == Approx(8.75e-3).epsilon(0.05));
    CHECK(sam::sam_pmd_bound(f1, 10.308953).value() == Approx(3.71e-2).epsilon(0.05));
}

TEST_CASE("gaussian reduction: a = 0 coefficients collapse to the normal closed forms") {
    // Case-1 scale parameters expressed as a general change with equal
    // variances: the Edgeworth cdf must coincide with the mean-change normal
    // cdf, making the Pmd bounds equal at any threshold.
    const double mu0 = std::pow(10.0, 4.4);
    const double delta0 = mu0 * (std::pow(10.0, 0.3) - 1.0);
    const double sigma2 = (delta0 / 3.0) * (delta0 / 3.0);
    const double mu1 = std::pow(10.0, 3.7);
    ChangeModel general(GeneralChange{{mu0, sigma2}, {mu1, sigma2}, {mu1, sigma2}});
    ChangeModel mean(MeanChange{mu0, sigma2, mu1, mu1});

    const auto f1_sam = sam::edgeworth_from_moments(sam::llr_sum_moments(general, 6, Hypothesis::h1));
    const SumCdf f1_normal = llr_sum_stats(mean, 6, Hypothesis::h1);
    CHECK(std::fabs(f1_sam.c3) < 1e-7);
    CHECK(std::fabs(f1_sam.c4) < 1e-6);
    for (double h = -5.0; h <= 30.0; h += 0.7) {
        CHECK(f1_sam.cdf(h).value() ==
              Approx(f1_normal.cdf(h).value()).epsilon(1e-6).scale(1e-9));
    }

    // The H0 EVT location sits at the normal 1 - 1/m_alpha quantile.
    const auto f0_sam = sam::edgeworth_from_moments(sam::llr_sum_moments(general, 6, Hypothesis::h0));
    const auto evt = sam::evt_params(f0_sam, 60);
    const SumCdf f0_normal = llr_sum_stats(mean, 6, Hypothesis::h0);
    CHECK(evt.delta == Approx(f0_normal.quantile(1.0 - 1.0 / 60.0)).epsilon(1e-6));
}

TEST_CASE("quantile inversion round-trips through the clamped cdf") {
    const auto f0 = sam::edgeworth_from_moments(sam::llr_sum_moments(case3_model(), 6, Hypothesis::h0));
    for (double p : {0.01, 0.2, 0.5, 0.9, 0.9967, 0.9999}) {
        const double z = f0.quantile(p);
        CHECK(f0.cdf(z).value() == Approx(p).epsilon(1e-8));
    }
    CHECK_THROWS_AS(f0.quantile(0.0), std::domain_error);
}
