#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tcdkit/change_model.hpp"
#include "tcdkit/montecarlo.hpp"

#include <cmath>

using namespace tcd;
using doctest::Approx;

namespace {

double log_density(double x, const GaussianSpec& g) {
    return -0.5 * std::log(2.0 * M_PI * g.sigma2) - (x - g.mu) * (x - g.mu) / (2.0 * g.sigma2);
}

} // namespace

TEST_CASE("mean-change LLR coefficients") {
    ChangeModel m(MeanChange{0.0, 1.0, 1.0, 1.0});
    const auto co = llr_coeffs(m);
    CHECK(co.a == 0.0);
    CHECK(co.b == Approx(1.0));
    CHECK(co.c == Approx(-0.5));
    CHECK(llr(m, 0.5) == Approx(0.0).scale(1.0));
}

TEST_CASE("variance-change LLR coefficients reproduce the DLL case") {
    ChangeModel m(VarianceChange{1.11e-5, 2.78e-4, 2.78e-4});
    const auto co = llr_coeffs(m);
    CHECK(co.a == Approx(4.325e4).epsilon(1e-3));
    CHECK(co.b == 0.0);
    CHECK(co.c == Approx(-1.611).epsilon(1e-3));

    ChangeModel unit(VarianceChange{1.0, 2.0, 2.0});
    CHECK(llr(unit, 0.0) == Approx(-0.3466).epsilon(1e-3)); // ln(1/sqrt(2))
}

TEST_CASE("general change degenerates to the simpler models") {
    // Equal variances: reduces to the mean-change coefficients.
    ChangeModel general(GeneralChange{{0.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
    ChangeModel mean(MeanChange{0.0, 1.0, 1.0, 1.0});
    const auto cg = llr_coeffs(general);
    const auto cm = llr_coeffs(mean);
    CHECK(cg.a == Approx(0.0).scale(1.0));
    CHECK(cg.b == Approx(cm.b).epsilon(1e-12));
    CHECK(cg.c == Approx(cm.c).epsilon(1e-12));

    // Equal means (zero): pointwise equal to the variance-change llr.
    ChangeModel general_v(GeneralChange{{0.0, 1.3}, {0.0, 2.9}, {0.0, 2.9}});
    ChangeModel var(VarianceChange{1.3, 2.9, 2.9});
    for (double x = -4.0; x <= 4.0; x += 0.173) {
        CHECK(llr(general_v, x) == Approx(llr(var, x)).epsilon(1e-12).scale(1e-12));
    }
}

TEST_CASE("llr equals the log density ratio of the tuned pair") {
    const ChangeModel models[] = {
        ChangeModel(MeanChange{3.1, 0.7, 4.4, 5.0}),
        ChangeModel(VarianceChange{0.8, 2.5, 3.0}),
        ChangeModel(GeneralChange{{0.1, 1.14e-3}, {0.2, 2.03e-3}, {0.2, 2.03e-3}}),
    };
    mc::Rng rng(42, 0);
    for (const auto& m : models) {
        for (int i = 0; i < 100; ++i) {
            const double x = rng.gaussian(0.0, 2.0);
            const double expected = log_density(x, m.tuned()) - log_density(x, m.pre());
            CHECK(llr(m, x) == Approx(expected).epsilon(1e-10).scale(1e-10));
        }
    }
}

TEST_CASE("signed LLR drift under each hypothesis") {
    // E_H0[llr] < 0 and E_H1,tuned[llr] > 0 whenever f1 != f0.
    const ChangeModel models[] = {
        ChangeModel(MeanChange{0.0, 1.0, 1.0, 1.0}),
        ChangeModel(VarianceChange{1.11e-5, 2.78e-4, 2.78e-4}),
        ChangeModel(GeneralChange{{0.1, 1.14e-3}, {0.2, 2.03e-3}, {0.2, 2.03e-3}}),
    };
    int salt = 0;
    for (const auto& m : models) {
        const GaussianSpec f0 = m.pre();
        const GaussianSpec f1 = m.tuned();
        double sum0 = 0.0;
        double sum1 = 0.0;
        const int n = 100000;
        mc::Rng rng(7, static_cast<std::uint64_t>(salt++));
        for (int i = 0; i < n; ++i) {
            sum0 += llr(m, rng.gaussian(f0.mu, std::sqrt(f0.sigma2)));
            sum1 += llr(m, rng.gaussian(f1.mu, std::sqrt(f1.sigma2)));
        }
        CHECK(sum0 / n < 0.0);
        CHECK(sum1 / n > 0.0);
    }
}

TEST_CASE("mean-change llr is affine and increasing when mu1 > mu0") {
    ChangeModel m(MeanChange{1.0, 2.0, 3.5, 3.5});
    const auto co = llr_coeffs(m);
    CHECK(co.a == 0.0);
    CHECK(co.b > 0.0);
    double prev = llr(m, -10.0);
    for (double x = -9.5; x <= 10.0; x += 0.5) {
        const double cur = llr(m, x);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("model invariants are enforced") {
    CHECK_THROWS_AS(ChangeModel(MeanChange{1.0, 0.0, 2.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(ChangeModel(MeanChange{1.0, 1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ChangeModel(VarianceChange{1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ChangeModel(VarianceChange{-1.0, 2.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(ChangeModel(GeneralChange{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("tuned_from_error interpolates and clamps") {
    PiecewiseLinearTable single({{14.65, 2.78e-4}});
    CHECK(tuned_from_error(single, 14.65) == Approx(2.78e-4));
    CHECK(tuned_from_error(single, 1.0) == Approx(2.78e-4));
    CHECK(tuned_from_error(single, 99.0) == Approx(2.78e-4));

    PiecewiseLinearTable two({{1.0, 1.0}, {3.0, 3.0}});
    CHECK(tuned_from_error(two, 2.0) == Approx(2.0));
    CHECK(tuned_from_error(two, 0.0) == Approx(1.0));
    CHECK(tuned_from_error(two, 5.0) == Approx(3.0));

    CHECK_THROWS_AS(PiecewiseLinearTable({}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearTable({{2.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
}
