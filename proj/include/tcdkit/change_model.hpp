#pragma once

#include "tcdkit/types.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tcd {

/// Mean/variance pair of a Gaussian metric distribution.
struct GaussianSpec {
    double mu = 0.0;
    double sigma2 = 1.0;
};

/// Quadratic log-likelihood ratio: llr(x) = a x^2 + b x + c.
struct LlrCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double eval(double x) const noexcept { return (a * x + b) * x + c; }
};

/// Gaussian mean change with shared variance. The tuned parameter feeds the
/// LLR and thresholds; the actual parameter feeds missed-detection evaluation.
struct MeanChange {
    double mu0;
    double sigma2;
    double mu1_tuned;
    double mu1_actual;
};

/// Gaussian variance change with zero mean under both hypotheses.
struct VarianceChange {
    double sigma2_0;
    double sigma2_1_tuned;
    double sigma2_1_actual;
};

/// General Gaussian change (mean and variance).
struct GeneralChange {
    GaussianSpec pre;
    GaussianSpec tuned;
    GaussianSpec actual;
};

/// A validated change specification for one integrity metric.
///
/// Invariants enforced on construction: all variances > 0 and the tuned
/// post-change distribution differs from the pre-change one.
class ChangeModel {
public:
    explicit ChangeModel(MeanChange mc);
    explicit ChangeModel(VarianceChange vc);
    explicit ChangeModel(GeneralChange gc);

    bool is_mean_change() const noexcept { return std::holds_alternative<MeanChange>(v_); }
    bool is_variance_change() const noexcept { return std::holds_alternative<VarianceChange>(v_); }
    bool is_general_change() const noexcept { return std::holds_alternative<GeneralChange>(v_); }

    const MeanChange& mean_change() const { return std::get<MeanChange>(v_); }
    const VarianceChange& variance_change() const { return std::get<VarianceChange>(v_); }
    const GeneralChange& general_change() const { return std::get<GeneralChange>(v_); }

    /// Pre-change metric distribution.
    GaussianSpec pre() const;
    /// Tuned post-change distribution (drives LLR coefficients and thresholds).
    GaussianSpec tuned() const;
    /// Actual post-change distribution (drives H1 evaluation).
    GaussianSpec actual() const;

private:
    std::variant<MeanChange, VarianceChange, GeneralChange> v_;
};

/// LLR coefficients of the model, always built from the tuned parameters.
LlrCoeffs llr_coeffs(const ChangeModel& model);

/// ln(f1(x)/f0(x)) with f1 the tuned post-change density.
double llr(const ChangeModel& model, double x);

/// Monotone map from positioning error to a change parameter, linearly
/// interpolated and clamped at the table ends.
class PiecewiseLinearTable {
public:
    /// Points must be nonempty with strictly increasing keys.
    explicit PiecewiseLinearTable(std::vector<std::pair<double, double>> points);

    double operator()(double epsilon) const;

    const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }

private:
    std::vector<std::pair<double, double>> points_;
};

/// Tuned change parameter for the minimum detectable positioning error.
double tuned_from_error(const PiecewiseLinearTable& q_table, double epsilon);

} // namespace tcd
