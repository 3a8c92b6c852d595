#include "tcdkit/change_model.hpp"

#include <cmath>
#include <stdexcept>

namespace tcd {

namespace {

void require_positive_variance(double sigma2, const char* what) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
        throw std::invalid_argument(std::string(what) + " must be a finite positive variance");
    }
}

} // namespace

ChangeModel::ChangeModel(MeanChange mc) : v_(mc) {
    require_positive_variance(mc.sigma2, "MeanChange.sigma2");
    if (mc.mu1_tuned == mc.mu0) {
        throw std::invalid_argument("MeanChange: tuned mean equals pre-change mean (f1 == f0)");
    }
}

ChangeModel::ChangeModel(VarianceChange vc) : v_(vc) {
    require_positive_variance(vc.sigma2_0, "VarianceChange.sigma2_0");
    require_positive_variance(vc.sigma2_1_tuned, "VarianceChange.sigma2_1_tuned");
    require_positive_variance(vc.sigma2_1_actual, "VarianceChange.sigma2_1_actual");
    if (vc.sigma2_1_tuned == vc.sigma2_0) {
        throw std::invalid_argument("VarianceChange: tuned variance equals pre-change variance (f1 == f0)");
    }
}

ChangeModel::ChangeModel(GeneralChange gc) : v_(gc) {
    require_positive_variance(gc.pre.sigma2, "GeneralChange.pre.sigma2");
    require_positive_variance(gc.tuned.sigma2, "GeneralChange.tuned.sigma2");
    require_positive_variance(gc.actual.sigma2, "GeneralChange.actual.sigma2");
    if (gc.tuned.mu == gc.pre.mu && gc.tuned.sigma2 == gc.pre.sigma2) {
        throw std::invalid_argument("GeneralChange: tuned distribution equals pre-change one (f1 == f0)");
    }
}

GaussianSpec ChangeModel::pre() const {
    if (is_mean_change()) {
        const auto& m = mean_change();
        return {m.mu0, m.sigma2};
    }
    if (is_variance_change()) {
        return {0.0, variance_change().sigma2_0};
    }
    return general_change().pre;
}

GaussianSpec ChangeModel::tuned() const {
    if (is_mean_change()) {
        const auto& m = mean_change();
        return {m.mu1_tuned, m.sigma2};
    }
    if (is_variance_change()) {
        return {0.0, variance_change().sigma2_1_tuned};
    }
    return general_change().tuned;
}

GaussianSpec ChangeModel::actual() const {
    if (is_mean_change()) {
        const auto& m = mean_change();
        return {m.mu1_actual, m.sigma2};
    }
    if (is_variance_change()) {
        return {0.0, variance_change().sigma2_1_actual};
    }
    return general_change().actual;
}

LlrCoeffs llr_coeffs(const ChangeModel& model) {
    if (model.is_mean_change()) {
        const auto& m = model.mean_change();
        const double b = (m.mu1_tuned - m.mu0) / m.sigma2;
        const double c = -(m.mu1_tuned * m.mu1_tuned - m.mu0 * m.mu0) / (2.0 * m.sigma2);
        return {0.0, b, c};
    }
    if (model.is_variance_change()) {
        const auto& v = model.variance_change();
        const double a = (v.sigma2_1_tuned - v.sigma2_0) / (2.0 * v.sigma2_0 * v.sigma2_1_tuned);
        const double c = 0.5 * std::log(v.sigma2_0 / v.sigma2_1_tuned);
        return {a, 0.0, c};
    }
    const auto& g = model.general_change();
    const double s0 = g.pre.sigma2;
    const double s1 = g.tuned.sigma2;
    const double m0 = g.pre.mu;
    const double m1 = g.tuned.mu;
    const double a = (s1 - s0) / (2.0 * s0 * s1);
    const double b = (s0 * m1 - s1 * m0) / (s0 * s1);
    const double c = 0.5 * std::log(s0 / s1) + (s1 * m0 * m0 - s0 * m1 * m1) / (2.0 * s0 * s1);
    return {a, b, c};
}

double llr(const ChangeModel& model, double x) { return llr_coeffs(model).eval(x); }

PiecewiseLinearTable::PiecewiseLinearTable(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
    if (points_.empty()) {
        throw std::invalid_argument("q-table must be nonempty");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i - 1].first < points_[i].first)) {
            throw std::invalid_argument("q-table keys must be strictly increasing");
        }
    }
}

double PiecewiseLinearTable::operator()(double epsilon) const {
    if (epsilon <= points_.front().first) return points_.front().second;
    if (epsilon >= points_.back().first) return points_.back().second;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (epsilon <= points_[i].first) {
            const auto& [x0, y0] = points_[i - 1];
            const auto& [x1, y1] = points_[i];
            const double t = (epsilon - x0) / (x1 - x0);
            return y0 + t * (y1 - y0);
        }
    }
    return points_.back().second; // unreachable
}

double tuned_from_error(const PiecewiseLinearTable& q_table, double epsilon) {
    return q_table(epsilon);
}

} // namespace tcd
