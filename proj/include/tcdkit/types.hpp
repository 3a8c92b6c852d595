#pragma once

#include <stdexcept>
#include <string>

namespace tcd {

/// A probability value, validated to lie in [0, 1].
class Probability {
public:
    Probability() = default;
    explicit Probability(double v) : v_(v) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::domain_error("probability outside [0,1]: " + std::to_string(v));
        }
    }
    double value() const noexcept { return v_; }
    operator double() const noexcept { return v_; }

private:
    double v_ = 0.0;
};

/// Degrees of freedom of a chi-squared distribution, k >= 1.
class DegreesOfFreedom {
public:
    explicit DegreesOfFreedom(int k) : k_(k) {
        if (k < 1) {
            throw std::domain_error("degrees of freedom must be >= 1, got " + std::to_string(k));
        }
    }
    int value() const noexcept { return k_; }
    operator int() const noexcept { return k_; }

private:
    int k_;
};

/// Which side of the change the samples are drawn from.
enum class Hypothesis { h0, h1 };

} // namespace tcd
