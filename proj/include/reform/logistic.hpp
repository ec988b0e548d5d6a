#ifndef REFORM_LOGISTIC_HPP
#define REFORM_LOGISTIC_HPP

#include <array>
#include <span>

#include "reform/knn.hpp"

namespace reform {

struct LogisticParams {
    double l2 = 1e-4;
    double learning_rate = 0.1;
    int max_epochs = 2000;
    double gradient_tolerance = 1e-8;
};

/// Coefficients ordered as {bias, weight_0, weight_1}.
using LogisticCoefficients = std::array<double, 3>;

double sigmoid(double z);

/**
 * Mean log-loss plus (l2 / 2)·(w₀² + w₁²). The bias is not penalized.
 */
double logistic_loss(const LogisticCoefficients& coef, std::span<const FeatureVec> x,
                     std::span<const int> y, double l2);

/// Analytic gradient of logistic_loss with respect to the coefficients.
LogisticCoefficients logistic_gradient(const LogisticCoefficients& coef,
                                       std::span<const FeatureVec> x, std::span<const int> y,
                                       double l2);

class LogisticModel {
public:
    LogisticModel() = default;
    explicit LogisticModel(const LogisticCoefficients& coef) : coef_(coef) {}

    /// Full-batch gradient descent from zero coefficients. Stops after
    /// max_epochs or once the gradient norm drops below the tolerance.
    static LogisticModel fit(std::span<const FeatureVec> x, std::span<const int> y,
                             const LogisticParams& params);

    double score(const FeatureVec& x) const
    {
        return sigmoid(coef_[0] + coef_[1] * x[0] + coef_[2] * x[1]);
    }

    const LogisticCoefficients& coefficients() const { return coef_; }

private:
    LogisticCoefficients coef_{0.0, 0.0, 0.0};
};

}  // namespace reform

#endif  // REFORM_LOGISTIC_HPP
