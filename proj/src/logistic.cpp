#include <cmath>
#include <stdexcept>

#include "reform/logistic.hpp"

namespace reform {

namespace {

// log(1 + e^z) without overflow.
double softplus(double z)
{
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

void check_sizes(std::span<const FeatureVec> x, std::span<const int> y)
{
    if (x.size() != y.size() || x.empty()) {
        throw std::invalid_argument("logistic: empty or mismatched samples");
    }
}

}  // namespace

double sigmoid(double z)
{
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double logistic_loss(const LogisticCoefficients& coef, std::span<const FeatureVec> x,
                     std::span<const int> y, double l2)
{
    check_sizes(x, y);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double z = coef[0] + coef[1] * x[i][0] + coef[2] * x[i][1];
        sum += softplus(z) - y[i] * z;
    }
    return sum / static_cast<double>(x.size()) +
           0.5 * l2 * (coef[1] * coef[1] + coef[2] * coef[2]);
}

LogisticCoefficients logistic_gradient(const LogisticCoefficients& coef,
                                       std::span<const FeatureVec> x, std::span<const int> y,
                                       double l2)
{
    check_sizes(x, y);
    LogisticCoefficients g{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double z = coef[0] + coef[1] * x[i][0] + coef[2] * x[i][1];
        const double err = sigmoid(z) - y[i];
        g[0] += err;
        g[1] += err * x[i][0];
        g[2] += err * x[i][1];
    }
    const double n = static_cast<double>(x.size());
    g[0] /= n;
    g[1] = g[1] / n + l2 * coef[1];
    g[2] = g[2] / n + l2 * coef[2];
    return g;
}

LogisticModel LogisticModel::fit(std::span<const FeatureVec> x, std::span<const int> y,
                                 const LogisticParams& params)
{
    LogisticCoefficients coef{0.0, 0.0, 0.0};
    for (int epoch = 0; epoch < params.max_epochs; ++epoch) {
        const auto g = logistic_gradient(coef, x, y, params.l2);
        const double norm = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
        if (norm < params.gradient_tolerance) {
            break;
        }
        for (int c = 0; c < 3; ++c) {
            coef[c] -= params.learning_rate * g[c];
        }
    }
    return LogisticModel(coef);
}

}  // namespace reform
