#include <cmath>

#include "reform/types.hpp"

namespace reform {

double normalize_angle(double theta)
{
    if (!std::isfinite(theta)) {
        throw ValidationError("normalize_angle: non-finite angle");
    }
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // A tiny negative remainder can round up to exactly 2π.
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

double wrap_to_pi(double theta)
{
    return std::remainder(theta, kTwoPi);
}

}  // namespace reform
