#pragma once

#include <functional>
#include <limits>

namespace cellrate::numerics {

// Central-difference derivative of F at x with Richardson extrapolation.
// `scale` sets the initial step. If x - h would cross `domain_lo` the step is
// shrunk; DegenerateStepError if x itself sits at or below the bound.
double differentiate(const std::function<double(double)>& F, double x, double scale,
                     double domain_lo = -std::numeric_limits<double>::infinity());

}  // namespace cellrate::numerics
