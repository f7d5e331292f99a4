#pragma once

namespace cellrate::numerics {

// exp(x) * E1(x) for x > 0, stable for arguments where exp(x) alone would
// overflow. This is the mean of log(1 + c*A) for unit-mean exponential A
// with x = 1/c.
double exp_e1(double x);

}  // namespace cellrate::numerics
