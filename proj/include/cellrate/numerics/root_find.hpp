#pragma once

#include <functional>

namespace cellrate::numerics {

// Brent-style bracketing root finder. Requires g(lo)*g(hi) < 0 (else
// NoSignChangeError). Returns x with |g(x)| <= tol or bracket width <= tol.
double find_root(const std::function<double(double)>& g, double lo, double hi, double tol);

}  // namespace cellrate::numerics
