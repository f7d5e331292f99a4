#include "cellrate/numerics/special.hpp"

#include <cmath>

#include "cellrate/errors.hpp"

namespace cellrate::numerics {

double exp_e1(double x) {
    if (!(x > 0.0)) throw Error("exp_e1: requires x > 0");
    if (x < 50.0) {
        // E1(x) = -Ei(-x); libstdc++'s expint collapses to the zeroth-order
        // asymptote somewhere above x ~ 80, hence the early switch.
        return -std::exp(x) * std::expint(-x);
    }
    // Asymptotic series 1/x * sum (-1)^k k!/x^k truncated at its smallest
    // term; error ~ e^{-x}, negligible from 50 up.
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * -static_cast<double>(k) / x;
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
    }
    return sum / x;
}

}  // namespace cellrate::numerics
