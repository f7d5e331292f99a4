#include "cellrate/multicell/scheduler_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cellrate/errors.hpp"

namespace cellrate::multicell {

SchedulerDensity SchedulerDensity::truncated_gaussian(double sigma_m, double rho_m,
                                                      double d0_m) {
    if (std::isinf(sigma_m)) return uniform(rho_m, d0_m);
    if (!(sigma_m > 0.0)) throw Error("SchedulerDensity: sigma must be positive");
    if (!(d0_m > 0.0 && rho_m > d0_m)) throw Error("SchedulerDensity: need 0 < d0 < rho");
    SchedulerDensity s{sigma_m, rho_m, d0_m, 0.0};
    const double a = d0_m * d0_m / (2.0 * sigma_m * sigma_m);
    const double b = rho_m * rho_m / (2.0 * sigma_m * sigma_m);
    // e^{-a} - e^{-b}, stable when both exponents are tiny (large sigma)
    s.beta = -std::exp(-a) * std::expm1(a - b);
    if (!(s.beta > 0.0)) throw Error("SchedulerDensity: degenerate normalizer");
    return s;
}

SchedulerDensity SchedulerDensity::uniform(double rho_m, double d0_m) {
    if (!(d0_m > 0.0 && rho_m > d0_m)) throw Error("SchedulerDensity: need 0 < d0 < rho");
    return {std::numeric_limits<double>::infinity(), rho_m, d0_m, 0.0};
}

bool SchedulerDensity::is_uniform() const { return std::isinf(sigma_m); }

double SchedulerDensity::pdf(double d) const {
    if (d < d0_m || d > rho_m) return 0.0;
    if (is_uniform()) return 2.0 * d / (rho_m * rho_m - d0_m * d0_m);
    const double s2 = sigma_m * sigma_m;
    return (d / s2) * std::exp(-d * d / (2.0 * s2)) / beta;
}

double SchedulerDensity::cdf(double d) const {
    if (d <= d0_m) return 0.0;
    if (d >= rho_m) return 1.0;
    if (is_uniform()) return (d * d - d0_m * d0_m) / (rho_m * rho_m - d0_m * d0_m);
    const double s2 = 2.0 * sigma_m * sigma_m;
    const double a = d0_m * d0_m / s2;
    const double x = d * d / s2;
    const double b = rho_m * rho_m / s2;
    return std::clamp(std::expm1(a - x) / std::expm1(a - b), 0.0, 1.0);
}

double SchedulerDensity::inverse_cdf(double q) const {
    q = std::clamp(q, 0.0, 1.0);
    if (is_uniform())
        return std::sqrt(d0_m * d0_m + q * (rho_m * rho_m - d0_m * d0_m));
    const double s2 = 2.0 * sigma_m * sigma_m;
    const double a = d0_m * d0_m / s2;
    const double b = rho_m * rho_m / s2;
    // solve e^{-x} = e^{-a}(1 + q expm1(a-b))  =>  x = a - log1p(q expm1(a-b))
    const double x = a - std::log1p(q * std::expm1(a - b));
    return std::min(std::sqrt(s2 * x), rho_m);
}

}  // namespace cellrate::multicell
