#include "cellrate/channel/fading.hpp"

#include <cmath>

#include "cellrate/errors.hpp"

namespace cellrate::channel {

RayleighPowerFading::RayleighPowerFading(double mean_power) : mean_power_(mean_power) {
    if (!(mean_power > 0.0)) throw Error("RayleighPowerFading: mean power must be positive");
}

double RayleighPowerFading::pdf(double a) const {
    if (a < 0.0) return 0.0;
    return std::exp(-a / mean_power_) / mean_power_;
}

double RayleighPowerFading::cdf(double a) const {
    if (a <= 0.0) return 0.0;
    return -std::expm1(-a / mean_power_);
}

double RayleighPowerFading::log_cdf(double a) const {
    if (a <= 0.0) return -std::numeric_limits<double>::infinity();
    // log(1 - e^{-x}) without cancellation for small x.
    return std::log(-std::expm1(-a / mean_power_));
}

double RayleighPowerFading::sample(mc::RngStream& rng) const {
    return mean_power_ * rng.next_exponential();
}

bool is_unit_rayleigh(const FadingModel& fading) {
    const auto* r = dynamic_cast<const RayleighPowerFading*>(&fading);
    return r != nullptr && r->mean_power() == 1.0;
}

}  // namespace cellrate::channel
