#include "cellrate/channel/pathloss.hpp"

#include <cmath>

#include "cellrate/errors.hpp"

namespace cellrate::channel {

double PathlossParams::composite() const {
    return std::pow(10.0, constant_db / 10.0) * tx_power_w * std::pow(reference_m, exponent);
}

void PathlossParams::validate() const {
    if (!(exponent > 0.0)) throw ScenarioError("pathloss exponent must be positive");
    if (!(reference_m > 0.0)) throw ScenarioError("pathloss reference distance must be positive");
    if (!(tx_power_w > 0.0)) throw ScenarioError("transmit power must be positive");
}

double mean_rx_power(const PathlossParams& params, double distance_m, double fading_mean) {
    if (distance_m < params.reference_m)
        throw BelowReferenceDistanceError("mean_rx_power: distance below pathloss reference");
    return params.composite() * std::pow(distance_m, -params.exponent) * fading_mean;
}

}  // namespace cellrate::channel
