#pragma once

namespace cellrate::channel {

// Distance-based pathloss: received power = composite * distance^-exponent,
// composite = 10^(constant_db/10) * tx_power_w * reference_m^exponent.
struct PathlossParams {
    double exponent = 2.0;     // alpha
    double constant_db = 0.0;  // pathloss constant (dB)
    double reference_m = 1.0;  // model validity bound
    double tx_power_w = 1.0;

    double composite() const;  // watts * m^exponent
    void validate() const;
};

// Mean received power (watts) at distance `distance_m`, scaled by the fading
// mean. Throws BelowReferenceDistanceError for distances inside reference_m.
double mean_rx_power(const PathlossParams& params, double distance_m, double fading_mean);

}  // namespace cellrate::channel
