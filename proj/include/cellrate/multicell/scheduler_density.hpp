#pragma once

namespace cellrate::multicell {

// Radial density of the served user's distance: a truncated Gaussian in the
// radial coordinate (Rayleigh-shaped) on [d0, rho] whose spread sigma
// interpolates between center-greedy and uniform selection. sigma = +inf is
// the uniform-over-area (round-robin) sentinel.
struct SchedulerDensity {
    double sigma_m = 0.0;
    double rho_m = 0.0;
    double d0_m = 0.0;
    double beta = 0.0;  // normalizer e^{-d0^2/2s^2} - e^{-rho^2/2s^2} (finite sigma)

    static SchedulerDensity truncated_gaussian(double sigma_m, double rho_m, double d0_m);
    static SchedulerDensity uniform(double rho_m, double d0_m);

    bool is_uniform() const;

    double pdf(double distance_m) const;       // 0 outside [d0, rho]
    double cdf(double distance_m) const;       // clamped to [0, 1]
    double inverse_cdf(double q) const;        // q in [0, 1]
};

}  // namespace cellrate::multicell
