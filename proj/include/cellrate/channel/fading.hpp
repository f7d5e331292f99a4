#pragma once

#include <memory>

#include "cellrate/montecarlo/philox.hpp"

namespace cellrate::channel {

// Nonnegative multiplicative power gain of a link. log_cdf is exposed
// separately because the greedy scheduler analysis sums logarithms of CDF
// values far too small to exponentiate.
class FadingModel {
  public:
    virtual ~FadingModel() = default;

    virtual double pdf(double a) const = 0;
    virtual double cdf(double a) const = 0;
    virtual double log_cdf(double a) const = 0;
    virtual double mean() const = 0;
    virtual double sample(mc::RngStream& rng) const = 0;
};

// Rayleigh envelope => exponentially distributed power gain.
class RayleighPowerFading final : public FadingModel {
  public:
    explicit RayleighPowerFading(double mean_power = 1.0);

    double pdf(double a) const override;
    double cdf(double a) const override;
    double log_cdf(double a) const override;
    double mean() const override { return mean_power_; }
    double sample(mc::RngStream& rng) const override;

    double mean_power() const { return mean_power_; }

  private:
    double mean_power_;
};

// True when the model is unit-mean Rayleigh power fading, the case with
// closed forms throughout the library.
bool is_unit_rayleigh(const FadingModel& fading);

}  // namespace cellrate::channel
