#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cellrate/channel/fading.hpp"
#include "cellrate/channel/scenario.hpp"
#include "cellrate/multicell/scheduler_density.hpp"
#include "cellrate/numerics/quadrature.hpp"
#include "cellrate/scheduler.hpp"

namespace cellrate::multicell {

// How base-station transmit power follows the cell radius in a sweep.
struct PowerPolicy {
    enum class Mode { Fixed, EdgeScaled };

    Mode mode = Mode::Fixed;
    double reference_power_w = 1.0;
    double reference_radius_m = 1000.0;

    // EdgeScaled keeps the boundary pathloss constant: P(rho) ~ rho^alpha.
    double power_at(double radius_m, double alpha) const;
};

struct CellAverageOptions {
    bool interference_limited = false;
    int radial_points = 64;    // Gauss points in the scheduler-CDF coordinate
    int angular_points = 32;   // uniform midpoint rule around the circle
    bool convergence_check = true;  // recompute at double resolution
};

// Cell-average downlink rate (nats/s/Hz): per-location mean rate weighted by
// the scheduler's radial selection density and a uniform angle. Unit-mean
// Rayleigh fading only (the closed-form regime).
double cell_average_rate(const channel::CellScenario& scenario,
                         const channel::FadingModel& fading, const SchedulerDensity& sched,
                         double noise_w, const CellAverageOptions& opts = {});

// Same average with interference nullified (noise-only SINR).
double single_cell_average_rate(const channel::CellScenario& scenario,
                                const channel::FadingModel& fading,
                                const SchedulerDensity& sched);

struct CalibrationResult {
    double sigma_m = 0.0;  // +inf when the target is the uniform (round-robin) limit
    double achieved_rate = 0.0;
    double target_rate = 0.0;
    double achieved_coverage = 0.0;  // scheduler CDF at the diagnostic radius
    double coverage_radius_m = 0.0;
    double coverage_target = 0.0;
};

// Finds sigma such that the zero-interference average rate under the
// truncated-Gaussian density equals target_rate. The coverage pair is
// diagnostic only (one parameter cannot satisfy two equalities): the
// achieved scheduler CDF at that radius is reported next to the target.
CalibrationResult calibrate_sigma(double target_rate,
                                  std::pair<double, double> target_coverage,
                                  const channel::CellScenario& scenario,
                                  const channel::FadingModel& fading);

struct TradeoffRow {
    double radius_m = 0.0;
    std::string scheduler;
    int num_users = 0;
    double tx_power_w = 0.0;
    double sigma_m = 0.0;
    double multicell_avg_rate = 0.0;   // nats/s/Hz
    double singlecell_avg_rate = 0.0;  // nats/s/Hz, interference nullified
};

// Capacity-coverage sweep: for each radius the user count keeps the density
// of the template scenario (N ~ rho^2), power follows the policy, and
// greedy/proportional-fair schedulers are mapped to their equivalent sigma
// by recalibrating at that radius. Rows come out ordered (radius, scheduler).
std::vector<TradeoffRow> tradeoff_sweep(std::span<const double> radii_m,
                                        std::span<const SchedulerSpec> schedulers,
                                        const PowerPolicy& policy,
                                        const channel::CellScenario& scenario_template,
                                        const channel::FadingModel& fading,
                                        const CellAverageOptions& opts = {});

}  // namespace cellrate::multicell
