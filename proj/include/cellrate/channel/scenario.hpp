#pragma once

#include <array>
#include <cmath>

#include "cellrate/channel/pathloss.hpp"

namespace cellrate::channel {

inline constexpr int kNumInterferers = 6;

// Cartesian user position; the serving base station sits at the origin.
struct UserLocation {
    double u_m = 0.0;
    double v_m = 0.0;

    double distance() const { return std::hypot(u_m, v_m); }

    // Rotated about the origin by `angle_rad`.
    UserLocation rotated(double angle_rad) const {
        const double c = std::cos(angle_rad), s = std::sin(angle_rad);
        return {u_m * c - v_m * s, u_m * s + v_m * c};
    }
};

struct Interferer {
    PathlossParams pathloss;
    double x_m = 0.0;
    double y_m = 0.0;
};

// Full physical configuration of one cell plus its first interferer tier:
// six base stations on a ring of radius 2*cell_radius at multiples of pi/3.
struct CellScenario {
    double radius_m = 1000.0;
    int num_users = 1;
    PathlossParams serving;
    std::array<Interferer, kNumInterferers> interferers;
    double noise_power_w = 0.0;
    double user_min_distance_m = 1.0;

    // Symmetric first tier: every interferer copies the serving parameters.
    static CellScenario symmetric(double radius_m, int num_users, PathlossParams serving,
                                  double noise_power_w, double user_min_distance_m);

    // Serving mean SNR at 1 m, i.e. composite / noise (units m^alpha).
    double snr_composite() const { return serving.composite() / noise_power_w; }

    void validate() const;
};

// Radial density of a user placed uniformly over the cell area: 2d/radius^2
// on [0, radius], zero elsewhere.
double uniform_area_density(double distance_m, double radius_m);

// Distance from `loc` to interferer j (1-based) of the canonical ring layout.
double interferer_distance(const UserLocation& loc, int j, double radius_m);

}  // namespace cellrate::channel
