#include "cellrate/channel/scenario.hpp"

#include <cmath>
#include <numbers>

#include "cellrate/errors.hpp"

namespace cellrate::channel {

CellScenario CellScenario::symmetric(double radius_m, int num_users, PathlossParams serving,
                                     double noise_power_w, double user_min_distance_m) {
    CellScenario s;
    s.radius_m = radius_m;
    s.num_users = num_users;
    s.serving = serving;
    s.noise_power_w = noise_power_w;
    s.user_min_distance_m = user_min_distance_m;
    for (int j = 0; j < kNumInterferers; ++j) {
        const double ang = j * std::numbers::pi / 3.0;
        s.interferers[j] = {serving, 2.0 * radius_m * std::cos(ang),
                            2.0 * radius_m * std::sin(ang)};
    }
    s.validate();
    return s;
}

void CellScenario::validate() const {
    serving.validate();
    if (num_users < 1) throw ScenarioError("num_users must be >= 1");
    if (!(radius_m > user_min_distance_m))
        throw ScenarioError("cell radius must exceed the user minimum distance");
    if (!(noise_power_w > 0.0)) throw ScenarioError("noise power must be positive");
    if (!(user_min_distance_m > 0.0)) throw ScenarioError("user minimum distance must be positive");
    const double ring = 2.0 * radius_m;
    for (const Interferer& it : interferers) {
        it.pathloss.validate();
        const double d = std::hypot(it.x_m, it.y_m);
        if (std::abs(d - ring) > 1e-6 * ring)
            throw ScenarioError("interferers must sit on the ring of radius 2*cell radius");
    }
}

double uniform_area_density(double distance_m, double radius_m) {
    if (distance_m < 0.0 || distance_m > radius_m) return 0.0;
    return 2.0 * distance_m / (radius_m * radius_m);
}

double interferer_distance(const UserLocation& loc, int j, double radius_m) {
    if (j < 1 || j > kNumInterferers) throw Error("interferer_distance: j must be in 1..6");
    const double ang = (j - 1) * std::numbers::pi / 3.0;
    const double x = 2.0 * radius_m * std::cos(ang);
    const double y = 2.0 * radius_m * std::sin(ang);
    return std::hypot(loc.u_m - x, loc.v_m - y);
}

}  // namespace cellrate::channel
