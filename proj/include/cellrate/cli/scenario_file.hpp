#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cellrate/channel/fading.hpp"
#include "cellrate/channel/scenario.hpp"

namespace cellrate::cli {

// Parsed scenario document: INI-style sections with a fixed schema.
// Unknown sections or keys are hard errors, and every physical invariant is
// checked at parse time.
struct ScenarioFile {
    channel::CellScenario scenario;
    std::string fading_model;  // currently "rayleigh"
    double fading_mean_power = 1.0;
    double rate_min = 0.0;
    double rate_max = 10.0;
    int rate_points = 501;
    uint64_t mc_seed = 1;
    int64_t mc_drops = 100000;

    std::unique_ptr<channel::FadingModel> make_fading() const;
    std::vector<double> rate_grid() const;
};

ScenarioFile parse_scenario_file(const std::string& path);
ScenarioFile parse_scenario_text(const std::string& text);

}  // namespace cellrate::cli
