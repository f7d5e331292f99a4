#pragma once

#include <cstdint>
#include <vector>

#include "cellrate/channel/fading.hpp"
#include "cellrate/channel/scenario.hpp"
#include "cellrate/multicell/scheduler_density.hpp"
#include "cellrate/scheduler.hpp"

namespace cellrate::mc {

// Drop-by-drop simulation inputs. The same config always produces
// bit-identical sample streams: every drop draws from its own counter-based
// substream, so results do not depend on the number of worker threads.
struct SimConfig {
    uint64_t seed = 1;
    int64_t num_drops = 1;
    channel::CellScenario scenario;
    const channel::FadingModel* fading = nullptr;
    SchedulerSpec scheduler;

    void validate() const;
};

struct SingleCellSamples {
    std::vector<double> rate_nats;          // one per drop
    std::vector<double> served_distance_m;  // one per drop
};

// Per drop: place N users uniformly over the cell area, draw iid fading,
// apply the scheduler's literal selection rule (round-robin: uniform pick;
// greedy: max SNR; proportional fair: max normalized fading), and record the
// served user's Shannon rate (nats) and distance.
SingleCellSamples simulate_single_cell(const SimConfig& cfg);

struct MultiCellSamples {
    std::vector<double> sinr;
    std::vector<double> interference_w;
    std::vector<double> rate_nats;
};

// Per drop at a fixed location: draw 7 independent fading values (serving +
// six interferers), total the interference, and record SINR and rate.
MultiCellSamples simulate_multi_cell(const SimConfig& cfg, const channel::UserLocation& loc);

// Density-driven variant: each drop first draws the served distance from the
// scheduler density and an independent uniform angle.
MultiCellSamples simulate_multi_cell(const SimConfig& cfg,
                                     const multicell::SchedulerDensity& density);

// Worker count for drop-parallel loops: CELLRATE_THREADS when set, else the
// hardware concurrency.
int worker_threads();

}  // namespace cellrate::mc
