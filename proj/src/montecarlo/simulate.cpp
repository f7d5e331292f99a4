#include "cellrate/montecarlo/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "cellrate/errors.hpp"

namespace cellrate::mc {

void SimConfig::validate() const {
    scenario.validate();
    if (num_drops < 1) throw Error("SimConfig: num_drops must be >= 1");
    if (fading == nullptr) throw Error("SimConfig: fading model missing");
}

int worker_threads() {
    if (const char* env = std::getenv("CELLRATE_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<int>(std::min<long>(n, 256));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Runs body(drop) over [0, n) on contiguous chunks. Each drop writes only to
// its own output slots, so the result is independent of the thread count.
template <typename Body>
void parallel_drops(int64_t n, const Body& body) {
    const int threads = std::min<int64_t>(worker_threads(), n);
    if (threads <= 1) {
        for (int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int64_t lo = t * chunk;
        const int64_t hi = std::min<int64_t>(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int64_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

// Squared distance of a user placed uniformly over the annulus [d_min, rho].
double sample_distance_sq(RngStream& rng, double dmin2, double span) {
    return dmin2 + rng.next_double() * span;
}

}  // namespace

SingleCellSamples simulate_single_cell(const SimConfig& cfg) {
    cfg.validate();
    if (cfg.scheduler.kind == SchedulerSpec::Kind::TruncatedGaussian)
        throw Error("simulate_single_cell: truncated-Gaussian selection is a multi-cell density model");

    const double rho = cfg.scenario.radius_m;
    const double dmin2 = cfg.scenario.user_min_distance_m * cfg.scenario.user_min_distance_m;
    const double span = rho * rho - dmin2;
    const double xi_snr = cfg.scenario.snr_composite();
    const double alpha = cfg.scenario.serving.exponent;
    const bool inv_square = alpha == 2.0;
    const int n_users = cfg.scenario.num_users;
    const auto& fading = *cfg.fading;
    const auto kind = cfg.scheduler.kind;

    SingleCellSamples out;
    out.rate_nats.resize(cfg.num_drops);
    out.served_distance_m.resize(cfg.num_drops);

    parallel_drops(cfg.num_drops, [&](int64_t drop) {
        RngStream rng(cfg.seed, static_cast<uint64_t>(drop), 0);
        int pick = 0;
        if (kind == SchedulerSpec::Kind::RoundRobin)
            pick = std::min<int>(n_users - 1,
                                 static_cast<int>(rng.next_double() * n_users));
        double best_key = -1.0, sel_snr = 0.0, sel_d2 = dmin2;
        for (int i = 0; i < n_users; ++i) {
            const double d2 = sample_distance_sq(rng, dmin2, span);
            const double a = fading.sample(rng);
            const double gain = inv_square ? 1.0 / d2 : std::pow(d2, -0.5 * alpha);
            const double snr = xi_snr * gain * a;
            double key = 0.0;
            switch (kind) {
                case SchedulerSpec::Kind::RoundRobin:
                    key = (i == pick) ? 1.0 : -2.0;
                    break;
                case SchedulerSpec::Kind::Greedy:
                    key = snr;
                    break;
                case SchedulerSpec::Kind::ProportionalFair:
                    key = a / fading.mean();
                    break;
                default:
                    break;
            }
            if (key > best_key) {
                best_key = key;
                sel_snr = snr;
                sel_d2 = d2;
            }
        }
        out.rate_nats[drop] = std::log1p(sel_snr);
        out.served_distance_m[drop] = std::sqrt(sel_d2);
    });
    return out;
}

namespace {

MultiCellSamples run_multi_cell(const SimConfig& cfg,
                                const channel::UserLocation* fixed_loc,
                                const multicell::SchedulerDensity* density) {
    cfg.validate();
    const double noise = cfg.scenario.noise_power_w;
    const double alpha_s = cfg.scenario.serving.exponent;
    const double comp_s = cfg.scenario.serving.composite();
    const auto& fading = *cfg.fading;

    // Fixed location: interference means precomputed once.
    double fixed_signal = 0.0;
    std::array<double, channel::kNumInterferers> fixed_means{};
    if (fixed_loc) {
        fixed_signal = comp_s * std::pow(fixed_loc->distance(), -alpha_s);
        for (int j = 0; j < channel::kNumInterferers; ++j) {
            const auto& it = cfg.scenario.interferers[j];
            const double dj = std::hypot(fixed_loc->u_m - it.x_m, fixed_loc->v_m - it.y_m);
            fixed_means[j] = it.pathloss.composite() * std::pow(dj, -it.pathloss.exponent);
        }
    }

    MultiCellSamples out;
    out.sinr.resize(cfg.num_drops);
    out.interference_w.resize(cfg.num_drops);
    out.rate_nats.resize(cfg.num_drops);

    parallel_drops(cfg.num_drops, [&](int64_t drop) {
        RngStream rng(cfg.seed, static_cast<uint64_t>(drop), 1);
        double signal_mean = fixed_signal;
        std::array<double, channel::kNumInterferers> means = fixed_means;
        if (density) {
            const double d = density->inverse_cdf(rng.next_double());
            const double th = rng.next_double() * 2.0 * std::numbers::pi;
            const channel::UserLocation loc{d * std::cos(th), d * std::sin(th)};
            signal_mean = comp_s * std::pow(d, -alpha_s);
            for (int j = 0; j < channel::kNumInterferers; ++j) {
                const auto& it = cfg.scenario.interferers[j];
                const double dj = std::hypot(loc.u_m - it.x_m, loc.v_m - it.y_m);
                means[j] = it.pathloss.composite() * std::pow(dj, -it.pathloss.exponent);
            }
        }
        const double a = fading.sample(rng);
        double itotal = 0.0;
        for (int j = 0; j < channel::kNumInterferers; ++j)
            itotal += means[j] * fading.sample(rng);
        const double sinr = signal_mean * a / (noise + itotal);
        out.sinr[drop] = sinr;
        out.interference_w[drop] = itotal;
        out.rate_nats[drop] = std::log1p(sinr);
    });
    return out;
}

}  // namespace

MultiCellSamples simulate_multi_cell(const SimConfig& cfg, const channel::UserLocation& loc) {
    const double d = loc.distance();
    if (d < cfg.scenario.user_min_distance_m || d > cfg.scenario.radius_m)
        throw Error("simulate_multi_cell: location outside [d0, rho]");
    return run_multi_cell(cfg, &loc, nullptr);
}

MultiCellSamples simulate_multi_cell(const SimConfig& cfg,
                                     const multicell::SchedulerDensity& density) {
    return run_multi_cell(cfg, nullptr, &density);
}

}  // namespace cellrate::mc
