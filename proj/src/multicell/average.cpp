#include "cellrate/multicell/average.hpp"

#include <cmath>
#include <numbers>

#include "cellrate/errors.hpp"
#include "cellrate/multicell/interference.hpp"
#include "cellrate/multicell/rate.hpp"
#include "cellrate/numerics/root_find.hpp"
#include "cellrate/numerics/special.hpp"
#include "cellrate/singlecell/analysis.hpp"

namespace cellrate::multicell {

double PowerPolicy::power_at(double radius_m, double alpha) const {
    if (mode == Mode::Fixed) return reference_power_w;
    return reference_power_w * std::pow(radius_m / reference_radius_m, alpha);
}

namespace {

// Gauss-Legendre nodes/weights on (0, 1) by Newton iteration on P_n.
std::vector<std::pair<double, double>> gauss_legendre_01(int n) {
    std::vector<std::pair<double, double>> nw(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nw[i] = {0.5 * (1.0 - x), 0.5 * w};          // descending x -> ascending node
        nw[n - 1 - i] = {0.5 * (1.0 + x), 0.5 * w};
    }
    return nw;
}

void check_density_matches(const channel::CellScenario& scenario,
                           const SchedulerDensity& sched) {
    if (std::abs(sched.rho_m - scenario.radius_m) > 1e-9 * scenario.radius_m ||
        std::abs(sched.d0_m - scenario.user_min_distance_m) >
            1e-9 * scenario.user_min_distance_m)
        throw Error("scheduler density domain does not match the scenario geometry");
}

// Radial Gauss rule in u = log(delta): scheduler spikes keep unit width in u
// for every sigma, and the logarithmic rate growth toward the center becomes
// linear, so a fixed 64-point rule converges where raw-radius or CDF
// coordinates stall. The angle uses the midpoint rule, spectrally accurate
// for the periodic integrand.
double cell_average_once(const channel::CellScenario& scenario, const SchedulerDensity& sched,
                         double noise_w, const CellAverageOptions& opts, int nq, int nth) {
    const double ulo = std::log(sched.d0_m);
    const double uhi = std::log(sched.rho_m);
    const auto nodes = gauss_legendre_01(nq);
    double total = 0.0;
    for (const auto& [q, w] : nodes) {
        const double u = ulo + q * (uhi - ulo);
        const double d = std::exp(u);
        const double weight = w * (uhi - ulo) * sched.pdf(d) * d;
        if (weight == 0.0) continue;
        double row = 0.0;
        for (int k = 0; k < nth; ++k) {
            const double th = (k + 0.5) * 2.0 * std::numbers::pi / nth;
            const channel::UserLocation loc{d * std::cos(th), d * std::sin(th)};
            const InterferenceProfile p = make_interference_profile(scenario, loc);
            // always the survival form: near the center the six interference
            // means nearly coincide and the partial-fraction closed form
            // loses every digit to cancellation
            row += mean_rate_at_survival(p, opts.interference_limited ? 0.0 : noise_w);
        }
        total += weight * row / nth;
    }
    return total;
}

}  // namespace

double cell_average_rate(const channel::CellScenario& scenario,
                         const channel::FadingModel& fading, const SchedulerDensity& sched,
                         double noise_w, const CellAverageOptions& opts) {
    if (!channel::is_unit_rayleigh(fading))
        throw Error("cell_average_rate: closed-form sweep machinery requires unit Rayleigh fading");
    check_density_matches(scenario, sched);
    const double v1 = cell_average_once(scenario, sched, noise_w, opts, opts.radial_points,
                                        opts.angular_points);
    if (!opts.convergence_check) return v1;
    const double v2 = cell_average_once(scenario, sched, noise_w, opts, 2 * opts.radial_points,
                                        2 * opts.angular_points);
    if (std::abs(v2 - v1) > std::max(1e-9, 1e-6 * std::abs(v2)))
        throw NonConvergenceError("cell_average_rate: quadrature grid not converged");
    return v2;
}

double single_cell_average_rate(const channel::CellScenario& scenario,
                                const channel::FadingModel& fading,
                                const SchedulerDensity& sched) {
    if (!channel::is_unit_rayleigh(fading))
        throw Error("single_cell_average_rate: requires unit Rayleigh fading");
    check_density_matches(scenario, sched);
    const double xi_snr = scenario.snr_composite();
    const double alpha = scenario.serving.exponent;
    auto integrand = [&](double u) {
        const double d = std::exp(u);
        return sched.pdf(d) * d * numerics::exp_e1(std::pow(d, alpha) / xi_snr);
    };
    return numerics::integrate(integrand, std::log(sched.d0_m), std::log(sched.rho_m),
                               {1e-12, 1e-10, 2000});
}

CalibrationResult calibrate_sigma(double target_rate,
                                  std::pair<double, double> target_coverage,
                                  const channel::CellScenario& scenario,
                                  const channel::FadingModel& fading) {
    const double rho = scenario.radius_m;
    const double d0 = scenario.user_min_distance_m;
    auto avg_at = [&](double sigma) {
        return single_cell_average_rate(scenario, fading,
                                        SchedulerDensity::truncated_gaussian(sigma, rho, d0));
    };

    CalibrationResult res;
    res.target_rate = target_rate;
    res.coverage_radius_m = target_coverage.first;
    res.coverage_target = target_coverage.second;

    const double lo = d0 / 30.0, hi = 10.0 * rho;
    const double uniform_avg =
        single_cell_average_rate(scenario, fading, SchedulerDensity::uniform(rho, d0));
    if (target_rate <= avg_at(hi)) {
        // At or past the uniform limit: either the caller asked for
        // round-robin (return the sentinel) or the target is unreachable.
        if (target_rate < uniform_avg * (1.0 - 1e-9))
            throw NoSignChangeError("calibrate_sigma: target below the uniform-selection rate");
        res.sigma_m = std::numeric_limits<double>::infinity();
        res.achieved_rate = uniform_avg;
        res.achieved_coverage =
            SchedulerDensity::uniform(rho, d0).cdf(target_coverage.first);
        return res;
    }
    if (avg_at(lo) < target_rate)
        throw NoSignChangeError("calibrate_sigma: target above the center-selection rate");

    res.sigma_m = numerics::find_root([&](double s) { return avg_at(s) - target_rate; }, lo,
                                      hi, 1e-9);
    res.achieved_rate = avg_at(res.sigma_m);
    res.achieved_coverage =
        SchedulerDensity::truncated_gaussian(res.sigma_m, rho, d0).cdf(target_coverage.first);
    return res;
}

std::vector<TradeoffRow> tradeoff_sweep(std::span<const double> radii_m,
                                        std::span<const SchedulerSpec> schedulers,
                                        const PowerPolicy& policy,
                                        const channel::CellScenario& scenario_template,
                                        const channel::FadingModel& fading,
                                        const CellAverageOptions& opts) {
    for (size_t i = 0; i + 1 < radii_m.size(); ++i)
        if (!(radii_m[i] < radii_m[i + 1]))
            throw Error("tradeoff_sweep: radii must be positive increasing");

    std::vector<TradeoffRow> rows;
    const double alpha = scenario_template.serving.exponent;
    for (double rho : radii_m) {
        channel::PathlossParams serving = scenario_template.serving;
        serving.tx_power_w = policy.power_at(rho, alpha);
        const double ratio = rho / scenario_template.radius_m;
        const int n = std::max<int>(1, std::lround(scenario_template.num_users * ratio * ratio));
        const channel::CellScenario scen = channel::CellScenario::symmetric(
            rho, n, serving, scenario_template.noise_power_w,
            scenario_template.user_min_distance_m);

        for (const SchedulerSpec& spec : schedulers) {
            SchedulerDensity density = SchedulerDensity::uniform(rho, scen.user_min_distance_m);
            double sigma = std::numeric_limits<double>::infinity();
            if (spec.kind == SchedulerSpec::Kind::TruncatedGaussian) {
                sigma = spec.sigma_m;
                density = SchedulerDensity::truncated_gaussian(sigma, rho,
                                                               scen.user_min_distance_m);
            } else if (spec.kind == SchedulerSpec::Kind::Greedy ||
                       spec.kind == SchedulerSpec::Kind::ProportionalFair) {
                const singlecell::SingleCellAnalysis analysis(scen, fading,
                                                              {0.0, 1.0, 2.0});
                const double target = spec.kind == SchedulerSpec::Kind::Greedy
                                          ? singlecell::greedy_mean_rate(analysis)
                                          : singlecell::pf_mean_rate(analysis);
                const CalibrationResult cal =
                    calibrate_sigma(target, {0.3 * rho, 0.0}, scen, fading);
                sigma = cal.sigma_m;
                density = std::isinf(sigma)
                              ? SchedulerDensity::uniform(rho, scen.user_min_distance_m)
                              : SchedulerDensity::truncated_gaussian(
                                    sigma, rho, scen.user_min_distance_m);
            }

            TradeoffRow row;
            row.radius_m = rho;
            row.scheduler = spec.name();
            row.num_users = n;
            row.tx_power_w = serving.tx_power_w;
            row.sigma_m = sigma;
            row.multicell_avg_rate =
                cell_average_rate(scen, fading, density, scen.noise_power_w, opts);
            row.singlecell_avg_rate = single_cell_average_rate(scen, fading, density);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace cellrate::multicell
