#pragma once

#include <cstdint>
#include <vector>

#include "cellrate/channel/fading.hpp"
#include "cellrate/channel/scenario.hpp"
#include "cellrate/numerics/quadrature.hpp"
#include "cellrate/numerics/tabulated_pdf.hpp"
#include "cellrate/scheduler.hpp"

namespace cellrate::singlecell {

// Inputs for the interference-free rate analysis. Rates are in nats/s/Hz
// throughout; conversion to bits happens only at reporting boundaries.
struct SingleCellAnalysis {
    SingleCellAnalysis(const channel::CellScenario& scenario_in,
                       const channel::FadingModel& fading_in,
                       std::vector<double> rate_grid_in,
                       numerics::QuadSpec quad_in = {});

    channel::CellScenario scenario;
    const channel::FadingModel* fading;
    std::vector<double> rate_grid;
    numerics::QuadSpec quad;

    double snr_composite() const { return scenario.snr_composite(); }
};

// ---- round-robin ----

// Rate density at one rate, averaging the conditional density over the
// uniform-area user distribution.
double rr_rate_pdf_at(double rate, const SingleCellAnalysis& a);

numerics::TabulatedPdf rr_rate_pdf(const SingleCellAnalysis& a);

// Closed form for unit-mean Rayleigh power fading with pathloss exponent 2.
double rr_rate_pdf_rayleigh(double rate, double radius_m, double snr_composite);

// ---- greedy (max-SNR) ----

// log CDF of the maximum SNR over the cell's users with independent random
// placements: N * log E_d[F_A(d^alpha g / xi')]. This is the law the
// drop-by-drop simulator samples.
double greedy_max_snr_log_cdf(double snr, const SingleCellAnalysis& a);

// Large-N limit in which the radial user profile is deterministic (the
// M-ring discretization limit): N * E_d[log F_A(d^alpha g / xi')]. Heavier
// tail than the iid law; kept for analysis and as a documented reference.
double greedy_max_snr_log_cdf_ring_limit(double snr, const SingleCellAnalysis& a);

// d/dg of the two log-CDFs, computed analytically under the integral sign
// (numerically differentiating values like e^-1000 underflows).
double greedy_log_cdf_derivative(double snr, const SingleCellAnalysis& a);
double greedy_log_cdf_derivative_ring_limit(double snr, const SingleCellAnalysis& a);

// Rate density/log-density of the served (max-SNR) user, iid-placement law.
double greedy_rate_pdf_at(double rate, const SingleCellAnalysis& a);
double greedy_rate_log_pdf(double rate, const SingleCellAnalysis& a);
double greedy_rate_log_pdf_ring_limit(double rate, const SingleCellAnalysis& a);

numerics::TabulatedPdf greedy_rate_pdf(const SingleCellAnalysis& a);

// ---- proportional fair ----

// Served user maximizes fading normalized by its own mean; under iid fading
// that is the max-fading user, whose distance stays uniform over the area.
double pf_rate_pdf_at(double rate, const SingleCellAnalysis& a);

numerics::TabulatedPdf pf_rate_pdf(const SingleCellAnalysis& a);

// ---- averages (calibration targets) ----

double rr_mean_rate(const SingleCellAnalysis& a);
double greedy_mean_rate(const SingleCellAnalysis& a);
double pf_mean_rate(const SingleCellAnalysis& a);

// ---- effective coverage ----

struct CoverageOptions {
    uint64_t seed = 1;
    int64_t drops = 400000;  // used only for the greedy (simulated) branch
};

// P(served user's distance <= r*) for each radius in `radius_grid`.
// Round-robin and proportional fair are uniform selections (analytic);
// greedy is evaluated by simulation.
std::vector<double> effective_coverage_cdf(const SchedulerSpec& scheduler,
                                           const SingleCellAnalysis& a,
                                           std::span<const double> radius_grid,
                                           const CoverageOptions& opts = {});

// Fraction of the cell area within r*.
double area_fraction(double radius_m, double cell_radius_m);

}  // namespace cellrate::singlecell
