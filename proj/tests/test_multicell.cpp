#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cellrate/channel/fading.hpp"
#include "cellrate/errors.hpp"
#include "cellrate/montecarlo/philox.hpp"
#include "cellrate/montecarlo/simulate.hpp"
#include "cellrate/multicell/average.hpp"
#include "cellrate/multicell/hypoexp.hpp"
#include "cellrate/multicell/interference.hpp"
#include "cellrate/multicell/rate.hpp"
#include "cellrate/multicell/scheduler_density.hpp"
#include "cellrate/numerics/differentiate.hpp"
#include "cellrate/numerics/quadrature.hpp"
#include "cellrate/singlecell/analysis.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cellrate;
using testsupport::paper_scenario;
using testsupport::rel_err;

namespace {
const channel::RayleighPowerFading kFading(1.0);
}

TEST_CASE("scheduler density: normalization across the sigma range") {
    const double rho = 1000.0, d0 = 1.0;
    for (double sigma : numerics::logspace(1.0, 1e5, 11)) {
        const auto den = multicell::SchedulerDensity::truncated_gaussian(sigma, rho, d0);
        const double mass =
            numerics::integrate([&den](double d) { return den.pdf(d); }, d0, rho);
        CHECK(std::abs(mass - 1.0) < numerics::kMassTol);
        CHECK(std::abs(den.cdf(rho) - 1.0) < 1e-12);
    }
    const auto uni = multicell::SchedulerDensity::uniform(rho, d0);
    const double mass = numerics::integrate([&uni](double d) { return uni.pdf(d); }, d0, rho);
    CHECK(std::abs(mass - 1.0) < numerics::kMassTol);
}

TEST_CASE("scheduler density: uniform limit and concentration") {
    const double rho = 1000.0, d0 = 1.0;
    const auto uni = multicell::SchedulerDensity::uniform(rho, d0);
    const auto wide = multicell::SchedulerDensity::truncated_gaussian(1e7, rho, d0);
    for (double d : {1.5, 100.0, 500.0, 999.0})
        CHECK(rel_err(wide.pdf(d), uni.pdf(d)) < 1e-5);

    // smaller sigma pulls the median toward the center
    const auto tight = multicell::SchedulerDensity::truncated_gaussian(50.0, rho, d0);
    const auto loose = multicell::SchedulerDensity::truncated_gaussian(200.0, rho, d0);
    CHECK(tight.inverse_cdf(0.5) < loose.inverse_cdf(0.5));
    CHECK(loose.inverse_cdf(0.5) < uni.inverse_cdf(0.5));

    // inverse round-trips
    for (double q : {0.01, 0.3, 0.7, 0.99}) {
        CHECK(std::abs(tight.cdf(tight.inverse_cdf(q)) - q) < 1e-10);
        CHECK(std::abs(uni.cdf(uni.inverse_cdf(q)) - q) < 1e-10);
    }
    CHECK_THROWS_AS(multicell::SchedulerDensity::truncated_gaussian(-1.0, rho, d0), Error);
}

TEST_CASE("hypoexp coefficients: two-mean case and degeneracy guard") {
    const std::vector<double> means = {2.0, 1.0};
    const auto c = multicell::hypoexp_coefficients(means);
    CHECK(rel_err(c[0], 2.0) < 1e-14);
    CHECK(rel_err(c[1], -1.0) < 1e-14);
    CHECK_THROWS_AS(multicell::hypoexp_coefficients(std::vector<double>{1.0, 1.0 + 1e-12}),
                    NearDegenerateMeansError);
    CHECK_THROWS_AS(multicell::hypoexp_coefficients(std::vector<double>{1.0, -2.0}), Error);
}

TEST_CASE("hypoexp coefficients: randomized sums, positivity, recursion oracle") {
    mc::RngStream rng(2024, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        // distinct means with a floor on the pairwise gap: the coefficient
        // sum cancels catastrophically as means approach, so the 1e-9 sum
        // identity is a statement about well-separated instances
        std::vector<double> means(6);
        bool separated = false;
        while (!separated) {
            for (double& m : means) m = 0.2 + 9.8 * rng.next_double();
            separated = true;
            for (int i = 0; i < 6 && separated; ++i)
                for (int j = i + 1; j < 6; ++j)
                    if (std::abs(means[i] - means[j]) < 0.1) {
                        separated = false;
                        break;
                    }
        }
        const std::vector<double> coef = multicell::hypoexp_coefficients(means);
        const double sum = std::accumulate(coef.begin(), coef.end(), 0.0);
        CHECK(std::abs(sum - 1.0) < 1e-9);

        double cmax = 0.0;
        for (double c : coef) cmax = std::max(cmax, std::abs(c));
        const auto rec = testsupport::hypoexp_coefficients_recursion(means);
        for (size_t j = 0; j < coef.size(); ++j)
            CHECK(std::abs(coef[j] - rec[j]) <= 1e-9 * cmax);

        // density positivity over a wide grid
        const double total = std::accumulate(means.begin(), means.end(), 0.0);
        for (double x : numerics::linspace(0.0, 10.0 * total, 97))
            CHECK(multicell::hypoexp_pdf(means, coef, x) > -1e-12 * cmax);
    }
}

TEST_CASE("interference profile: means, degenerate locations, symmetry") {
    const auto scen = paper_scenario();
    const channel::UserLocation loc{500.0, 210.0};
    const auto p = multicell::make_interference_profile(scen, loc);
    CHECK(rel_err(p.signal_mean_w, 1e-8 * std::pow(loc.distance(), -2.0)) < 1e-12);
    for (int j = 0; j < 6; ++j) {
        const double dj = channel::interferer_distance(loc, j + 1, scen.radius_m);
        CHECK(rel_err(p.mean_interference_w[j], 1e-8 / (dj * dj)) < 1e-12);
    }

    // the symmetry axis through (500, 0) pairs the means; the builder must
    // perturb and still return coefficients that sum to one
    const auto sym = multicell::make_interference_profile(scen, {500.0, 0.0});
    const double sum =
        std::accumulate(sym.coefficients.begin(), sym.coefficients.end(), 0.0);
    CHECK(std::abs(sum - 1.0) < 1e-7);
    CHECK(rel_err(sym.location.distance(), 500.0) < 1e-9);

    CHECK_THROWS_AS(multicell::make_interference_profile(scen, {0.5, 0.0}), Error);
    CHECK_THROWS_AS(multicell::make_interference_profile(scen, {1200.0, 0.0}), Error);
}

TEST_CASE("interference mgf: moments, pole, generic-fading agreement") {
    const auto scen = paper_scenario();
    const auto p = multicell::make_interference_profile(scen, {430.0, 170.0});
    CHECK(multicell::interference_mgf(p, 0.0) == 1.0);

    // derivative at zero is the total mean
    const double d = numerics::differentiate(
        [&p](double s) { return multicell::interference_mgf(p, s); }, 0.0,
        0.02 / p.max_mean());
    CHECK(rel_err(d, p.total_mean()) < 1e-6);

    CHECK_THROWS_AS(multicell::interference_mgf(p, 1.0 / p.max_mean()), PoleCrossingError);

    for (double frac : {-2.0, 0.3, 0.8}) {
        const double s = frac / p.max_mean();
        CHECK(rel_err(multicell::interference_mgf(p, s, kFading),
                      multicell::interference_mgf(p, s)) < 1e-6);
    }
}

TEST_CASE("interference pdf: closed form against the convolution oracle") {
    const auto scen = paper_scenario();
    const auto p = multicell::make_interference_profile(scen, {500.0, 0.0});
    const double top = 12.0 * p.total_mean();
    const int n = 8193;
    const auto conv = multicell::convolved_interference_pdf(p, kFading, top, n);
    for (int k = 1; k <= 10; ++k) {
        const double x = conv.grid()[k * 250];  // interior spot points on-grid
        CHECK(rel_err(conv.values()[k * 250], multicell::interference_pdf(p, x)) < 1e-6);
    }
}

TEST_CASE("rate pdf at a location: closed form, quadrature path, zero-interference limit") {
    const auto scen = paper_scenario();
    const auto p = multicell::make_interference_profile(scen, {500.0, 0.0});
    // bulk of the law (cdf(4) ~ 1 - 1e-5): deeper tail values fall below
    // the cancellation noise of the near-degenerate mixture coefficients at
    // this symmetric location, where the quadrature path honestly refuses
    const auto grid = numerics::linspace(0.0, 4.0, 61);

    const auto quad_path = multicell::rate_pdf_at(p, kFading, scen.noise_power_w, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        const double closed =
            multicell::rate_pdf_at_rayleigh(p, scen.noise_power_w, grid[i]);
        CHECK(rel_err(quad_path.values()[i], closed) < 1e-5);
    }

    // unit mass of the closed form at several locations
    mc::RngStream rng(31, 0);
    for (int trial = 0; trial < 5; ++trial) {
        const double dd = 50.0 + 900.0 * rng.next_double();
        const double th = rng.next_double() * 2.0 * std::numbers::pi;
        const auto pp = multicell::make_interference_profile(
            scen, {dd * std::cos(th), dd * std::sin(th)});
        const double mass = numerics::integrate_semiinfinite(
            [&pp, &scen](double r) {
                return multicell::rate_pdf_at_rayleigh(pp, scen.noise_power_w, r);
            },
            0.0, {1e-9, 1e-7, 4000});  // mixture noise floors the estimate
        CHECK(std::abs(mass - 1.0) < 1e-6);
    }

    // nulling the interferers reduces the law to the single-link SNR density
    auto null_scen = scen;
    for (int j = 0; j < 6; ++j)
        null_scen.interferers[j].pathloss.tx_power_w = 1e-30 * (1.0 + 0.01 * j);
    const auto pnull = multicell::make_interference_profile(null_scen, {500.0, 0.0});
    const auto null_pdf = multicell::rate_pdf_at(pnull, kFading, scen.noise_power_w, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        const double g = std::expm1(grid[i]);
        const double snr0 = pnull.signal_mean_w / scen.noise_power_w;
        const double expected = std::exp(grid[i]) / snr0 * std::exp(-g / snr0);
        CHECK(rel_err(null_pdf.values()[i], expected) < 1e-5);
    }
}

TEST_CASE("interference-limited average rate: identities and reductions") {
    const auto scen = paper_scenario();
    mc::RngStream rng(77, 3);
    for (int trial = 0; trial < 5; ++trial) {
        const double dd = 80.0 + 850.0 * rng.next_double();
        const double th = rng.next_double() * 2.0 * std::numbers::pi;
        const auto p = multicell::make_interference_profile(
            scen, {dd * std::cos(th), dd * std::sin(th)});
        const double closed = multicell::avg_rate_interference_limited(p);
        CHECK(rel_err(closed, multicell::mean_rate_at(p, 0.0)) < 1e-6);
        CHECK(rel_err(closed, multicell::mean_rate_at_survival(p, 0.0)) < 1e-6);
    }

    // one dominant interferer: the two-exponential closed form
    multicell::InterferenceProfile p;
    p.location = {100.0, 0.0};
    p.signal_mean_w = 3e-13;
    p.mean_interference_w = {1e-14, 1e-20, 1.3e-20, 1.7e-20, 2.3e-20, 2.9e-20};
    const auto coef = multicell::hypoexp_coefficients(p.mean_interference_w);
    std::copy(coef.begin(), coef.end(), p.coefficients.begin());
    const double a = p.signal_mean_w, b = p.mean_interference_w[0];
    const double two_exp = a / (a - b) * std::log(a / b);
    CHECK(rel_err(multicell::avg_rate_interference_limited(p), two_exp) < 1e-4);

    // signal mean colliding with an interference mean stays finite (series)
    p.signal_mean_w = p.mean_interference_w[0];
    const double v = multicell::avg_rate_interference_limited(p);
    CHECK(std::isfinite(v));
    CHECK(rel_err(v, multicell::mean_rate_at(p, 0.0)) < 1e-6);
}

TEST_CASE("noisy location mean: frozen reference and moment identity") {
    const auto scen = paper_scenario();
    const auto p = multicell::make_interference_profile(scen, {500.0, 0.0});
    // frozen from an independent adaptive evaluation of the survival form
    CHECK(rel_err(multicell::mean_rate_at_survival(p, scen.noise_power_w),
                  0.811118022945) < 1e-8);
    CHECK(rel_err(multicell::mean_rate_at(p, scen.noise_power_w),
                  multicell::mean_rate_at_survival(p, scen.noise_power_w)) < 1e-7);
}

TEST_CASE("cell average rate: frozen references, uniform sentinel, rotation invariance") {
    const auto scen = paper_scenario();
    const auto d0 = scen.user_min_distance_m;

    const auto tg = multicell::SchedulerDensity::truncated_gaussian(58.82, 1000.0, d0);
    const double v = multicell::cell_average_rate(scen, kFading, tg, scen.noise_power_w);
    CHECK(rel_err(v, 4.1546375958) < 1e-6);  // frozen independent evaluation

    multicell::CellAverageOptions il;
    il.interference_limited = true;
    const double vil = multicell::cell_average_rate(scen, kFading, tg, 0.0, il);
    CHECK(rel_err(vil, 4.6979912737) < 1e-6);

    const auto uni = multicell::SchedulerDensity::uniform(1000.0, d0);
    const double vu = multicell::cell_average_rate(scen, kFading, uni, scen.noise_power_w);
    CHECK(rel_err(vu, 0.7137599551) < 1e-6);

    // rotating the interferer ring by pi/3 maps it onto itself
    auto rot = scen;
    for (int j = 0; j < 6; ++j) {
        const double ang = (j + 1) * std::numbers::pi / 3.0;
        rot.interferers[j].x_m = 2000.0 * std::cos(ang);
        rot.interferers[j].y_m = 2000.0 * std::sin(ang);
    }
    const double vr = multicell::cell_average_rate(rot, kFading, tg, scen.noise_power_w);
    CHECK(rel_err(vr, v) < 1e-9);

    // the sweep machinery is pinned to the closed-form fading model
    const channel::RayleighPowerFading scaled(2.0);
    CHECK_THROWS_AS(multicell::cell_average_rate(scen, scaled, tg, scen.noise_power_w),
                    Error);
}

TEST_CASE("cell average rate: strictly decreasing in sigma") {
    const auto scen = paper_scenario();
    double prev = std::numeric_limits<double>::infinity();
    for (double sigma : {50.0, 100.0, 200.0, 400.0, 800.0}) {
        const auto den =
            multicell::SchedulerDensity::truncated_gaussian(sigma, 1000.0, 1.0);
        const double v =
            multicell::cell_average_rate(scen, kFading, den, scen.noise_power_w);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("cell average rate: agrees with density-driven simulation") {
    const auto scen = paper_scenario();
    const auto den = multicell::SchedulerDensity::truncated_gaussian(150.0, 1000.0, 1.0);
    const double analytic =
        multicell::cell_average_rate(scen, kFading, den, scen.noise_power_w);

    mc::SimConfig cfg;
    cfg.seed = 404;
    cfg.num_drops = 400000;
    cfg.scenario = scen;
    cfg.fading = &kFading;
    const auto out = simulate_multi_cell(cfg, den);
    const double mc_mean =
        std::accumulate(out.rate_nats.begin(), out.rate_nats.end(), 0.0) / cfg.num_drops;
    CHECK(rel_err(mc_mean, analytic) < 0.01);
}

TEST_CASE("single-cell average under a density: against the scheduler targets") {
    const auto scen = paper_scenario();
    const auto uni = multicell::SchedulerDensity::uniform(1000.0, 1.0);
    const singlecell::SingleCellAnalysis analysis(scen, kFading,
                                                  numerics::linspace(0.0, 14.0, 15));
    // uniform density reproduces the round-robin mean up to the d0
    // truncation: the [0, 1 m] disc carries 1e-6 of the mass at ~13 nats
    CHECK(rel_err(multicell::single_cell_average_rate(scen, kFading, uni),
                  singlecell::rr_mean_rate(analysis)) < 3e-5);
}

TEST_CASE("sigma calibration: paper-parameter values and sentinel behavior") {
    const auto scen = paper_scenario();
    const singlecell::SingleCellAnalysis analysis(scen, kFading,
                                                  numerics::linspace(0.0, 14.0, 15));

    const auto cal_g = multicell::calibrate_sigma(singlecell::greedy_mean_rate(analysis),
                                                  {300.0, 0.994}, scen, kFading);
    CHECK(rel_err(cal_g.sigma_m, 53.3345) < 1e-3);  // frozen cross-check
    CHECK(rel_err(cal_g.achieved_rate, cal_g.target_rate) < 1e-7);
    CHECK(cal_g.achieved_coverage > 0.99);

    const auto cal_pf = multicell::calibrate_sigma(singlecell::pf_mean_rate(analysis),
                                                   {300.0, 0.0}, scen, kFading);
    CHECK(rel_err(cal_pf.sigma_m, 203.782) < 1e-3);

    // round-robin target lands on the infinite-sigma sentinel
    const auto cal_rr = multicell::calibrate_sigma(singlecell::rr_mean_rate(analysis),
                                                   {300.0, 0.0}, scen, kFading);
    CHECK(std::isinf(cal_rr.sigma_m));

    CHECK_THROWS_AS(
        multicell::calibrate_sigma(0.5 * singlecell::rr_mean_rate(analysis), {300.0, 0.0},
                                   scen, kFading),
        NoSignChangeError);
    CHECK_THROWS_AS(multicell::calibrate_sigma(100.0, {300.0, 0.0}, scen, kFading),
                    NoSignChangeError);
}

TEST_CASE("tradeoff sweep: structure, power policies, qualitative directions") {
    const auto tmpl = paper_scenario();
    const std::vector<double> radii = {500.0, 1000.0, 2000.0};
    const std::vector<SchedulerSpec> scheds = {SchedulerSpec::round_robin(),
                                               SchedulerSpec::greedy(),
                                               SchedulerSpec::truncated_gaussian(120.0)};

    multicell::PowerPolicy fixed;
    fixed.mode = multicell::PowerPolicy::Mode::Fixed;
    fixed.reference_power_w = 1.0;
    const auto rows = multicell::tradeoff_sweep(radii, scheds, fixed, tmpl, kFading);
    REQUIRE(rows.size() == radii.size() * scheds.size());

    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].multicell_avg_rate <= rows[i].singlecell_avg_rate + 1e-9);
        CHECK(rows[i].radius_m == radii[i / scheds.size()]);
    }
    // user density fixed: N = 100 (rho/1000)^2
    CHECK(rows[0].num_users == 25);
    CHECK(rows[3].num_users == 100);
    CHECK(rows[6].num_users == 400);

    multicell::PowerPolicy edge;
    edge.mode = multicell::PowerPolicy::Mode::EdgeScaled;
    edge.reference_power_w = 1.0;
    edge.reference_radius_m = 4000.0;
    CHECK(rel_err(edge.power_at(2000.0, 2.0), 0.25) < 1e-12);
    CHECK(rel_err(edge.power_at(4000.0, 2.0), 1.0) < 1e-12);

    const std::vector<SchedulerSpec> greedy_only = {SchedulerSpec::greedy()};
    const auto erows = multicell::tradeoff_sweep(radii, greedy_only, edge, tmpl, kFading);
    CHECK(erows[0].multicell_avg_rate <= erows[1].multicell_avg_rate);
    CHECK(erows[1].multicell_avg_rate <= erows[2].multicell_avg_rate);
}
