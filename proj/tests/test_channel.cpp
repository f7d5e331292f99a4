#include <cmath>
#include <numbers>

#include "cellrate/channel/fading.hpp"
#include "cellrate/channel/pathloss.hpp"
#include "cellrate/channel/scenario.hpp"
#include "cellrate/errors.hpp"
#include "cellrate/montecarlo/philox.hpp"
#include "cellrate/numerics/quadrature.hpp"
#include "cellrate/numerics/tabulated_pdf.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cellrate;
using testsupport::rel_err;

TEST_CASE("uniform area density: boundary values and normalization") {
    const double rho = 1000.0;
    CHECK(channel::uniform_area_density(rho, rho) == 2.0 / rho);
    CHECK(channel::uniform_area_density(0.0, rho) == 0.0);
    CHECK(channel::uniform_area_density(rho + 1.0, rho) == 0.0);
    const double mass = numerics::integrate(
        [rho](double d) { return channel::uniform_area_density(d, rho); }, 0.0, rho);
    CHECK(rel_err(mass, 1.0) < 1e-12);
}

TEST_CASE("interferer distances: collinear cases and rotation symmetry") {
    const double rho = 1000.0;
    for (int j = 1; j <= 6; ++j)
        CHECK(rel_err(channel::interferer_distance({0.0, 0.0}, j, rho), 2.0 * rho) < 1e-12);
    CHECK(rel_err(channel::interferer_distance({rho, 0.0}, 1, rho), rho) < 1e-12);
    CHECK(rel_err(channel::interferer_distance({rho, 0.0}, 4, rho), 3.0 * rho) < 1e-12);

    // rotating the user by pi/3 and shifting the index leaves distances fixed
    mc::RngStream rng(5, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const double d = 1.0 + rng.next_double() * 999.0;
        const double th = rng.next_double() * 2.0 * std::numbers::pi;
        const channel::UserLocation loc{d * std::cos(th), d * std::sin(th)};
        const channel::UserLocation rot = loc.rotated(std::numbers::pi / 3.0);
        for (int j = 1; j <= 6; ++j) {
            const int j_shift = (j % 6) + 1;
            CHECK(rel_err(channel::interferer_distance(loc, j, rho),
                          channel::interferer_distance(rot, j_shift, rho)) < 1e-9);
        }
    }
}

TEST_CASE("mean received power: reference values and monotonicity") {
    channel::PathlossParams p;
    p.exponent = 2.0;
    p.constant_db = -80.0;
    p.reference_m = 1.0;
    p.tx_power_w = 1.0;
    CHECK(rel_err(p.composite(), 1e-8) < 1e-12);
    CHECK(rel_err(channel::mean_rx_power(p, 1000.0, 1.0), 1e-14) < 1e-12);
    CHECK(rel_err(channel::mean_rx_power(p, 1.0, 1.0), 1e-8) < 1e-12);
    CHECK(rel_err(channel::mean_rx_power(p, 2000.0, 1.0), 2.5e-15) < 1e-12);
    CHECK_THROWS_AS(channel::mean_rx_power(p, 0.5, 1.0), BelowReferenceDistanceError);

    double prev = channel::mean_rx_power(p, 1.0, 1.0);
    for (double d = 2.0; d < 5000.0; d *= 1.7) {
        const double cur = channel::mean_rx_power(p, d, 1.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("rayleigh power fading: analytic identities") {
    const channel::RayleighPowerFading f(1.0);
    CHECK(rel_err(f.pdf(0.0), 1.0) < 1e-12);
    CHECK(rel_err(f.cdf(2.0), -std::expm1(-2.0)) < 1e-12);
    CHECK(f.mean() == 1.0);

    // log_cdf equals log(cdf) where the cdf is representable, and keeps
    // working far below the underflow point of the plain cdf
    for (double a : {1e-3, 0.1, 1.0, 5.0, 30.0})
        CHECK(rel_err(f.log_cdf(a), std::log(f.cdf(a))) < 1e-12);
    CHECK(rel_err(f.log_cdf(1e-300), std::log(1e-300)) < 1e-12);

    const double mass =
        numerics::integrate_semiinfinite([&f](double a) { return f.pdf(a); }, 0.0);
    CHECK(std::abs(mass - 1.0) < numerics::kMassTol);

    const channel::RayleighPowerFading scaled(2.5);
    CHECK(rel_err(scaled.mean(), 2.5) < 1e-12);
    CHECK(channel::is_unit_rayleigh(f));
    CHECK(!channel::is_unit_rayleigh(scaled));
    CHECK_THROWS_AS(channel::RayleighPowerFading(-1.0), Error);
}

TEST_CASE("rayleigh power fading: sampler matches the law") {
    const channel::RayleighPowerFading f(1.0);
    mc::RngStream rng(42, 0);
    const int n = 1000000;
    std::vector<double> samples(n);
    double mean = 0.0;
    for (double& s : samples) {
        s = f.sample(rng);
        mean += s;
    }
    mean /= n;
    CHECK(std::abs(mean - 1.0) < 0.01);

    std::sort(samples.begin(), samples.end());
    const auto grid = numerics::linspace(0.0, 40.0, 4001);
    const auto pdf =
        numerics::TabulatedPdf::tabulate([&f](double a) { return f.pdf(a); }, grid)
            .normalized();
    CHECK(numerics::ks_distance(pdf, samples) < 0.002);
}

TEST_CASE("cell scenario: symmetric construction and invariants") {
    const auto scen = testsupport::paper_scenario();
    CHECK(scen.num_users == 100);
    CHECK(rel_err(scen.snr_composite(), 1e6) < 1e-12);
    for (int j = 0; j < channel::kNumInterferers; ++j) {
        const double d = std::hypot(scen.interferers[j].x_m, scen.interferers[j].y_m);
        CHECK(rel_err(d, 2000.0) < 1e-12);
    }

    channel::CellScenario bad = scen;
    bad.num_users = 0;
    CHECK_THROWS_AS(bad.validate(), ScenarioError);
    bad = scen;
    bad.interferers[2].x_m *= 1.5;
    CHECK_THROWS_AS(bad.validate(), ScenarioError);
    bad = scen;
    bad.serving.exponent = 0.0;
    CHECK_THROWS_AS(bad.validate(), ScenarioError);
}
