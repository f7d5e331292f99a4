#include "cellrate/singlecell/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "cellrate/errors.hpp"
#include "cellrate/montecarlo/simulate.hpp"

namespace cellrate::singlecell {

using numerics::integrate;
using numerics::integrate_semiinfinite;
using numerics::TabulatedPdf;

SingleCellAnalysis::SingleCellAnalysis(const channel::CellScenario& scenario_in,
                                       const channel::FadingModel& fading_in,
                                       std::vector<double> rate_grid_in,
                                       numerics::QuadSpec quad_in)
    : scenario(scenario_in), fading(&fading_in), rate_grid(std::move(rate_grid_in)),
      quad(quad_in) {
    scenario.validate();
    for (size_t i = 0; i < rate_grid.size(); ++i) {
        if (rate_grid[i] < 0.0) throw Error("SingleCellAnalysis: rates must be >= 0");
        if (i > 0 && !(rate_grid[i - 1] < rate_grid[i]))
            throw Error("SingleCellAnalysis: rate grid must be strictly increasing");
    }
}

namespace {

// Integral of f over (0, rho], split at the radius where the integrand's
// fading argument crosses unity and mapped to logarithmic coordinates on
// both sides. High SNRs squeeze the conditional densities into a spike at a
// tiny radius; anchoring the split there keeps the feature at an interval
// endpoint, where adaptive refinement is reliable, for every rate at once.
double integrate_radial(const std::function<double(double)>& f, double rho,
                        double feature_radius, const numerics::QuadSpec& quad) {
    const double split = std::clamp(feature_radius, 0.0, rho);
    if (!(split > 0.0)) throw Error("integrate_radial: bad feature radius");

    double total = integrate_semiinfinite(
        [&f, split](double v) {
            const double d = split * std::exp(-v);
            // every radial integrand here vanishes at the center; once the
            // radius underflows the contribution is identically zero
            if (d == 0.0) return 0.0;
            return f(d) * d;
        },
        0.0, quad);
    if (split < rho) {
        total += numerics::integrate(
            [&f, split](double u) {
                const double d = split * std::exp(u);
                return f(d) * d;
            },
            0.0, std::log(rho / split), quad);
    }
    return total;
}

// Point densities range over hundreds of orders of magnitude, so their
// quadratures must converge in relative terms; an absolute floor would let
// tiny tail values pass at garbage precision.
numerics::QuadSpec relative_only(numerics::QuadSpec q) {
    q.abs_tol = 1e-300;
    return q;
}

// Radius at which the fading argument snr * d^alpha / xi reaches one.
double characteristic_radius(double snr, double xi, double alpha, double rho) {
    if (!(snr > 0.0)) return rho;
    const double r = std::pow(xi / snr, 1.0 / alpha);
    return std::isfinite(r) ? std::min(r, rho) : rho;
}

}  // namespace

// ---- round-robin ----

double rr_rate_pdf_at(double rate, const SingleCellAnalysis& a) {
    if (rate > 700.0) return 0.0;  // tail mass below double resolution
    const double rho = a.scenario.radius_m;
    const double alpha = a.scenario.serving.exponent;
    const double xi = a.snr_composite();
    const double er = std::exp(rate);
    const double g = std::expm1(rate);
    auto integrand = [&](double d) {
        const double da = std::pow(d, alpha);
        return channel::uniform_area_density(d, rho) * (da / xi) * er *
               a.fading->pdf(g * da / xi);
    };
    return integrate_radial(integrand, rho, characteristic_radius(g, xi, alpha, rho), relative_only(a.quad));
}

TabulatedPdf rr_rate_pdf(const SingleCellAnalysis& a) {
    return TabulatedPdf::tabulate([&a](double r) { return rr_rate_pdf_at(r, a); },
                                  a.rate_grid);
}

double rr_rate_pdf_rayleigh(double rate, double radius_m, double snr_composite) {
    if (rate > 700.0) return 0.0;
    const double er = std::exp(rate);
    const double x = radius_m * radius_m * std::expm1(rate) / snr_composite;
    if (x < 1e-4) {
        // series of ((1-e^-x)/x - e^-x) / (e^r - 1), finite at rate -> 0
        return er * (radius_m * radius_m / snr_composite) *
               (0.5 - x / 3.0 + x * x / 8.0);
    }
    const double bracket = -std::expm1(-x) / x - std::exp(-x);
    return er / std::expm1(rate) * bracket;
}

// ---- greedy ----

namespace {

// E_d[1 - F_A(d^alpha g / xi)]: the per-user SNR tail, integrated in a
// cancellation-free form (the CDF complement is what the tail asymptotics
// live on).
double mean_sf(double snr, const SingleCellAnalysis& a) {
    const double rho = a.scenario.radius_m;
    const double alpha = a.scenario.serving.exponent;
    const double xi = a.snr_composite();
    return integrate_radial(
        [&](double d) {
            return channel::uniform_area_density(d, rho) *
                   (1.0 - a.fading->cdf(snr * std::pow(d, alpha) / xi));
        },
        rho, characteristic_radius(snr, xi, alpha, rho), relative_only(a.quad));
}

// E_d[(d^alpha / xi) f_A(d^alpha g / xi)], the g-derivative of E_d[F_A].
double mean_pdf_weighted(double snr, const SingleCellAnalysis& a) {
    const double rho = a.scenario.radius_m;
    const double alpha = a.scenario.serving.exponent;
    const double xi = a.snr_composite();
    return integrate_radial(
        [&](double d) {
            const double da = std::pow(d, alpha);
            return channel::uniform_area_density(d, rho) * (da / xi) *
                   a.fading->pdf(snr * da / xi);
        },
        rho, characteristic_radius(snr, xi, alpha, rho), relative_only(a.quad));
}

}  // namespace

double greedy_max_snr_log_cdf(double snr, const SingleCellAnalysis& a) {
    if (!(snr > 0.0)) return -std::numeric_limits<double>::infinity();
    const double q = mean_sf(snr, a);
    if (!(q < 1.0)) return -std::numeric_limits<double>::infinity();
    return a.scenario.num_users * std::log1p(-q);
}

double greedy_max_snr_log_cdf_ring_limit(double snr, const SingleCellAnalysis& a) {
    if (!(snr > 0.0)) return -std::numeric_limits<double>::infinity();
    const double rho = a.scenario.radius_m;
    const double alpha = a.scenario.serving.exponent;
    const double xi = a.snr_composite();
    auto integrand = [&](double d) {
        const double lc = a.fading->log_cdf(snr * std::pow(d, alpha) / xi);
        if (std::isinf(lc)) {
            // genuine zero of the CDF on the support is an error; an argument
            // that underflowed at a vanishing radius contributes nothing
            if (d > 1e-12 * rho)
                throw LogOfZeroError("greedy_max_snr_log_cdf_ring_limit: fading CDF vanished");
            return 0.0;
        }
        return channel::uniform_area_density(d, rho) * lc;
    };
    return a.scenario.num_users *
           integrate_radial(integrand, rho, characteristic_radius(snr, xi, alpha, rho), relative_only(a.quad));
}

double greedy_log_cdf_derivative(double snr, const SingleCellAnalysis& a) {
    const double m = 1.0 - mean_sf(snr, a);
    if (!(m > 0.0)) throw LogOfZeroError("greedy_log_cdf_derivative: fading CDF vanished");
    return a.scenario.num_users * mean_pdf_weighted(snr, a) / m;
}

double greedy_log_cdf_derivative_ring_limit(double snr, const SingleCellAnalysis& a) {
    const double rho = a.scenario.radius_m;
    const double alpha = a.scenario.serving.exponent;
    const double xi = a.snr_composite();
    auto integrand = [&](double d) {
        const double x = snr * std::pow(d, alpha) / xi;
        const double F = a.fading->cdf(x);
        const double f = a.fading->pdf(x);
        if (!(F > 0.0)) {
            if (f > 0.0 && d > 1e-12 * rho)
                throw LogOfZeroError("greedy_log_cdf_derivative_ring_limit: CDF vanished");
            return 0.0;
        }
        return channel::uniform_area_density(d, rho) * (std::pow(d, alpha) / xi) * (f / F);
    };
    return a.scenario.num_users *
           integrate_radial(integrand, rho, characteristic_radius(snr, xi, alpha, rho), relative_only(a.quad));
}

double greedy_rate_pdf_at(double rate, const SingleCellAnalysis& a) {
    if (rate > 700.0) return 0.0;
    const int n = a.scenario.num_users;
    const double g = std::expm1(rate);
    const double er = std::exp(rate);
    const double ef = mean_pdf_weighted(g, a);
    if (n == 1) return er * ef;
    if (!(g > 0.0)) return 0.0;
    const double lm = std::log1p(-mean_sf(g, a));
    if (std::isinf(lm)) return 0.0;
    return er * n * std::exp((n - 1) * lm) * ef;
}

double greedy_rate_log_pdf(double rate, const SingleCellAnalysis& a) {
    const int n = a.scenario.num_users;
    const double g = std::expm1(rate);
    const double lm = (n == 1) ? 0.0 : (n - 1.0) * std::log1p(-mean_sf(g, a));
    return rate + std::log(static_cast<double>(n)) + lm +
           std::log(mean_pdf_weighted(g, a));
}

double greedy_rate_log_pdf_ring_limit(double rate, const SingleCellAnalysis& a) {
    const double g = std::expm1(rate);
    return rate + greedy_max_snr_log_cdf_ring_limit(g, a) +
           std::log(greedy_log_cdf_derivative_ring_limit(g, a));
}

TabulatedPdf greedy_rate_pdf(const SingleCellAnalysis& a) {
    return TabulatedPdf::tabulate([&a](double r) { return greedy_rate_pdf_at(r, a); },
                                  a.rate_grid);
}

// ---- proportional fair ----

double pf_rate_pdf_at(double rate, const SingleCellAnalysis& a) {
    if (rate > 700.0) return 0.0;
    const double rho = a.scenario.radius_m;
    const double alpha = a.scenario.serving.exponent;
    const double xi = a.snr_composite();
    const int n = a.scenario.num_users;
    const double g = std::expm1(rate);
    const double er = std::exp(rate);
    auto integrand = [&](double d) {
        const double x = g * std::pow(d, alpha) / xi;
        const double f = a.fading->pdf(x);
        if (n == 1) return std::pow(d, alpha + 1.0) * f;
        const double lc = a.fading->log_cdf(x);
        if (std::isinf(lc)) return 0.0;  // F^(N-1) kills the density below support
        return std::pow(d, alpha + 1.0) * f * std::exp((n - 1) * lc);
    };
    return (2.0 * er * n / (xi * rho * rho)) *
           integrate_radial(integrand, rho, characteristic_radius(g, xi, alpha, rho), relative_only(a.quad));
}

TabulatedPdf pf_rate_pdf(const SingleCellAnalysis& a) {
    return TabulatedPdf::tabulate([&a](double r) { return pf_rate_pdf_at(r, a); },
                                  a.rate_grid);
}

// ---- averages ----

double rr_mean_rate(const SingleCellAnalysis& a) {
    const double rho = a.scenario.radius_m;
    const double alpha = a.scenario.serving.exponent;
    const double xi = a.snr_composite();
    auto survival = [&](double r) {
        const double g = std::expm1(r);
        if (!std::isfinite(g)) return 0.0;
        return integrate_radial(
            [&](double d) {
                return channel::uniform_area_density(d, rho) *
                       (1.0 - a.fading->cdf(g * std::pow(d, alpha) / xi));
            },
            rho, characteristic_radius(g, xi, alpha, rho), relative_only(a.quad));
    };
    return integrate_semiinfinite(survival, 0.0, a.quad);
}

double greedy_mean_rate(const SingleCellAnalysis& a) {
    const int n = a.scenario.num_users;
    auto survival = [&](double g) {
        if (!std::isfinite(g)) return 0.0;
        const double q = mean_sf(g, a);
        if (!(q < 1.0)) return 1.0 / (1.0 + g);
        return -std::expm1(n * std::log1p(-q)) / (1.0 + g);
    };
    return integrate_semiinfinite(survival, 0.0, a.quad);
}

double pf_mean_rate(const SingleCellAnalysis& a) {
    const double rho = a.scenario.radius_m;
    const double alpha = a.scenario.serving.exponent;
    const double xi = a.snr_composite();
    const int n = a.scenario.num_users;
    auto survival = [&](double r) {
        const double g = std::expm1(r);
        if (!std::isfinite(g)) return 0.0;
        return integrate_radial(
            [&](double d) {
                const double lc = a.fading->log_cdf(g * std::pow(d, alpha) / xi);
                const double tail = std::isinf(lc) ? 1.0 : -std::expm1(n * lc);
                return channel::uniform_area_density(d, rho) * tail;
            },
            rho, characteristic_radius(g, xi, alpha, rho), relative_only(a.quad));
    };
    return integrate_semiinfinite(survival, 0.0, a.quad);
}

// ---- effective coverage ----

double area_fraction(double radius_m, double cell_radius_m) {
    const double f = radius_m / cell_radius_m;
    return std::clamp(f * f, 0.0, 1.0);
}

std::vector<double> effective_coverage_cdf(const SchedulerSpec& scheduler,
                                           const SingleCellAnalysis& a,
                                           std::span<const double> radius_grid,
                                           const CoverageOptions& opts) {
    std::vector<double> out(radius_grid.size());
    const double rho = a.scenario.radius_m;
    const double dmin = a.scenario.user_min_distance_m;

    switch (scheduler.kind) {
        case SchedulerSpec::Kind::RoundRobin:
        case SchedulerSpec::Kind::ProportionalFair: {
            // Selection is uniform among users, so the served distance keeps
            // the truncated uniform-area law.
            const double denom = rho * rho - dmin * dmin;
            for (size_t i = 0; i < radius_grid.size(); ++i) {
                const double r = radius_grid[i];
                out[i] = std::clamp((r * r - dmin * dmin) / denom, 0.0, 1.0);
            }
            return out;
        }
        case SchedulerSpec::Kind::Greedy: {
            mc::SimConfig cfg;
            cfg.seed = opts.seed;
            cfg.num_drops = opts.drops;
            cfg.scenario = a.scenario;
            cfg.fading = a.fading;
            cfg.scheduler = SchedulerSpec::greedy();
            mc::SingleCellSamples samples = simulate_single_cell(cfg);
            std::sort(samples.served_distance_m.begin(), samples.served_distance_m.end());
            const double n = static_cast<double>(samples.served_distance_m.size());
            for (size_t i = 0; i < radius_grid.size(); ++i) {
                const auto it =
                    std::upper_bound(samples.served_distance_m.begin(),
                                     samples.served_distance_m.end(), radius_grid[i]);
                out[i] = static_cast<double>(it - samples.served_distance_m.begin()) / n;
            }
            return out;
        }
        default:
            throw Error("effective_coverage_cdf: scheduler must be rr, greedy, or pf");
    }
}

}  // namespace cellrate::singlecell
