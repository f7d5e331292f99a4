#include "cellrate/multicell/rate.hpp"

#include <cmath>

#include "cellrate/errors.hpp"

namespace cellrate::multicell {

namespace {

double sinr_pdf_value(const InterferenceProfile& profile, const channel::FadingModel& fading,
                      double noise_w, double sinr, const numerics::QuadSpec& quad,
                      const numerics::TabulatedPdf* interference_density) {
    const double ibar = profile.signal_mean_w;
    auto integrand = [&](double eta) {
        const double fi = interference_density ? interference_density->value_at(eta)
                                               : interference_pdf(profile, eta);
        const double tot = noise_w + eta;
        return (tot / ibar) * fading.pdf(tot * sinr / ibar) * fi;
    };
    numerics::QuadSpec rel = quad;
    rel.abs_tol = 1e-300;  // pdf values span many orders; converge relatively
    // near symmetry axes the partial-fraction mixture evaluates through up
    // to ~9 orders of cancellation, leaving ~1e-6 relative noise on the
    // integrand; tighter demands cannot be met in double precision
    rel.rel_tol = std::max(rel.rel_tol, 1e-6);
    // the interference density carries the mass; match its scale
    return numerics::integrate_semiinfinite_scaled(integrand, 0.0, profile.total_mean(), rel);
}

}  // namespace

numerics::TabulatedPdf sinr_pdf_at(const InterferenceProfile& profile,
                                   const channel::FadingModel& fading, double noise_w,
                                   std::span<const double> sinr_grid,
                                   const numerics::QuadSpec& quad,
                                   const numerics::TabulatedPdf* interference_density) {
    std::vector<double> grid(sinr_grid.begin(), sinr_grid.end());
    std::vector<double> values(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        values[i] = sinr_pdf_value(profile, fading, noise_w, grid[i], quad, interference_density);
    return numerics::TabulatedPdf(std::move(grid), std::move(values));
}

numerics::TabulatedPdf rate_pdf_at(const InterferenceProfile& profile,
                                   const channel::FadingModel& fading, double noise_w,
                                   std::span<const double> rate_grid,
                                   const numerics::QuadSpec& quad,
                                   const numerics::TabulatedPdf* interference_density) {
    std::vector<double> grid(rate_grid.begin(), rate_grid.end());
    std::vector<double> values(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const double er = std::exp(grid[i]);
        values[i] = er * sinr_pdf_value(profile, fading, noise_w, std::expm1(grid[i]), quad,
                                        interference_density);
    }
    return numerics::TabulatedPdf(std::move(grid), std::move(values));
}

namespace {

// sum_j C_j (c + d) with c = n/(g Ij + Ibar), d = Ibar Ij/(g Ij + Ibar)^2
double mixture_term(const InterferenceProfile& p, double noise_w, double g) {
    const double ibar = p.signal_mean_w;
    double s = 0.0;
    for (int j = 0; j < channel::kNumInterferers; ++j) {
        const double ij = p.mean_interference_w[j];
        const double den = g * ij + ibar;
        s += p.coefficients[j] * (noise_w / den + ibar * ij / (den * den));
    }
    return s;
}

}  // namespace

double rate_pdf_at_rayleigh(const InterferenceProfile& profile, double noise_w, double rate) {
    if (rate > 700.0) return 0.0;  // tail mass below double resolution
    const double g = std::expm1(rate);
    if (g < 0.0) return 0.0;
    const double er = std::exp(rate);
    return er * std::exp(-g * noise_w / profile.signal_mean_w) *
           mixture_term(profile, noise_w, g);
}

double avg_rate_interference_limited(const InterferenceProfile& profile) {
    const double ibar = profile.signal_mean_w;
    double s = 0.0;
    for (int j = 0; j < channel::kNumInterferers; ++j) {
        const double ij = profile.mean_interference_w[j];
        const double eps = (ibar - ij) / ij;
        double term;
        if (std::abs(eps) < 1e-4) {
            // (1+eps)/eps * log1p(eps) around eps = 0
            term = 1.0 + eps * (0.5 + eps * (-1.0 / 6.0 + eps / 12.0));
        } else {
            term = (1.0 + eps) / eps * std::log1p(eps);
        }
        s += profile.coefficients[j] * term;
    }
    return s;
}

namespace {

// Characteristic SINR where the survival function rolls off: the signal mean
// against whichever of noise or the strongest interferer dominates.
double sinr_scale(const InterferenceProfile& p, double noise_w) {
    return std::max(p.signal_mean_w / (noise_w + p.max_mean()), 1e-12);
}

}  // namespace

double mean_rate_at(const InterferenceProfile& profile, double noise_w,
                    const numerics::QuadSpec& quad) {
    const double ibar = profile.signal_mean_w;
    auto integrand = [&](double g) {
        return std::log1p(g) * std::exp(-g * noise_w / ibar) * mixture_term(profile, noise_w, g);
    };
    return numerics::integrate_semiinfinite_scaled(integrand, 0.0,
                                                   sinr_scale(profile, noise_w), quad);
}

double mean_rate_at_survival(const InterferenceProfile& profile, double noise_w,
                             const numerics::QuadSpec& quad) {
    const double ibar = profile.signal_mean_w;
    auto integrand = [&](double g) {
        double prod = 1.0 + g;
        for (double ij : profile.mean_interference_w) prod *= 1.0 + g * ij / ibar;
        return std::exp(-g * noise_w / ibar) / prod;
    };
    return numerics::integrate_semiinfinite_scaled(integrand, 0.0,
                                                   sinr_scale(profile, noise_w), quad);
}

}  // namespace cellrate::multicell
