#include "cellrate/multicell/interference.hpp"

#include <cmath>

#include "cellrate/errors.hpp"
#include "cellrate/multicell/hypoexp.hpp"
#include "cellrate/numerics/quadrature.hpp"

namespace cellrate::multicell {

double InterferenceProfile::max_mean() const {
    double m = 0.0;
    for (double v : mean_interference_w) m = std::max(m, v);
    return m;
}

double InterferenceProfile::total_mean() const {
    double m = 0.0;
    for (double v : mean_interference_w) m += v;
    return m;
}

namespace {

InterferenceProfile profile_at(const channel::CellScenario& scenario,
                               const channel::UserLocation& loc) {
    InterferenceProfile p;
    p.location = loc;
    const double d = loc.distance();
    p.signal_mean_w = scenario.serving.composite() * std::pow(d, -scenario.serving.exponent);
    for (int j = 0; j < channel::kNumInterferers; ++j) {
        const channel::Interferer& it = scenario.interferers[j];
        const double dj = std::hypot(loc.u_m - it.x_m, loc.v_m - it.y_m);
        p.mean_interference_w[j] = it.pathloss.composite() * std::pow(dj, -it.pathloss.exponent);
    }
    const std::vector<double> c = hypoexp_coefficients(
        std::vector<double>(p.mean_interference_w.begin(), p.mean_interference_w.end()));
    std::copy(c.begin(), c.end(), p.coefficients.begin());
    return p;
}

}  // namespace

InterferenceProfile make_interference_profile(const channel::CellScenario& scenario,
                                              channel::UserLocation loc) {
    const double d = loc.distance();
    if (d < scenario.user_min_distance_m || d > scenario.radius_m)
        throw Error("make_interference_profile: location outside [d0, rho]");

    double angle = 1e-6;
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            return profile_at(scenario, loc);
        } catch (const NearDegenerateMeansError&) {
            loc = loc.rotated(angle);
            angle *= 10.0;
        }
    }
    throw NearDegenerateMeansError(
        "make_interference_profile: interference means degenerate even after perturbation");
}

double interference_mgf(const InterferenceProfile& profile, double s) {
    if (s >= 1.0 / profile.max_mean())
        throw PoleCrossingError("interference_mgf: s at or beyond the smallest pole");
    double m = 1.0;
    for (double w : profile.mean_interference_w) m /= (1.0 - s * w);
    return m;
}

double interference_mgf(const InterferenceProfile& profile, double s,
                        const channel::FadingModel& fading,
                        const numerics::QuadSpec& quad) {
    if (s >= 1.0 / (profile.max_mean() * fading.mean()))
        throw PoleCrossingError("interference_mgf: s at or beyond the convergence bound");
    double m = 1.0;
    for (double w : profile.mean_interference_w) {
        m *= numerics::integrate_semiinfinite(
            [&fading, s, w](double a) {
                const double p = fading.pdf(a);
                if (p == 0.0) return 0.0;  // before exp() can overflow
                return std::exp(s * w * a) * p;
            },
            0.0, quad);
    }
    return m;
}

double interference_pdf(const InterferenceProfile& profile, double eta) {
    return hypoexp_pdf(profile.mean_interference_w, profile.coefficients, eta);
}

namespace {

// Composite Simpson over the first `panels` grid intervals of y (uniform h).
// Odd panel counts close with a 3/8 segment.
double simpson_prefix(const std::vector<double>& y, int panels, double h) {
    if (panels <= 0) return 0.0;
    if (panels == 1) return 0.5 * h * (y[0] + y[1]);
    double s = 0.0;
    int even_part = panels;
    if (panels % 2 == 1) {
        if (panels == 3) {
            return 3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]);
        }
        even_part = panels - 3;
    }
    double acc = y[0] + y[even_part];
    for (int k = 1; k < even_part; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * y[k];
    s = acc * h / 3.0;
    if (panels % 2 == 1) {
        const int b = even_part;
        s += 3.0 * h / 8.0 * (y[b] + 3.0 * y[b + 1] + 3.0 * y[b + 2] + y[b + 3]);
    }
    return s;
}

}  // namespace

numerics::TabulatedPdf convolved_interference_pdf(const InterferenceProfile& profile,
                                                  const channel::FadingModel& fading,
                                                  double upper_w, int points) {
    if (points < 5) throw Error("convolved_interference_pdf: need >= 5 grid points");
    const std::vector<double> grid = numerics::linspace(0.0, upper_w, points);
    const double h = grid[1] - grid[0];

    auto component_pdf = [&fading](double w, double x) { return fading.pdf(x / w) / w; };

    // running density, seeded with the first interferer
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = component_pdf(profile.mean_interference_w[0], grid[i]);

    std::vector<double> fn(points), y(points), next(points);
    for (int j = 1; j < channel::kNumInterferers; ++j) {
        for (int i = 0; i < points; ++i)
            fn[i] = component_pdf(profile.mean_interference_w[j], grid[i]);
        for (int i = 0; i < points; ++i) {
            for (int k = 0; k <= i; ++k) y[k] = g[k] * fn[i - k];
            next[i] = simpson_prefix(y, i, h);
        }
        g.swap(next);
    }
    for (double& v : g) v = std::max(v, 0.0);
    return numerics::TabulatedPdf(grid, std::move(g));
}

}  // namespace cellrate::multicell
