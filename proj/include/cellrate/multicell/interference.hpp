#pragma once

#include <array>
#include <vector>

#include "cellrate/channel/fading.hpp"
#include "cellrate/channel/scenario.hpp"
#include "cellrate/numerics/quadrature.hpp"
#include "cellrate/numerics/tabulated_pdf.hpp"

namespace cellrate::multicell {

// Per-location interference fingerprint: mean received power from each of
// the six first-tier base stations, the serving signal mean, and the
// partial-fraction coefficients of the total-interference density under
// exponential (Rayleigh) per-link fading.
struct InterferenceProfile {
    channel::UserLocation location;
    std::array<double, channel::kNumInterferers> mean_interference_w{};
    double signal_mean_w = 0.0;
    std::array<double, channel::kNumInterferers> coefficients{};

    double max_mean() const;
    double total_mean() const;  // sum of the six interference means
};

// Builds the profile at `loc`. Locations on a symmetry axis of the
// interferer ring give pairwise-equal means; such locations are rotated
// about the cell center by 1e-6 rad (escalating tenfold on repeat) until
// the means separate. A radial perturbation would preserve the symmetry,
// hence the rotation.
InterferenceProfile make_interference_profile(const channel::CellScenario& scenario,
                                              channel::UserLocation loc);

// Moment generating function of the total interference at s (1/watts).
// Product of the per-interferer exponential MGFs; pole at 1/max_mean.
double interference_mgf(const InterferenceProfile& profile, double s);

// Generic-fading MGF: product of per-interferer quadratures E[e^{s w_j A}].
double interference_mgf(const InterferenceProfile& profile, double s,
                        const channel::FadingModel& fading,
                        const numerics::QuadSpec& quad = {});

// Total-interference density at eta (Rayleigh closed form).
double interference_pdf(const InterferenceProfile& profile, double eta);

// Total-interference density by direct 6-fold numerical convolution of the
// per-interferer densities on a uniform grid (composite Simpson at every
// grid point). The generic-fading route, and an oracle for the closed form.
numerics::TabulatedPdf convolved_interference_pdf(const InterferenceProfile& profile,
                                                  const channel::FadingModel& fading,
                                                  double upper_w, int points);

}  // namespace cellrate::multicell
