#pragma once

#include <span>

#include "cellrate/channel/fading.hpp"
#include "cellrate/multicell/interference.hpp"
#include "cellrate/numerics/quadrature.hpp"
#include "cellrate/numerics/tabulated_pdf.hpp"

namespace cellrate::multicell {

// SINR density at one location by quadrature over the interference density:
// works for any serving fading. Interference fading is exponential
// (hypoexponential total) unless an explicit interference pdf is supplied.
numerics::TabulatedPdf sinr_pdf_at(const InterferenceProfile& profile,
                                   const channel::FadingModel& fading, double noise_w,
                                   std::span<const double> sinr_grid,
                                   const numerics::QuadSpec& quad = {},
                                   const numerics::TabulatedPdf* interference_density = nullptr);

// Rate density at one location, generic quadrature path (e^r jacobian over
// the SINR density).
numerics::TabulatedPdf rate_pdf_at(const InterferenceProfile& profile,
                                   const channel::FadingModel& fading, double noise_w,
                                   std::span<const double> rate_grid,
                                   const numerics::QuadSpec& quad = {},
                                   const numerics::TabulatedPdf* interference_density = nullptr);

// Closed-form rate density at one location for unit-mean Rayleigh fading on
// every link.
double rate_pdf_at_rayleigh(const InterferenceProfile& profile, double noise_w, double rate);

// Closed-form average rate at one location when noise is negligible.
double avg_rate_interference_limited(const InterferenceProfile& profile);

// First moment of the closed-form rate density (quadrature over rate).
double mean_rate_at(const InterferenceProfile& profile, double noise_w,
                    const numerics::QuadSpec& quad = {});

// Same mean through the survival function: integral of
// e^{-g n / Ibar} / ((1+g) prod_j (1 + g Ij/Ibar)) over g. Identical value,
// free of partial-fraction cancellation; used by the cell-average sweeps.
double mean_rate_at_survival(const InterferenceProfile& profile, double noise_w,
                             const numerics::QuadSpec& quad = {});

}  // namespace cellrate::multicell
