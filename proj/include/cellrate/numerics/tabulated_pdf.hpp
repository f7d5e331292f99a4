#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cellrate::numerics {

// A density sampled on a strictly increasing grid. Off-grid evaluation and
// cumulative integration both use the same piecewise-quadratic (composite
// Simpson) model, so value_at and cdf_at are mutually consistent.
class TabulatedPdf {
  public:
    TabulatedPdf(std::vector<double> grid, std::vector<double> values,
                 bool declare_normalized = false);

    static TabulatedPdf tabulate(const std::function<double(double)>& f,
                                 std::vector<double> grid);

    // Same table scaled so the cumulative integral over the grid is 1.
    TabulatedPdf normalized() const;

    double value_at(double x) const;  // 0 outside the grid
    double cdf_at(double x) const;    // clamped to [0, total_mass]
    double total_mass() const { return total_mass_; }
    bool is_normalized() const { return normalized_; }
    double first_moment() const;  // integral of x * pdf over the grid

    std::span<const double> grid() const { return grid_; }
    std::span<const double> values() const { return values_; }

  private:
    std::vector<double> grid_;
    std::vector<double> values_;
    std::vector<double> cum_;  // cumulative integral at each grid point
    double total_mass_ = 0.0;
    bool normalized_ = false;
};

// Evenly spaced grid of `points` values over [lo, hi].
std::vector<double> linspace(double lo, double hi, int points);

// Logarithmically spaced grid (lo, hi > 0).
std::vector<double> logspace(double lo, double hi, int points);

// Sup distance between the empirical CDF of `sorted_samples` and the CDF of
// a normalized analytic pdf.
double ks_distance(const TabulatedPdf& analytic, std::span<const double> sorted_samples);

// Empirical density with bins centered on the grid points (half bins at the
// ends). Samples outside [grid.front(), grid.back()] are dropped, so the
// weighted bin masses sum to the in-range fraction.
std::vector<double> histogram_density(std::span<const double> samples,
                                      std::span<const double> grid);

}  // namespace cellrate::numerics
