#include "cellrate/numerics/tabulated_pdf.hpp"

#include <algorithm>
#include <cmath>

#include "cellrate/errors.hpp"
#include "cellrate/numerics/quadrature.hpp"

namespace cellrate::numerics {

namespace {

// Parabola through (x0,f0),(x1,f1),(x2,f2) in Newton form.
struct Parabola {
    double x0, x1;
    double c0, c1, c2;  // f0, f[x0,x1], f[x0,x1,x2]

    double eval(double x) const {
        return c0 + (x - x0) * (c1 + c2 * (x - x1));
    }
    // integral over [a, b]
    double integral(double a, double b) const {
        auto prim = [this](double x) {
            const double u = x - x0;
            const double h1 = x1 - x0;
            return c0 * u + 0.5 * c1 * u * u + c2 * (u * u * u / 3.0 - 0.5 * h1 * u * u);
        };
        return prim(b) - prim(a);
    }
    // integral of x * p(x) over [a, b]
    double moment(double a, double b) const {
        auto prim = [this](double x) {
            const double u = x - x0;
            const double h1 = x1 - x0;
            const double u2 = u * u, u3 = u2 * u, u4 = u2 * u2;
            const double ip = c0 * u + 0.5 * c1 * u2 + c2 * (u3 / 3.0 - 0.5 * h1 * u2);
            const double iup = 0.5 * c0 * u2 + c1 * u3 / 3.0 + c2 * (0.25 * u4 - h1 * u3 / 3.0);
            return x0 * ip + iup;
        };
        return prim(b) - prim(a);
    }
};

}  // namespace

TabulatedPdf::TabulatedPdf(std::vector<double> grid, std::vector<double> values,
                           bool declare_normalized)
    : grid_(std::move(grid)), values_(std::move(values)), normalized_(declare_normalized) {
    if (grid_.size() < 3 || grid_.size() != values_.size())
        throw Error("TabulatedPdf: need >= 3 grid points with matching values");
    for (size_t i = 0; i + 1 < grid_.size(); ++i)
        if (!(grid_[i] < grid_[i + 1]))
            throw Error("TabulatedPdf: grid must be strictly increasing");
    for (double v : values_)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error("TabulatedPdf: values must be finite and nonnegative");

    cum_.assign(grid_.size(), 0.0);
    for (size_t i = 0; i + 1 < grid_.size(); ++i) {
        Parabola p;
        const size_t a = (i % 2 == 0) ? (i + 2 < grid_.size() ? i : i - 1) : i - 1;
        p = {grid_[a], grid_[a + 1],
             values_[a],
             (values_[a + 1] - values_[a]) / (grid_[a + 1] - grid_[a]),
             0.0};
        const double s01 = p.c1;
        const double s12 = (values_[a + 2] - values_[a + 1]) / (grid_[a + 2] - grid_[a + 1]);
        p.c2 = (s12 - s01) / (grid_[a + 2] - grid_[a]);
        const double inc = p.integral(grid_[i], grid_[i + 1]);
        cum_[i + 1] = cum_[i] + std::max(inc, 0.0);
    }
    total_mass_ = cum_.back();
    if (declare_normalized && std::abs(total_mass_ - 1.0) > kMassTol)
        throw Error("TabulatedPdf: declared normalized but mass deviates from 1");
}

TabulatedPdf TabulatedPdf::tabulate(const std::function<double(double)>& f,
                                    std::vector<double> grid) {
    std::vector<double> values(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
    return TabulatedPdf(std::move(grid), std::move(values));
}

TabulatedPdf TabulatedPdf::normalized() const {
    if (!(total_mass_ > 0.0)) throw Error("TabulatedPdf: cannot normalize zero mass");
    std::vector<double> scaled(values_);
    for (double& v : scaled) v /= total_mass_;
    return TabulatedPdf(grid_, std::move(scaled), true);
}

namespace {

// Index of the interval containing x, and the anchor of its parabola.
struct Seg {
    size_t interval, anchor;
};

Seg locate(const std::vector<double>& grid, double x) {
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    size_t i = (it == grid.begin()) ? 0 : static_cast<size_t>(it - grid.begin()) - 1;
    i = std::min(i, grid.size() - 2);
    const size_t a = (i % 2 == 0) ? (i + 2 < grid.size() ? i : i - 1) : i - 1;
    return {i, a};
}

Parabola parabola_at(const std::vector<double>& grid, const std::vector<double>& values,
                     size_t a) {
    Parabola p{grid[a], grid[a + 1], values[a],
               (values[a + 1] - values[a]) / (grid[a + 1] - grid[a]), 0.0};
    const double s12 = (values[a + 2] - values[a + 1]) / (grid[a + 2] - grid[a + 1]);
    p.c2 = (s12 - p.c1) / (grid[a + 2] - grid[a]);
    return p;
}

}  // namespace

double TabulatedPdf::value_at(double x) const {
    if (x < grid_.front() || x > grid_.back()) return 0.0;
    const Seg s = locate(grid_, x);
    return parabola_at(grid_, values_, s.anchor).eval(x);
}

double TabulatedPdf::cdf_at(double x) const {
    if (x <= grid_.front()) return 0.0;
    if (x >= grid_.back()) return total_mass_;
    const Seg s = locate(grid_, x);
    const double inc = parabola_at(grid_, values_, s.anchor).integral(grid_[s.interval], x);
    return std::clamp(cum_[s.interval] + inc, 0.0, total_mass_);
}

double TabulatedPdf::first_moment() const {
    double m = 0.0;
    for (size_t i = 0; i + 1 < grid_.size(); ++i) {
        const size_t a = (i % 2 == 0) ? (i + 2 < grid_.size() ? i : i - 1) : i - 1;
        m += parabola_at(grid_, values_, a).moment(grid_[i], grid_[i + 1]);
    }
    return m;
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2 || !(lo < hi)) throw Error("linspace: bad arguments");
    std::vector<double> g(points);
    const double h = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[i] = lo + h * i;
    g.back() = hi;
    return g;
}

std::vector<double> logspace(double lo, double hi, int points) {
    if (!(lo > 0.0)) throw Error("logspace: lo must be positive");
    std::vector<double> g = linspace(std::log(lo), std::log(hi), points);
    for (double& x : g) x = std::exp(x);
    g.front() = lo;
    g.back() = hi;
    return g;
}

double ks_distance(const TabulatedPdf& analytic, std::span<const double> sorted_samples) {
    if (sorted_samples.empty()) throw Error("ks_distance: no samples");
    if (std::abs(analytic.total_mass() - 1.0) > 1e-3)
        throw Error("ks_distance: analytic pdf is not normalized");
    if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end()))
        throw Error("ks_distance: samples must be sorted");

    const double n = static_cast<double>(sorted_samples.size());
    double d = 0.0;
    for (size_t i = 0; i < sorted_samples.size(); ++i) {
        const double F = std::min(analytic.cdf_at(sorted_samples[i]), 1.0);
        d = std::max(d, std::max(F - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - F));
    }
    return d;
}

std::vector<double> histogram_density(std::span<const double> samples,
                                      std::span<const double> grid) {
    if (grid.size() < 2) throw Error("histogram_density: need >= 2 grid points");
    std::vector<double> edges(grid.size() + 1);
    edges.front() = grid.front();
    edges.back() = grid.back();
    for (size_t i = 1; i < grid.size(); ++i) edges[i] = 0.5 * (grid[i - 1] + grid[i]);

    std::vector<size_t> counts(grid.size(), 0);
    for (double x : samples) {
        if (x < edges.front() || x > edges.back()) continue;
        auto it = std::upper_bound(edges.begin(), edges.end(), x);
        size_t b = (it == edges.begin()) ? 0 : static_cast<size_t>(it - edges.begin()) - 1;
        b = std::min(b, counts.size() - 1);
        ++counts[b];
    }
    std::vector<double> density(grid.size());
    const double n = static_cast<double>(samples.size());
    for (size_t i = 0; i < counts.size(); ++i) {
        const double w = edges[i + 1] - edges[i];
        density[i] = (w > 0.0) ? static_cast<double>(counts[i]) / (n * w) : 0.0;
    }
    return density;
}

}  // namespace cellrate::numerics
