#pragma once

#include <functional>

namespace cellrate::numerics {

// Tolerances and budget for adaptive quadrature. Defaults leave two orders of
// headroom below the tightest tolerance any consumer asserts.
struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

constexpr double kMassTol = 1e-6;

// Adaptive quadrature of f over [lo, hi] with a 7/15-point embedded
// Gauss-Kronrod pair. Nodes are strictly interior, so integrable endpoint
// singularities are tolerated. Deterministic: identical inputs give
// bit-identical results. Throws NonConvergenceError when the subdivision
// budget runs out before err <= max(abs_tol, rel_tol*|result|).
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadSpec& spec = {});

// Quadrature over [lo, inf) via the substitution x = lo + t/(1-t), t in (0,1).
// Suited to exponential-tailed integrands.
double integrate_semiinfinite(const std::function<double(double)>& f, double lo,
                              const QuadSpec& spec = {});

// Same with the substitution stretched to x = lo + scale*t/(1-t): pass the
// integrand's characteristic decay length when it is far from 1 (physical
// scales here range from watts ~ 1e-14 to SNRs ~ 1e6).
double integrate_semiinfinite_scaled(const std::function<double(double)>& f, double lo,
                                     double scale, const QuadSpec& spec = {});

}  // namespace cellrate::numerics
