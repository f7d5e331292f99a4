#include "cellrate/numerics/root_find.hpp"

#include <algorithm>
#include <cmath>

#include "cellrate/errors.hpp"

namespace cellrate::numerics {

double find_root(const std::function<double(double)>& g, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw Error("find_root: tol must be positive");
    double a = lo, b = hi;
    double fa = g(a), fb = g(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NoSignChangeError("find_root: g(lo) and g(hi) have the same sign");

    // Brent: keep b the best iterate, a the previous, c the contrapoint.
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < 200; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa; d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double m = 0.5 * (c - b);
        if (std::abs(fb) <= tol || std::abs(m) <= 0.5 * tol) return b;

        if (std::abs(e) >= 0.5 * tol && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation (secant when a == c).
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(0.5 * tol * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        } else {
            d = m; e = m;
        }
        a = b; fa = fb;
        b += (std::abs(d) > 0.25 * tol) ? d : std::copysign(0.25 * tol, m);
        fb = g(b);
    }
    return b;
}

}  // namespace cellrate::numerics
