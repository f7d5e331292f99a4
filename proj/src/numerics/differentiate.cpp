#include "cellrate/numerics/differentiate.hpp"

#include <cmath>

#include "cellrate/errors.hpp"

namespace cellrate::numerics {

double differentiate(const std::function<double(double)>& F, double x, double scale,
                     double domain_lo) {
    if (!(scale > 0.0)) throw Error("differentiate: scale must be positive");
    double h = scale;
    if (x - h <= domain_lo) {
        if (!(x > domain_lo)) throw DegenerateStepError("differentiate: x at or below domain bound");
        h = 0.5 * (x - domain_lo);
    }

    // Richardson table over successive step halvings; stop when the
    // extrapolated correction stops improving.
    constexpr int kLevels = 10;
    double table[kLevels][kLevels];
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_err = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kLevels; ++i) {
        table[i][0] = (F(x + h) - F(x - h)) / (2.0 * h);
        double pow4 = 1.0;
        for (int j = 1; j <= i; ++j) {
            pow4 *= 4.0;
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (pow4 - 1.0);
        }
        if (i > 0) {
            const double err = std::abs(table[i][i] - table[i - 1][i - 1]);
            if (err <= best_err) {
                best_err = err;
                best = table[i][i];
            } else if (err > 4.0 * best_err) {
                break;  // round-off has taken over
            }
        }
        h *= 0.5;
    }
    return std::isnan(best) ? table[0][0] : best;
}

}  // namespace cellrate::numerics
