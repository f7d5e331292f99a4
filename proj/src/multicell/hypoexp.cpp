#include "cellrate/multicell/hypoexp.hpp"

#include <algorithm>
#include <cmath>

#include "cellrate/errors.hpp"

namespace cellrate::multicell {

std::vector<double> hypoexp_coefficients(std::span<const double> means) {
    if (means.empty()) throw Error("hypoexp_coefficients: no means");
    double largest = 0.0;
    for (double m : means) {
        if (!(m > 0.0)) throw Error("hypoexp_coefficients: means must be positive");
        largest = std::max(largest, m);
    }
    for (size_t i = 0; i < means.size(); ++i)
        for (size_t j = i + 1; j < means.size(); ++j)
            if (std::abs(means[i] - means[j]) <= 1e-9 * largest)
                throw NearDegenerateMeansError("hypoexp_coefficients: means nearly coincide");

    std::vector<double> c(means.size(), 1.0);
    for (size_t j = 0; j < means.size(); ++j)
        for (size_t l = 0; l < means.size(); ++l)
            if (l != j) c[j] *= means[j] / (means[j] - means[l]);
    return c;
}

double hypoexp_pdf(std::span<const double> means, std::span<const double> coefficients,
                   double x) {
    if (x < 0.0) return 0.0;
    double f = 0.0;
    for (size_t j = 0; j < means.size(); ++j)
        f += coefficients[j] / means[j] * std::exp(-x / means[j]);
    return f;
}

}  // namespace cellrate::multicell
