#pragma once

#include <span>
#include <vector>

namespace cellrate::multicell {

// Partial-fraction coefficients C_j of the density of a sum of independent
// exponentials with distinct means: f(x) = sum_j (C_j / m_j) e^{-x/m_j}.
// Residue formula C_j = prod_{l != j} m_j / (m_j - m_l). The C_j sum to 1.
// Throws NearDegenerateMeansError when any pair of means is closer than
// 1e-9 relative to the largest mean.
std::vector<double> hypoexp_coefficients(std::span<const double> means);

double hypoexp_pdf(std::span<const double> means, std::span<const double> coefficients,
                   double x);

}  // namespace cellrate::multicell
