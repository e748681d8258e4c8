#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "types.hpp"

namespace pca {

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  unsigned long long samples = 0;
};

// Goodness of fit of observed category counts against exact expected
// probabilities; dof = categories - 1.  Every expected count must be
// >= 5 (InsufficientSamples otherwise).
ChiSquareResult chi_square_gof(const std::vector<unsigned long long>& counts,
                               const std::vector<Rat>& probs);

// Independence test on an n x n contingency table (row-major counts);
// expected cells from the product of the margins, dof = (n-1)^2.
// Every expected count must be >= 5 (InsufficientSamples otherwise).
ChiSquareResult chi_square_independence(
    std::size_t n, const std::vector<unsigned long long>& table);

// Upper-tail p-value of the chi-square distribution.
double chi_square_p_value(double statistic, std::size_t dof);

}  // namespace pca
