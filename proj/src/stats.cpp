#include "stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include "error.hpp"

namespace pca {

double chi_square_p_value(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareResult chi_square_gof(const std::vector<unsigned long long>& counts,
                               const std::vector<Rat>& probs) {
  if (counts.size() != probs.size() || counts.empty())
    fail(Errc::dimension_mismatch,
         "DimensionMismatch: counts and probabilities differ in length");
  unsigned long long total = 0;
  for (auto c : counts) total += c;
  double statistic = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double expected =
        static_cast<double>(total) * rat_double(probs[k]);
    if (expected < 5.0)
      fail(Errc::insufficient_samples,
           "InsufficientSamples: expected count " + std::to_string(expected) +
               " in category " + std::to_string(k) + " is below 5");
    const double diff = static_cast<double>(counts[k]) - expected;
    statistic += diff * diff / expected;
  }
  const std::size_t dof = counts.size() - 1;
  return {statistic, dof, chi_square_p_value(statistic, dof), total};
}

ChiSquareResult chi_square_independence(
    std::size_t n, const std::vector<unsigned long long>& table) {
  if (table.size() != n * n)
    fail(Errc::dimension_mismatch,
         "DimensionMismatch: contingency table is not n x n");
  std::vector<unsigned long long> row(n, 0), col(n, 0);
  unsigned long long total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      row[i] += table[i * n + j];
      col[j] += table[i * n + j];
      total += table[i * n + j];
    }
  if (total == 0)
    fail(Errc::insufficient_samples,
         "InsufficientSamples: empty contingency table");
  double statistic = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double expected = static_cast<double>(row[i]) *
                              static_cast<double>(col[j]) /
                              static_cast<double>(total);
      if (expected < 5.0)
        fail(Errc::insufficient_samples,
             "InsufficientSamples: expected pair count " +
                 std::to_string(expected) + " at (" + std::to_string(i) +
                 "," + std::to_string(j) + ") is below 5");
      const double diff = static_cast<double>(table[i * n + j]) - expected;
      statistic += diff * diff / expected;
    }
  const std::size_t dof = (n - 1) * (n - 1);
  return {statistic, dof, chi_square_p_value(statistic, dof), total};
}

}  // namespace pca
