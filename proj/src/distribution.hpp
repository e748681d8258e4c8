#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rational.hpp"
#include "types.hpp"

namespace pca {

// Finite-support distribution over fixed-length symbol tuples, with exact
// rational weights.  Keys are kept in lexicographic order by std::map.
struct FiniteDistribution {
  std::size_t n = 0;       // alphabet size
  std::size_t length = 0;  // tuple length
  std::map<std::vector<std::uint8_t>, Rat> weights;

  Rat total() const {
    Rat sum = 0;
    for (const auto& [key, w] : weights) sum += w;
    return sum;
  }

  void add(const std::vector<std::uint8_t>& key, const Rat& w) {
    if (w == 0) return;
    weights[key] += w;
  }
};

// Product measure p^length as a FiniteDistribution (small lengths only).
FiniteDistribution product_distribution(const ProbVector& p,
                                        std::size_t length);

}  // namespace pca
