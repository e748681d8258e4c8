#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace pca {

// Dense rational matrix utilities used by invariant-vector extraction,
// dimension cross-checks and affine constraint solving.  Sizes stay small
// (at most a few hundred rows), so plain fraction-pivot elimination is
// adequate and keeps every result exact.
class RatMatrix {
 public:
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  void append_row(const std::vector<Rat>& row);

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> data_;
};

std::size_t rat_rank(RatMatrix m);

// Solution of A x = b described by one particular solution and a basis of
// the homogeneous solution space; empty optional when inconsistent.
struct AffineSolution {
  std::vector<Rat> particular;
  std::vector<std::vector<Rat>> kernel_basis;
};

std::optional<AffineSolution> rat_solve(const RatMatrix& a,
                                        const std::vector<Rat>& b);

// Basis of the left null space of (m - I), i.e. row vectors v with
// v m = v.  Used for invariant probability vectors of stochastic matrices.
std::vector<std::vector<Rat>> left_fixed_vectors(const RatMatrix& m);

}  // namespace pca
