#include "linalg.hpp"

#include "error.hpp"

namespace pca {

void RatMatrix::append_row(const std::vector<Rat>& row) {
  if (row.size() != cols_) {
    fail(Errc::invalid_argument, "row width mismatch");
  }
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

namespace {

// In-place reduction to row echelon form; returns pivot columns.
std::vector<std::size_t> echelonize(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = col; j < m.cols(); ++j) {
        swap(m.at(pivot, j), m.at(row, j));
      }
    }
    Rat inv = 1 / m.at(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rat factor = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        m.at(i, j) -= factor * m.at(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rat_rank(RatMatrix m) { return echelonize(m).size(); }

std::optional<AffineSolution> rat_solve(const RatMatrix& a,
                                        const std::vector<Rat>& b) {
  if (b.size() != a.rows()) {
    fail(Errc::invalid_argument, "right-hand side length mismatch");
  }
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = echelonize(aug);
  // Inconsistent iff a pivot lands in the augmented column.
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;

  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t col : pivots) is_pivot[col] = true;

  AffineSolution sol;
  sol.particular.assign(a.cols(), Rat(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    sol.particular[pivots[k]] = aug.at(k, a.cols());
  }
  for (std::size_t col = 0; col < a.cols(); ++col) {
    if (is_pivot[col]) continue;
    std::vector<Rat> basis(a.cols(), Rat(0));
    basis[col] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      basis[pivots[k]] = -aug.at(k, col);
    }
    sol.kernel_basis.push_back(std::move(basis));
  }
  return sol;
}

std::vector<std::vector<Rat>> left_fixed_vectors(const RatMatrix& m) {
  if (m.rows() != m.cols()) {
    fail(Errc::invalid_argument, "square matrix required");
  }
  std::size_t n = m.rows();
  // v m = v  <=>  (m^T - I) v^T = 0.
  RatMatrix sys(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sys.at(i, j) = m.at(j, i);
      if (i == j) sys.at(i, j) -= 1;
    }
  }
  auto sol = rat_solve(sys, std::vector<Rat>(n, Rat(0)));
  return sol ? sol->kernel_basis : std::vector<std::vector<Rat>>{};
}

}  // namespace pca
