#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace pca {

using Symbol = std::size_t;

// Probability vector over the alphabet {0, ..., n-1}.  Entries are exact
// rationals; construction validates nonnegativity and normalization.
class ProbVector {
 public:
  // Throws Error{negative_entry} / Error{not_normalized}.
  explicit ProbVector(std::vector<Rat> entries);

  std::size_t n() const { return entries_.size(); }
  const Rat& operator[](Symbol i) const { return entries_[i]; }
  const std::vector<Rat>& entries() const { return entries_; }
  // True iff every entry is > 0.
  bool positive() const { return positive_; }
  Rat min_entry() const;
  std::string str() const;  // "1/2,1/3,1/6"

  bool operator==(const ProbVector& other) const {
    return entries_ == other.entries_;
  }

  static ProbVector uniform(std::size_t n);

 private:
  std::vector<Rat> entries_;
  bool positive_;
};

// Row-stochastic n x n matrix with exact rational entries.
class StochasticMatrix {
 public:
  // Entries in row-major order; throws Error{negative_entry} /
  // Error{row_not_stochastic}.
  StochasticMatrix(std::size_t n, std::vector<Rat> entries);

  std::size_t n() const { return n_; }
  const Rat& operator()(Symbol i, Symbol j) const {
    return entries_[i * n_ + j];
  }
  const std::vector<Rat>& entries() const { return entries_; }
  bool positive() const { return positive_; }

  // Matrix product (both operands row-stochastic, result re-validated).
  StochasticMatrix multiply(const StochasticMatrix& other) const;

  bool operator==(const StochasticMatrix& other) const {
    return n_ == other.n_ && entries_ == other.entries_;
  }

 private:
  std::size_t n_;
  std::vector<Rat> entries_;
  bool positive_;
};

// Transition kernel T(a,b,c; d) of a two-row local update rule: `a` is the
// west neighbor (same row), `b` the south neighbor (previous row), `c` the
// east neighbor (same row) and `d` the produced symbol.  Stored row-major
// with d contiguous: index ((a*n + b)*n + c)*n + d.
class TransitionKernel {
 public:
  // Throws Error{negative_entry} with the offending (a,b,c,d) and
  // Error{row_not_stochastic} with the offending (a,b,c).
  TransitionKernel(std::size_t n, std::vector<Rat> entries);

  std::size_t n() const { return n_; }
  const Rat& operator()(Symbol a, Symbol b, Symbol c, Symbol d) const {
    return entries_[((a * n_ + b) * n_ + c) * n_ + d];
  }
  const std::vector<Rat>& entries() const { return entries_; }
  // True iff every entry is strictly positive.
  bool positive_rates() const { return positive_rates_; }
  Rat min_entry() const;

  bool operator==(const TransitionKernel& other) const {
    return n_ == other.n_ && entries_ == other.entries_;
  }

 private:
  std::size_t n_;
  std::vector<Rat> entries_;
  bool positive_rates_;
};

// Symmetries of the unit square acting on local transition tuples.
// `r` is the quarter turn, `h`/`v` the horizontal/vertical mirrors, and
// products are written left-to-right in application order: compose(g, h)
// applies h first, then g.
enum class Dihedral : std::uint8_t { id, r, r2, r3, v, h, rv, r3v };

inline constexpr std::array<Dihedral, 8> kDihedralAll = {
    Dihedral::id, Dihedral::r,  Dihedral::r2, Dihedral::r3,
    Dihedral::v,  Dihedral::h,  Dihedral::rv, Dihedral::r3v};

// Tuple action: sigma(g) maps (a,b,c,d) to its g-image; entry k of the
// returned array is the source position landing in slot k.
//   id -> (a,b,c,d)    r  -> (d,a,b,c)    r2 -> (c,d,a,b)   r3 -> (b,c,d,a)
//   v  -> (c,b,a,d)    h  -> (a,d,c,b)    rv -> (d,c,b,a)   r3v-> (b,a,d,c)
const std::array<int, 4>& dihedral_sigma(Dihedral g);

// Group operations, derived from the (faithful) tuple action so that
// sigma(compose(g, h)) == sigma(g) o sigma(h) by construction.
Dihedral dihedral_compose(Dihedral g, Dihedral h);
Dihedral dihedral_inverse(Dihedral g);

std::string dihedral_name(Dihedral g);                  // "r3v", ...
std::optional<Dihedral> dihedral_parse(std::string_view name);

// Applies the tuple action to a concrete tuple.
std::array<Symbol, 4> dihedral_apply(Dihedral g,
                                     const std::array<Symbol, 4>& abcd);

}  // namespace pca
