#include "types.hpp"

#include <sstream>

#include "error.hpp"

namespace pca {

namespace {

void check_entry_range(const Rat& x, const std::string& where) {
  if (x < 0) {
    fail(Errc::negative_entry, "NegativeEntry at " + where + ": " + rat_str(x));
  }
  if (x > 1) {
    fail(Errc::row_not_stochastic,
         "entry exceeds 1 at " + where + ": " + rat_str(x));
  }
}

}  // namespace

ProbVector::ProbVector(std::vector<Rat> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    fail(Errc::invalid_argument, "probability vector must be nonempty");
  }
  Rat sum = 0;
  positive_ = true;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 0) {
      fail(Errc::negative_entry,
           "NegativeEntry at index " + std::to_string(i) + ": " +
               rat_str(entries_[i]));
    }
    if (entries_[i] == 0) positive_ = false;
    sum += entries_[i];
  }
  if (sum != 1) {
    fail(Errc::not_normalized, "NotNormalized: entries sum to " + rat_str(sum));
  }
}

Rat ProbVector::min_entry() const {
  Rat m = entries_[0];
  for (const Rat& x : entries_) {
    if (x < m) m = x;
  }
  return m;
}

std::string ProbVector::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out << ',';
    out << rat_str(entries_[i]);
  }
  return out.str();
}

ProbVector ProbVector::uniform(std::size_t n) {
  if (n == 0) fail(Errc::invalid_argument, "alphabet size must be positive");
  return ProbVector(std::vector<Rat>(n, Rat(1, static_cast<long>(n))));
}

StochasticMatrix::StochasticMatrix(std::size_t n, std::vector<Rat> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ == 0) fail(Errc::invalid_argument, "matrix size must be positive");
  if (entries_.size() != n_ * n_) {
    fail(Errc::invalid_argument,
         "matrix needs " + std::to_string(n_ * n_) + " entries, got " +
             std::to_string(entries_.size()));
  }
  positive_ = true;
  for (Symbol i = 0; i < n_; ++i) {
    Rat sum = 0;
    for (Symbol j = 0; j < n_; ++j) {
      const Rat& x = entries_[i * n_ + j];
      check_entry_range(x, "(" + std::to_string(i) + "," + std::to_string(j) +
                               ")");
      if (x == 0) positive_ = false;
      sum += x;
    }
    if (sum != 1) {
      fail(Errc::row_not_stochastic, "RowNotStochastic: row " +
                                         std::to_string(i) + " sums to " +
                                         rat_str(sum));
    }
  }
}

StochasticMatrix StochasticMatrix::multiply(const StochasticMatrix& other) const {
  if (n_ != other.n_) {
    fail(Errc::alphabet_mismatch, "AlphabetMismatch: " + std::to_string(n_) +
                                      " vs " + std::to_string(other.n_));
  }
  std::vector<Rat> prod(n_ * n_, Rat(0));
  for (Symbol i = 0; i < n_; ++i) {
    for (Symbol k = 0; k < n_; ++k) {
      const Rat& left = (*this)(i, k);
      if (left == 0) continue;
      for (Symbol j = 0; j < n_; ++j) {
        prod[i * n_ + j] += left * other(k, j);
      }
    }
  }
  return StochasticMatrix(n_, std::move(prod));
}

TransitionKernel::TransitionKernel(std::size_t n, std::vector<Rat> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ < 2) fail(Errc::invalid_argument, "alphabet needs at least 2 symbols");
  std::size_t expect = n_ * n_ * n_ * n_;
  if (entries_.size() != expect) {
    fail(Errc::invalid_argument, "kernel needs " + std::to_string(expect) +
                                     " entries, got " +
                                     std::to_string(entries_.size()));
  }
  positive_rates_ = true;
  for (Symbol a = 0; a < n_; ++a) {
    for (Symbol b = 0; b < n_; ++b) {
      for (Symbol c = 0; c < n_; ++c) {
        Rat sum = 0;
        for (Symbol d = 0; d < n_; ++d) {
          const Rat& x = entries_[((a * n_ + b) * n_ + c) * n_ + d];
          if (x < 0) {
            fail(Errc::negative_entry,
                 "NegativeEntry at (" + std::to_string(a) + "," +
                     std::to_string(b) + "," + std::to_string(c) + ";" +
                     std::to_string(d) + "): " + rat_str(x));
          }
          if (x > 1) {
            fail(Errc::row_not_stochastic,
                 "entry exceeds 1 at (" + std::to_string(a) + "," +
                     std::to_string(b) + "," + std::to_string(c) + ";" +
                     std::to_string(d) + "): " + rat_str(x));
          }
          if (x == 0) positive_rates_ = false;
          sum += x;
        }
        if (sum != 1) {
          fail(Errc::row_not_stochastic,
               "RowNotStochastic(" + std::to_string(a) + "," +
                   std::to_string(b) + "," + std::to_string(c) +
                   "): row sums to " + rat_str(sum));
        }
      }
    }
  }
}

Rat TransitionKernel::min_entry() const {
  Rat m = entries_[0];
  for (const Rat& x : entries_) {
    if (x < m) m = x;
  }
  return m;
}

namespace {

// Images of (a,b,c,d) under each symmetry, as source-position indices.
constexpr std::array<std::array<int, 4>, 8> kSigma = {{
    {0, 1, 2, 3},  // id : (a,b,c,d)
    {3, 0, 1, 2},  // r  : (d,a,b,c)
    {2, 3, 0, 1},  // r2 : (c,d,a,b)
    {1, 2, 3, 0},  // r3 : (b,c,d,a)
    {2, 1, 0, 3},  // v  : (c,b,a,d)
    {0, 3, 2, 1},  // h  : (a,d,c,b)
    {3, 2, 1, 0},  // rv : (d,c,b,a)
    {1, 0, 3, 2},  // r3v: (b,a,d,c)
}};

constexpr const char* kNames[8] = {"id", "r", "r2", "r3", "v", "h", "rv", "r3v"};

std::array<int, 4> sigma_compose(const std::array<int, 4>& f,
                                 const std::array<int, 4>& g) {
  // (f o g)(x) = f(g(x)); with images-as-source-indices this is f indexed
  // through g.
  return {g[f[0]], g[f[1]], g[f[2]], g[f[3]]};
}

}  // namespace

const std::array<int, 4>& dihedral_sigma(Dihedral g) {
  return kSigma[static_cast<std::size_t>(g)];
}

Dihedral dihedral_compose(Dihedral g, Dihedral h) {
  std::array<int, 4> combined =
      sigma_compose(dihedral_sigma(g), dihedral_sigma(h));
  for (std::size_t k = 0; k < kSigma.size(); ++k) {
    if (kSigma[k] == combined) return static_cast<Dihedral>(k);
  }
  fail(Errc::invalid_argument, "tuple action is not closed");  // unreachable
}

Dihedral dihedral_inverse(Dihedral g) {
  for (Dihedral h : kDihedralAll) {
    if (dihedral_compose(g, h) == Dihedral::id) return h;
  }
  fail(Errc::invalid_argument, "group element without inverse");  // unreachable
}

std::string dihedral_name(Dihedral g) {
  return kNames[static_cast<std::size_t>(g)];
}

std::optional<Dihedral> dihedral_parse(std::string_view name) {
  for (std::size_t k = 0; k < 8; ++k) {
    if (name == kNames[k]) return static_cast<Dihedral>(k);
  }
  return std::nullopt;
}

std::array<Symbol, 4> dihedral_apply(Dihedral g,
                                     const std::array<Symbol, 4>& abcd) {
  const auto& sigma = dihedral_sigma(g);
  return {abcd[sigma[0]], abcd[sigma[1]], abcd[sigma[2]], abcd[sigma[3]]};
}

}  // namespace pca
