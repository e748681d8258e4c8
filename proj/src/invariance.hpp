#pragma once

#include <optional>
#include <string>

#include "distribution.hpp"
#include "types.hpp"

namespace pca {

// Algebraic conditions tying a kernel to a product or Markov measure.
// Numbering is stable API: Cond::hzpm is "Cond.1" in diagnostics, etc.
//   hzpm      : forall a,c,d  p(d)         = sum_b p(b) T(a,b,c;d)
//   r         : forall a,b,d  p(d)         = sum_c p(c) T(a,b,c;d)
//   rinv      : forall b,c,d  p(d)         = sum_a p(a) T(a,b,c;d)
//   hzmc      : forall a,c,d  F(a;d)B(d;c) = sum_b B(a;b)F(b;c) T(a,b,c;d)
//   hzmc_r    : forall a,b,d  F(a;d)       = sum_c F(b;c) T(a,b,c;d)
//   hzmc_rinv : forall b,c,d  (rho(d)/rho(c)) B(d;c)
//                             = sum_a (rho(a)/rho(b)) B(a;b) T(a,b,c;d)
//   eig_f     : forall a,b,c  F(b;c)       = sum_d F(a;d) T(d,a,b;c)
//   eig_b     : forall a,c,d  B(d;c)       = sum_b B(a;b) T(d,a,b;c)
enum class Cond : int {
  hzpm = 1,
  r = 2,
  rinv = 3,
  hzmc = 4,
  hzmc_r = 5,
  hzmc_rinv = 6,
  eig_f = 7,
  eig_b = 8,
};

std::string cond_name(Cond c);                       // "HZPM", "R", ...
std::optional<Cond> cond_parse(std::string_view s);  // accepts names above

// Lexicographically smallest violating tuple, with both sides.
struct Witness {
  std::string tuple;  // e.g. "a=0,c=1,d=0"
  Rat lhs, rhs;
};

struct CheckResult {
  bool holds = false;
  std::optional<Witness> witness;
};

// Product-measure conditions (hzpm / r / rinv).
CheckResult check_condition(const TransitionKernel& t, const ProbVector& p,
                            Cond cond);

// Finds a probability vector satisfying Cond.1, if any (exact).
std::optional<ProbVector> find_hzpm(const TransitionKernel& t);

// Pair of commuting stochastic matrices with their common invariant
// vector; parametrizes a horizontal Markov measure on two-row zigzags.
class HzmcSpec {
 public:
  // Validates FB == BF (CommutationViolation), extracts the unique
  // invariant probability vector (EigenvectorNotUnique when the fixed
  // space is not one-dimensional) and requires it strictly positive.
  HzmcSpec(StochasticMatrix f, StochasticMatrix b);

  const StochasticMatrix& f() const { return f_; }
  const StochasticMatrix& b() const { return b_; }
  const ProbVector& rho() const { return rho_; }
  std::size_t n() const { return f_.n(); }

 private:
  StochasticMatrix f_, b_;
  ProbVector rho_;
};

// Common invariant vector of two commuting stochastic matrices.
ProbVector commuting_invariant_vector(const StochasticMatrix& f,
                                      const StochasticMatrix& b);

// Markov-measure conditions (hzmc / hzmc_r / hzmc_rinv / eig_f / eig_b).
CheckResult check_hzmc_condition(const TransitionKernel& t,
                                 const HzmcSpec& spec, Cond cond);

// Exact probability of observing `values` along a time-monotone polyline:
// `ups[i]` tells whether step i of the polyline goes up (F-step) or down
// (B-step).  values.size() == ups.size() + 1.
Rat hzmc_zigzag_probability(const HzmcSpec& spec,
                            const std::vector<bool>& ups,
                            const std::vector<Symbol>& values);

// Markov-measure extraction from a kernel: per-symbol eigenvector
// candidates for F and B; succeeds iff Cond.7 and Cond.8 hold, in which
// case the two rotated kernels are returned as well.
struct HzmcExtraction {
  HzmcSpec spec;
  TransitionKernel t_rinv;  // reverse kernel in direction r^3 (= r^-1)
  TransitionKernel t_r;     // reverse kernel in direction r
};

std::optional<HzmcExtraction> hzmc_from_kernel(const TransitionKernel& t);

// The eigenvector candidate pair alone (throws EigenvectorNotUnique /
// CommutationViolation when no candidate exists); callers can then test
// any Markov-measure condition against it, even ones that fail.
HzmcSpec hzmc_candidate(const TransitionKernel& t);

// One-step pushforward of the iid-p law on a zigzag of half-width k
// (2k+1 cells): returns the exact law of the 2k-1 interior cells of the
// next zigzag.  Invariance (Cond.1) makes the result the iid-p law again.
FiniteDistribution zigzag_pushforward(const TransitionKernel& t,
                                      const ProbVector& p, std::size_t k);

}  // namespace pca
