#pragma once

#include "distribution.hpp"
#include "invariance.hpp"
#include "types.hpp"

namespace pca {

// Exact probability of a full (m+1) x (m+1) diamond pattern under the
// stationary field of a kernel with invariant product measure p.  The
// diamond is spanned by u = (-1,1) and v = (1,1); cell (i,j) sits at
// x + i*u + j*v and cells are passed row-major in i, i.e.
// cells[i*(m+1)+j] = a_{i,j}.  Base edges (i,0) and (0,j) carry the
// product measure; every interior cell contributes
// T(a_{i,j-1}, a_{i-1,j-1}, a_{i-1,j}; a_{i,j}).  Requires Cond.1.
Rat diamond_probability(const TransitionKernel& t, const ProbVector& p,
                        std::size_t m, const std::vector<Symbol>& cells);

// Joint law of the two central broken columns of the diamond:
//   V0 = (a_{i,i})_{0<=i<=m},   V1 = (a_{i+1,i})_{0<=i<m},
// keyed in (i,j)-lexicographic order of the observed cells:
//   (0,0),(1,0),(1,1),(2,1),(2,2),...
// Computed twice -- once from the direct factorization, once from the
// quarter-turn factorization through T_r -- and compared exactly
// (InternalDisagreement on mismatch).  Requires Cond.1 and Cond.2.
FiniteDistribution rotated_marginal(const TransitionKernel& t,
                                    const ProbVector& p, std::size_t m);

}  // namespace pca
