#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invariance.hpp"
#include "types.hpp"

namespace pca {

// Kernel families with an invariant product measure, classified by which
// square symmetries leave the stationary space-time field (quasi-)
// invariant.  QR_* are quasi-reversibility classes (the reversed field is
// again a two-row PCA, generally with a different kernel), REV_* demand
// the reversed kernel to coincide with the original, and BIN_* are the
// two-letter parametrizations of the corresponding classes.
enum class FamilyId {
  triang,    // invariant product measure only
  qr_r,      // quasi-reversible under the quarter turn r
  qr_rinv,   // quasi-reversible under r^3
  qr_d4,     // quasi-reversible under the full symmetry group
  rev_v,     // reversible under the vertical mirror v
  rev_r2,    // reversible under the half turn r^2
  rev_h,     // reversible under the horizontal mirror h
  rev_r2v,   // reversible under {r^2, v} (hence h too)
  rev_r,     // reversible under r
  rev_rv,    // reversible under the diagonal mirror rv
  rev_d4,    // reversible under all of D4
  bin_hzpm,  // binary: invariant product measure
  bin_r,     // binary: r-quasi-reversible
  bin_rinv,  // binary: r^3-quasi-reversible
  bin_d4,    // binary: D4-reversible
};

std::string family_name(FamilyId id);
std::optional<FamilyId> family_parse(std::string_view name);

// Formula-level g-rotation of a kernel:
//   T_g(sigma_g(a,b,c;d)) = p(last(sigma_g(a,b,c;d))) / p(d) * T(a,b,c;d).
// No precondition check beyond p > 0; the kernel constructor still
// verifies row sums, which hold iff the matching marginal condition does.
TransitionKernel sigma_transport(const TransitionKernel& t,
                                 const ProbVector& p, Dihedral g);

// Public rotation with explicit preconditions — exactly the condition
// that makes the transported rows stochastic: none for {id, v}, Cond.1
// for {h, r2} (NotInTriang), Cond.2 for {r, r3v} and Cond.3 for
// {r3, rv} (PreconditionFailed naming g and the missing condition).
TransitionKernel reverse_kernel(const TransitionKernel& t,
                                const ProbVector& p, Dihedral g);

// True iff the g-rotated kernel coincides with t:
//   forall x: p(x4) T(sigma_g(x)) == p(sigma_g(x)4) T(x).
bool reversal_identity_holds(const TransitionKernel& t, const ProbVector& p,
                             Dihedral g);

// Symmetries whose rotation of the stationary field is again a two-row
// PCA, together with the rotated kernels.  Requires Cond.1.
struct QuasiRevReport {
  std::vector<std::pair<Dihedral, TransitionKernel>> members;
  bool contains(Dihedral g) const;
  const TransitionKernel* kernel_for(Dihedral g) const;
};

QuasiRevReport quasi_reversibility_report(const TransitionKernel& t,
                                          const ProbVector& p);

// Symmetries g with T_g == T (a subgroup of D4, always containing id).
std::vector<Dihedral> reversibility_report(const TransitionKernel& t,
                                           const ProbVector& p);

// Number of free parameters of each family over an n-letter alphabet
// (closed-form polynomial).  For the BIN_* families n must be 2.
long long family_dimension(FamilyId id, std::size_t n);

// Orbit count of the relevant coordinate-permutation group acting on the
// reduced block (S\{s})^4; defined for rev_r, rev_rv and rev_d4, where it
// equals the family dimension.
unsigned long long family_orbit_count(FamilyId id, std::size_t n);

// Explicit family member: the affine point at distance eps*params from
// the product kernel T(a,b,c;d) = p(d), in the family's canonical free
// coordinates (documented in the implementation).  params.size() must be
// family_dimension(id, n) (DimensionMismatch); every completed entry must
// land in the open interval (0,1) (EpsilonTooLarge).  Membership in the
// family is re-verified exactly before returning.
TransitionKernel gen_member(FamilyId id, const ProbVector& p,
                            const std::vector<Rat>& params, const Rat& eps);

// Binary (n = 2) parametrized families over p = (1/(1+k), k/(1+k)).
//   bin_hzpm: params (q00, q01, q10, q11) with T(a,0,c;0) = q_ac
//   bin_r   : params (q0, q1)            with T(a,0,0;0) = q_a
//   bin_rinv: params (q0, q1)            with T(0,0,c;0) = q_c
//   bin_d4  : params (q0)
// All remaining entries follow from the defining relations with
// multiplier 1/k.  Throws ParamOutOfRange when k <= 0, a parameter lies
// outside (0,1), or an induced entry leaves [0,1].
std::pair<TransitionKernel, ProbVector> binary_family(
    FamilyId id, const Rat& k, const std::vector<Rat>& params);

}  // namespace pca
