#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "invariance.hpp"
#include "models.hpp"
#include "simulate.hpp"
#include "types.hpp"

namespace pca {

inline constexpr const char* kVersion = "0.1.0";

// "# version=...\n# kernel-hash=...016x\n# seed=...\n"; hash and seed
// lines appear only when the corresponding argument is present.
std::string provenance_header(const TransitionKernel* kernel,
                              const std::uint64_t* seed);

// "Cond.2: HOLDS" or
// "Cond.3: FAILS at (a=0,b=1,d=0) lhs=1/3 rhs=1/4".
std::string check_report_line(Cond cond, const CheckResult& result);

// Tab-separated table over all eight symmetries: name, whether the
// rotated field is a two-row PCA, and whether its kernel is t itself.
std::string reversibility_report_text(const TransitionKernel& t,
                                      const ProbVector& p);

// Joint law of the two rotated boundary lines at depth m, the exact
// single-line marginal comparison against the product law, and a
// non-independence witness pair when one exists.
std::string marginals_report(const TransitionKernel& t, const ProbVector& p,
                             std::size_t m);

// Forward/backward matrices, their invariant vector, and the two rotated
// kernels recovered from a Markov-measure extraction.
std::string hzmc_report(const HzmcExtraction& extraction);

// "t\tdistance\tbound" rows (exact rationals plus float renderings).
std::string ergodicity_report(const ErgodicityResult& result);

// Per-line statistics plus the batch verdict.
std::string lines_report(const LineBatchResult& result);

// "k\tp(k)\t~float" rows plus Z and the truncated tail mass.
std::string gap_law_report(const TasepGapLaw& law);

// Gap histogram (with the stationary reference law when provided),
// empirical speed frequency and rear-particle displacement.
std::string tasep_sim_report(const TasepStats& stats,
                             const TasepGapLaw* reference);

// Blocked density estimate.
std::string density_report(const DensityEstimate& estimate);

// Vertex-type histogram of an orientation field.
std::string orientation_report(const OrientationField& field);

// Plain-text rendering of a window: one row of symbols per time line
// (top row = t 0), '.' on the holes.  Symbols above 9 print in base 36.
std::string window_text(const SpaceTimeWindow& window);

}  // namespace pca
