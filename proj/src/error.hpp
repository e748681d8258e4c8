#pragma once

#include <stdexcept>
#include <string>

namespace pca {

// Error taxonomy shared by the C++ core, the C API and the CLI.  Every
// domain failure carries one of these codes; the C API maps them 1:1 to
// pca_status values and the CLI maps them to exit codes.
enum class Errc {
  invalid_argument,        // malformed sizes, bad enum values, ...
  parse,                   // unparseable rational / JSON
  io,                      // file system failure
  negative_entry,          // probability entry < 0
  not_normalized,          // probability vector does not sum to 1
  row_not_stochastic,      // a kernel/matrix row does not sum to 1
  alphabet_mismatch,       // operands built over different alphabets
  non_positive_rates,      // operation requires strictly positive entries
  commutation_violation,   // FB != BF
  eigenvector_not_unique,  // invariant vector not unique / not positive
  precondition_failed,     // named precondition of an operation fails
  not_triangular,          // kernel lacks an invariant product measure step
  param_out_of_range,      // family parameter outside admissible interval
  epsilon_too_large,       // perturbation pushed an entry out of (0,1)
  dimension_mismatch,      // wrong number of free parameters
  internal_disagreement,   // two independent computations disagree
  invalid_polyline,        // polyline is not a time-monotone lattice path
  odd_width_periodic,      // periodic boundary needs even width
  state_space_too_large,   // exact computation would exceed the size guard
  insufficient_samples,    // expected cell counts below test threshold
  constraint_violated,     // model-level constraint (e.g. weight balance)
  divergent,               // series/normalization fails to converge
  out_of_domain,           // argument outside a function's domain
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pca
