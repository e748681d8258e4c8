#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "types.hpp"

namespace pca {

// On-disk kernel format (JSON):
//   {
//     "n": 2,
//     "p": ["1/2", "1/2"],            // optional measure attachment
//     "T": { "a,b,c": ["x0", ..., "x(n-1)"], ... }   // all n^3 keys
//   }
// Entries are rational strings ("num/den", integer, or terminating
// decimal); decimals are converted exactly.
struct KernelFile {
  TransitionKernel kernel;
  std::optional<ProbVector> p;
};

KernelFile kernel_from_json(const std::string& text);
KernelFile kernel_load(const std::string& path);

std::string kernel_to_json(const TransitionKernel& kernel,
                           const std::optional<ProbVector>& p);
void kernel_save(const std::string& path, const TransitionKernel& kernel,
                 const std::optional<ProbVector>& p);

// FNV-1a 64-bit digest of the canonical serialization (n plus the reduced
// "num/den" entry list in storage order).  Stable provenance tag for
// report headers; independent of the JSON formatting actually used.
std::uint64_t kernel_hash(const TransitionKernel& kernel);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pca
