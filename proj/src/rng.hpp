#pragma once

#include <cstdint>

namespace pca {

// 64-bit finalizer with full avalanche (the splitmix64 step function).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: every draw is a pure function of
// (seed, stream, a, b), so cell updates can be evaluated in any order
// and a run is reproducible from the seed alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t a,
                     std::uint64_t b) const {
    std::uint64_t h = mix64(seed_ ^ 0x6a09e667f3bcc909ULL);
    h = mix64(h ^ stream);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    return h;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t stream, std::uint64_t a,
                 std::uint64_t b) const {
    return static_cast<double>(bits(stream, a, b) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

// Draw streams; distinct constants keep independent uses decoupled.
enum Stream : std::uint64_t {
  kStreamInit = 1,      // initial two rows
  kStreamCell = 2,      // bulk cell updates, keyed (t, i)
  kStreamBoundary = 3,  // fresh boundary symbols, keyed (t, side)
  kStreamTasep = 4,     // particle speeds, keyed (t, i)
  kStreamParams = 5,    // random family parameters
};

}  // namespace pca
