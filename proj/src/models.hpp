#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "simulate.hpp"
#include "types.hpp"

namespace pca {

// ---------------------------------------------------------------------
// Eight-vertex coupling.
// ---------------------------------------------------------------------

struct EightVertex {
  TransitionKernel kernel;
  Rat q, r;
};

// Binary kernel generating face 2-colorings whose induced edge
// orientations follow the eight-vertex weights (wa, wa, wb, wb, wc, wc,
// wd, wd).  Requires positive weights with wa + wc == wb + wd
// (ConstraintViolated); q = wa/(wa+wc), r = wb/(wb+wd).  The uniform
// two-symbol law is re-verified invariant.
EightVertex eight_vertex_kernel(const Rat& wa, const Rat& wb, const Rat& wc,
                                const Rat& wd);

// Edge orientations induced by a binary window read as a face coloring:
// faces sit on populated cells, graph vertices on the holes, and an edge
// carries bit 1 when its two adjacent faces have equal colors (i.e. the
// edge points toward larger t).  Interior vertices always see an even
// number of incoming edges; the eight admissible local patterns are
// numbered so that classes {1,2}, {3,4}, {5,6}, {7,8} carry stationary
// frequencies proportional to wa, wb, wc, wd.
struct OrientationField {
  std::size_t width = 0, height = 0;
  // up_right[s * width + j] = bit of the edge from vertex (j, s) to
  // (j+1, s+1); up_left likewise toward (j-1, s+1).  0xff where the
  // edge leaves the window.
  std::vector<std::uint8_t> up_right, up_left;
  std::array<unsigned long long, 8> type_histogram{};

  std::string edge_list() const;  // "j s dj ds bit" per line
};

OrientationField coloring_to_orientation(const SpaceTimeWindow& window);

// ---------------------------------------------------------------------
// Directed animals.
// ---------------------------------------------------------------------

struct AnimalsGf {
  double g_square = 0.0;    // area generating function, square lattice
  double g_triangular = 0.0;
  double residual = 0.0;    // |G_T(z/(1+z)) - G_S(z)|
};

// Closed forms G_S(z) = ((1 - 4z/(1+z))^(-1/2) - 1)/2 and
// G_T(z) = ((1 - 4z)^(-1/2) - 1)/2, with the change-of-variable identity
// evaluated as a residual.  OutOfDomain unless 4|z| < 1 and
// 4|z|/(1+z) < 1.
AnimalsGf animals_gf(double z);

enum class AnimalsLattice { square, triangular };

// Hard-particle kernels: a 1 appears with probability p only when the
// required neighbors are empty -- square: west and east (south ignored);
// triangular: west, south and east.  Rates are not positive by design.
TransitionKernel animals_kernel(AnimalsLattice lattice, const Rat& p);

// Stationary one-density estimate from a periodic-strip simulation with
// burn-in, plus a blocked standard error (block = band of rows).
struct DensityEstimate {
  double density = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::size_t blocks = 0;
};

DensityEstimate stationary_density(const TransitionKernel& t,
                                   const ProbVector& p, std::size_t width,
                                   std::size_t rows, std::size_t burn_in,
                                   std::size_t blocks, std::uint64_t seed);

// ---------------------------------------------------------------------
// Totally asymmetric exclusion, order two.
// ---------------------------------------------------------------------

// Move law of a particle given its headway g = x_{i+1}(t) - x_i(t) and
// the front particle's previous displacement w.  The two stored
// families are move(k) = T(0,k,k+1;1) (contexts g = k+1, w = 1) and
// stay_move(k) = T(0,k,k;1) (contexts g = k, w = 0); both are constant
// beyond their stored length.  Headway 1 never moves.
class TasepKernel {
 public:
  // move[j] = move(j+1), stay[j] = stay_move(j+2); the tails extend the
  // families to all larger k.  All values must lie in [0, 1].
  TasepKernel(std::vector<Rat> move, Rat move_tail, std::vector<Rat> stay,
              Rat stay_tail);

  static TasepKernel classical(const Rat& move_probability);

  Rat move_given_front_moved(unsigned long k) const;   // move(k), k >= 1
  Rat move_given_front_stayed(unsigned long k) const;  // stay_move(k), k >= 2
  Rat move_probability(unsigned long gap, int front_speed) const;

  // Index from which both families are constant.
  unsigned long constant_from() const;

 private:
  std::vector<Rat> move_, stay_;
  Rat move_tail_, stay_tail_;
};

struct TasepGapLaw {
  std::vector<Rat> p;  // p[k-1] = p(k), k = 1..cutoff
  Rat z;               // exact normalization (closed-form tail)
  Rat tail_mass;       // exact mass beyond the cutoff
};

// Stationary headway law: p(k+1)/p(k) = (q1/q0) T(0,k,k+1;0) /
// T(0,k+1,k+1;1), normalized by the exact series value Z.  The balance
// identity p(k) q1 T(0,k,k+1;0) + p(k+1) q0 T(0,k+1,k+1;0) = p(k+1) q0
// is re-verified exactly for every k < cutoff.  Divergent when the
// ratio reaches 1 at the constant tail (or a tail denominator is zero).
TasepGapLaw tasep_gap_law(const TasepKernel& kernel, const Rat& q1,
                          std::size_t cutoff);

struct TasepStats {
  std::vector<unsigned long long> gap_counts;  // index k-1 = headway k
  unsigned long long speed_moves = 0;          // moving particles
  unsigned long long speed_total = 0;
  unsigned long long displacement0 = 0;        // of the rearmost particle
  unsigned long long t_steps = 0;
  std::size_t stat_particles = 0;  // prefix unaffected by the leader
};

// N particles with a free leader whose displacement is iid B(q1); the
// initial state draws speeds from B(q1) and zigzag gaps from the
// stationary law.  Gap counts are the zigzag B-steps
// x_{i+1}(t-1) - x_i(t) at the final step, restricted to the particle
// prefix the leader cannot have influenced.
TasepStats tasep_simulate(const TasepKernel& kernel, const Rat& q1,
                          std::size_t n_particles, std::size_t t_steps,
                          std::uint64_t seed);

// Periodic variant for conservation checks: N particles on a ring, all
// initial headways equal to initial_gap (>= 1) and initial speeds zero,
// particle 0 riding in front of particle N-1.  The headway sum is an
// exact invariant of the dynamics.
struct TasepRingState {
  std::vector<unsigned long> gaps;  // headway from i to i+1 (mod N)
  unsigned long long total_moves = 0;
  unsigned long long t_steps = 0;
};

TasepRingState tasep_simulate_ring(const TasepKernel& kernel,
                                   std::size_t n_particles,
                                   unsigned long initial_gap,
                                   std::size_t t_steps, std::uint64_t seed);

}  // namespace pca
