#include "models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "invariance.hpp"
#include "rng.hpp"

namespace pca {

// ---------------------------------------------------------------------
// Eight-vertex coupling.
// ---------------------------------------------------------------------

EightVertex eight_vertex_kernel(const Rat& wa, const Rat& wb, const Rat& wc,
                                const Rat& wd) {
  for (const Rat* w : {&wa, &wb, &wc, &wd})
    if (*w <= 0)
      fail(Errc::param_out_of_range,
           "ParamOutOfRange: vertex weights must be positive");
  if (wa + wc != wb + wd)
    fail(Errc::constraint_violated,
         "ConstraintViolated: weights must satisfy wa + wc = wb + wd");
  const Rat q = wa / (wa + wc);
  const Rat r = wb / (wb + wd);

  std::vector<Rat> entries(16);
  auto row = [&](Symbol a, Symbol b, Symbol c, const Rat& one) {
    entries[((a * 2 + b) * 2 + c) * 2 + 0] = 1 - one;
    entries[((a * 2 + b) * 2 + c) * 2 + 1] = one;
  };
  row(0, 0, 1, q);
  row(1, 0, 0, q);
  row(0, 1, 1, 1 - q);
  row(1, 1, 0, 1 - q);
  row(0, 1, 0, r);
  row(1, 1, 1, r);
  row(1, 0, 1, 1 - r);
  row(0, 0, 0, 1 - r);
  TransitionKernel kernel(2, std::move(entries));

  const ProbVector uniform = ProbVector::uniform(2);
  if (!check_condition(kernel, uniform, Cond::hzpm).holds)
    fail(Errc::internal_disagreement,
         "InternalDisagreement: uniform law not invariant for the "
         "eight-vertex kernel");
  return {std::move(kernel), q, r};
}

std::string OrientationField::edge_list() const {
  std::ostringstream out;
  for (std::size_t s = 0; s < height; ++s)
    for (std::size_t j = 0; j < width; ++j) {
      if ((j + s) % 2 == 0) continue;  // not a graph vertex
      const std::uint8_t ur = up_right[s * width + j];
      const std::uint8_t ul = up_left[s * width + j];
      if (ur != 0xff)
        out << j << "\t" << s << "\t1\t1\t" << int(ur) << "\n";
      if (ul != 0xff)
        out << j << "\t" << s << "\t-1\t1\t" << int(ul) << "\n";
    }
  return out.str();
}

OrientationField coloring_to_orientation(const SpaceTimeWindow& window) {
  if (window.n() != 2)
    fail(Errc::invalid_argument,
         "InvalidArgument: orientations need a binary coloring");
  const std::size_t w = window.width(), h = window.height();
  OrientationField field;
  field.width = w;
  field.height = h;
  field.up_right.assign(w * h, 0xff);
  field.up_left.assign(w * h, 0xff);

  // The local pattern (o1,o2,o3,o4) of the four edges around a vertex,
  // read as a 4-bit index, mapped to the type whose weight class
  // matches the stationary frequency of the generating kernel.
  static constexpr int kType[16] = {4, 0, 0, 7, 0, 1, 6, 0,
                                    0, 5, 2, 0, 8, 0, 0, 3};

  for (std::size_t s = 0; s < h; ++s)
    for (std::size_t j = 0; j < w; ++j) {
      if ((j + s) % 2 == 0) continue;  // faces, not vertices
      // Edge toward (j+1, s+1): faces N = (j, s+1) and E = (j+1, s).
      if (s + 1 < h && j + 1 < w)
        field.up_right[s * w + j] =
            window.at(j, s + 1) == window.at(j + 1, s) ? 1 : 0;
      // Edge toward (j-1, s+1): faces N = (j, s+1) and W = (j-1, s).
      if (s + 1 < h && j >= 1)
        field.up_left[s * w + j] =
            window.at(j, s + 1) == window.at(j - 1, s) ? 1 : 0;
      // Interior vertices: classify the local configuration.
      if (j >= 1 && j + 1 < w && s >= 1 && s + 1 < h) {
        const std::uint8_t west = window.at(j - 1, s);
        const std::uint8_t south = window.at(j, s - 1);
        const std::uint8_t east = window.at(j + 1, s);
        const std::uint8_t north = window.at(j, s + 1);
        const int o1 = north == west ? 1 : 0;
        const int o2 = north == east ? 1 : 0;
        const int o3 = south == east ? 1 : 0;
        const int o4 = south == west ? 1 : 0;
        const int incoming = (1 - o1) + (1 - o2) + o3 + o4;
        const int type = kType[o1 << 3 | o2 << 2 | o3 << 1 | o4];
        if (incoming % 2 != 0 || type == 0)
          fail(Errc::internal_disagreement,
               "InternalDisagreement: odd incoming degree at a vertex");
        ++field.type_histogram[type - 1];
      }
    }
  return field;
}

// ---------------------------------------------------------------------
// Directed animals.
// ---------------------------------------------------------------------

AnimalsGf animals_gf(double z) {
  if (!(1.0 + z > 0.0) || !(4.0 * std::fabs(z) < 1.0) ||
      !(4.0 * std::fabs(z) / (1.0 + z) < 1.0))
    fail(Errc::out_of_domain,
         "OutOfDomain: need 4|z| < 1 and 4|z|/(1+z) < 1");
  auto g_t = [](double x) {
    return 0.5 * (1.0 / std::sqrt(1.0 - 4.0 * x) - 1.0);
  };
  AnimalsGf out;
  out.g_triangular = g_t(z);
  out.g_square = 0.5 * (1.0 / std::sqrt(1.0 - 4.0 * z / (1.0 + z)) - 1.0);
  out.residual = std::fabs(g_t(z / (1.0 + z)) - out.g_square);
  return out;
}

TransitionKernel animals_kernel(AnimalsLattice lattice, const Rat& p) {
  if (p <= 0 || p >= 1)
    fail(Errc::param_out_of_range,
         "ParamOutOfRange: particle rate must lie in (0, 1)");
  std::vector<Rat> entries(16, Rat(0));
  for (Symbol a = 0; a < 2; ++a)
    for (Symbol b = 0; b < 2; ++b)
      for (Symbol c = 0; c < 2; ++c) {
        const bool open = lattice == AnimalsLattice::square
                              ? (a == 0 && c == 0)
                              : (a == 0 && b == 0 && c == 0);
        const Rat one = open ? p : Rat(0);
        entries[((a * 2 + b) * 2 + c) * 2 + 0] = 1 - one;
        entries[((a * 2 + b) * 2 + c) * 2 + 1] = one;
      }
  return TransitionKernel(2, std::move(entries));
}

DensityEstimate stationary_density(const TransitionKernel& t,
                                   const ProbVector& p, std::size_t width,
                                   std::size_t rows, std::size_t burn_in,
                                   std::size_t blocks, std::uint64_t seed) {
  if (blocks < 2)
    fail(Errc::invalid_argument, "InvalidArgument: need at least 2 blocks");
  if (rows <= burn_in + blocks)
    fail(Errc::invalid_argument,
         "InvalidArgument: too few rows for burn-in plus blocks");
  const std::size_t band = (rows - burn_in) / blocks;
  const SpaceTimeWindow window =
      sample_diagram(t, p, InitHzpm{}, BoundaryPeriodic{}, width,
                     burn_in + band * blocks, seed);
  std::vector<double> means(blocks, 0.0);
  std::size_t samples = 0;
  for (std::size_t block = 0; block < blocks; ++block) {
    unsigned long long ones = 0, cells = 0;
    for (std::size_t row = burn_in + block * band;
         row < burn_in + (block + 1) * band; ++row)
      for (std::size_t i = row % 2; i < width; i += 2) {
        ones += window.at(i, row) == 1 ? 1 : 0;
        ++cells;
      }
    means[block] = double(ones) / double(cells);
    samples += cells;
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= double(blocks);
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= double(blocks - 1);
  DensityEstimate est;
  est.density = mean;
  est.std_error = std::sqrt(var / double(blocks));
  est.samples = samples;
  est.blocks = blocks;
  return est;
}

// ---------------------------------------------------------------------
// Totally asymmetric exclusion, order two.
// ---------------------------------------------------------------------

TasepKernel::TasepKernel(std::vector<Rat> move, Rat move_tail,
                         std::vector<Rat> stay, Rat stay_tail)
    : move_(std::move(move)), stay_(std::move(stay)),
      move_tail_(std::move(move_tail)), stay_tail_(std::move(stay_tail)) {
  auto check = [](const Rat& x) {
    if (x < 0 || x > 1)
      fail(Errc::param_out_of_range,
           "ParamOutOfRange: move probability outside [0, 1]");
  };
  for (const Rat& x : move_) check(x);
  for (const Rat& x : stay_) check(x);
  check(move_tail_);
  check(stay_tail_);
}

TasepKernel TasepKernel::classical(const Rat& move_probability) {
  return TasepKernel({}, move_probability, {}, move_probability);
}

Rat TasepKernel::move_given_front_moved(unsigned long k) const {
  if (k < 1)
    fail(Errc::invalid_argument, "InvalidArgument: move(k) needs k >= 1");
  return k - 1 < move_.size() ? move_[k - 1] : move_tail_;
}

Rat TasepKernel::move_given_front_stayed(unsigned long k) const {
  if (k < 2)
    fail(Errc::invalid_argument,
         "InvalidArgument: stay-context move(k) needs k >= 2");
  return k - 2 < stay_.size() ? stay_[k - 2] : stay_tail_;
}

Rat TasepKernel::move_probability(unsigned long gap, int front_speed) const {
  if (gap < 1)
    fail(Errc::invalid_argument, "InvalidArgument: headway must be >= 1");
  if (gap == 1) return 0;  // the next position has to be empty
  return front_speed == 1 ? move_given_front_moved(gap - 1)
                          : move_given_front_stayed(gap);
}

unsigned long TasepKernel::constant_from() const {
  return std::max<unsigned long>(move_.size() + 1, stay_.size() + 2);
}

TasepGapLaw tasep_gap_law(const TasepKernel& kernel, const Rat& q1,
                          std::size_t cutoff) {
  if (q1 <= 0 || q1 >= 1)
    fail(Errc::param_out_of_range,
         "ParamOutOfRange: leader rate q(1) must lie in (0, 1)");
  if (cutoff < 2)
    fail(Errc::invalid_argument, "InvalidArgument: cutoff must be >= 2");
  const Rat q0 = 1 - q1;

  // ratio(j) = p(j+1)/p(j); constant from the kernel's constant index.
  // (Explicit return type: GMP expression templates must not outlive
  // their operands.)
  auto ratio = [&](unsigned long j) -> Rat {
    const Rat denom = kernel.move_given_front_stayed(j + 1);
    if (denom == 0)
      fail(Errc::divergent,
           "Divergent: zero stay-context rate at k = " +
               std::to_string(j + 1) + " makes the product blow up");
    return q1 / q0 * (1 - kernel.move_given_front_moved(j)) / denom;
  };

  const unsigned long constant_from = kernel.constant_from();
  const Rat tail_ratio = ratio(constant_from);
  if (tail_ratio >= 1)
    fail(Errc::divergent,
         "Divergent: the normalization series has ratio >= 1 at its "
         "constant tail");

  const std::size_t top = std::max<std::size_t>(cutoff, constant_from);
  std::vector<Rat> numer(top + 1);
  numer[0] = 1;
  for (std::size_t j = 1; j <= top; ++j) numer[j] = numer[j - 1] * ratio(j);

  Rat z = 0;
  for (std::size_t j = 0; j < constant_from; ++j) z += numer[j];
  z += numer[constant_from] / (1 - tail_ratio);

  TasepGapLaw law;
  law.z = z;
  law.p.resize(cutoff);
  Rat head = 0;
  for (std::size_t k = 1; k <= cutoff; ++k) {
    law.p[k - 1] = numer[k - 1] / z;
    head += law.p[k - 1];
  }
  law.tail_mass = 1 - head;

  // Re-verify the stationarity balance and its rearranged form.
  for (std::size_t k = 1; k < cutoff; ++k) {
    const Rat move_stay = 1 - kernel.move_given_front_moved(k);
    const Rat ctx_stay = 1 - kernel.move_given_front_stayed(k + 1);
    const Rat lhs = law.p[k - 1] * q1 * move_stay +
                    law.p[k] * q0 * ctx_stay;
    if (lhs != law.p[k] * q0 ||
        law.p[k - 1] * q1 * move_stay !=
            law.p[k] * q0 * kernel.move_given_front_stayed(k + 1))
      fail(Errc::internal_disagreement,
           "InternalDisagreement: headway law fails its balance "
           "identity at k = " + std::to_string(k));
  }
  return law;
}

TasepStats tasep_simulate(const TasepKernel& kernel, const Rat& q1,
                          std::size_t n_particles, std::size_t t_steps,
                          std::uint64_t seed) {
  if (n_particles < 2)
    fail(Errc::invalid_argument,
         "InvalidArgument: need at least two particles");
  if (t_steps < 1)
    fail(Errc::invalid_argument, "InvalidArgument: need at least one step");

  // Stationary zigzag-gap law, in doubles for sampling.
  const unsigned long constant_from = kernel.constant_from();
  const std::size_t law_cutoff = constant_from + 128;
  const TasepGapLaw law = tasep_gap_law(kernel, q1, law_cutoff);
  std::vector<double> cumulative(law.p.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < law.p.size(); ++k) {
    acc += rat_double(law.p[k]);
    cumulative[k] = acc;
  }
  auto sample_gap_step = [&](double u) -> unsigned long {
    for (std::size_t k = 0; k < cumulative.size(); ++k)
      if (u < cumulative[k]) return k + 1;
    return cumulative.size();  // truncated tail, mass < 2^-100 here
  };

  const CounterRng rng(seed);
  const double q1d = rat_double(q1);

  // Move probabilities in doubles, cached per (headway, front speed).
  std::vector<double> move_cache, stay_cache;
  auto move_prob = [&](unsigned long gap, int front_speed) {
    std::vector<double>& cache = front_speed ? move_cache : stay_cache;
    while (cache.size() <= gap)
      cache.push_back(rat_double(
          kernel.move_probability(cache.size() ? cache.size() : 1,
                                  front_speed)));
    return cache[gap];
  };

  // Initial two-row zigzag: speeds iid B(q1), descending steps iid p.
  std::vector<std::uint8_t> v_prev(n_particles);
  std::vector<unsigned long> gap(n_particles - 1);
  for (std::size_t i = 0; i < n_particles; ++i)
    v_prev[i] = rng.uniform(kStreamTasep, 0, i) < q1d ? 1 : 0;
  for (std::size_t i = 0; i + 1 < n_particles; ++i)
    gap[i] = sample_gap_step(rng.uniform(kStreamInit, i, 0)) + v_prev[i + 1];

  TasepStats stats;
  stats.t_steps = t_steps;
  stats.displacement0 = v_prev[0];
  stats.stat_particles = n_particles > t_steps + 1
                             ? n_particles - t_steps - 1
                             : n_particles - 1;

  if (t_steps == 1) {
    // The window is just the initial pair of rows; its descending
    // steps are the iid stationary draws themselves.
    for (std::size_t i = 0; i < stats.stat_particles; ++i) {
      const unsigned long b_step = gap[i] - v_prev[i + 1];
      if (b_step > stats.gap_counts.size())
        stats.gap_counts.resize(b_step, 0);
      ++stats.gap_counts[b_step - 1];
      stats.speed_moves += v_prev[i];
      ++stats.speed_total;
    }
    return stats;
  }

  std::vector<std::uint8_t> v_new(n_particles);
  for (std::size_t t = 1; t < t_steps; ++t) {
    for (std::size_t i = 0; i + 1 < n_particles; ++i)
      v_new[i] =
          rng.uniform(kStreamTasep, t, i) < move_prob(gap[i], v_prev[i + 1])
              ? 1
              : 0;
    v_new[n_particles - 1] =
        rng.uniform(kStreamTasep, t, n_particles - 1) < q1d ? 1 : 0;
    if (t + 1 == t_steps) {
      // Zigzag descending steps x_{i+1}(t) - x_i(t+1) of the final pair
      // of rows, over the leader-free prefix.
      for (std::size_t i = 0; i < stats.stat_particles; ++i) {
        const unsigned long b_step = gap[i] - v_new[i];
        if (b_step > stats.gap_counts.size())
          stats.gap_counts.resize(b_step, 0);
        ++stats.gap_counts[b_step - 1];
        stats.speed_moves += v_new[i];
        ++stats.speed_total;
      }
    }
    for (std::size_t i = 0; i + 1 < n_particles; ++i) {
      gap[i] += v_new[i + 1];
      gap[i] -= v_new[i];
      if (gap[i] < 1)
        fail(Errc::internal_disagreement,
             "InternalDisagreement: exclusion violated in simulation");
    }
    stats.displacement0 += v_new[0];
    v_prev = v_new;
  }
  return stats;
}

TasepRingState tasep_simulate_ring(const TasepKernel& kernel,
                                   std::size_t n_particles,
                                   unsigned long initial_gap,
                                   std::size_t t_steps, std::uint64_t seed) {
  if (n_particles < 2)
    fail(Errc::invalid_argument,
         "InvalidArgument: need at least two particles");
  if (initial_gap < 1)
    fail(Errc::invalid_argument, "InvalidArgument: headways must be >= 1");
  const CounterRng rng(seed);

  std::vector<double> move_cache, stay_cache;
  auto move_prob = [&](unsigned long gap, int front_speed) {
    std::vector<double>& cache = front_speed ? move_cache : stay_cache;
    while (cache.size() <= gap)
      cache.push_back(rat_double(
          kernel.move_probability(cache.size() ? cache.size() : 1,
                                  front_speed)));
    return cache[gap];
  };

  TasepRingState state;
  state.t_steps = t_steps;
  state.gaps.assign(n_particles, initial_gap);
  std::vector<std::uint8_t> v_prev(n_particles, 0), v_new(n_particles);
  for (std::size_t t = 1; t <= t_steps; ++t) {
    for (std::size_t i = 0; i < n_particles; ++i)
      v_new[i] = rng.uniform(kStreamTasep, t, i) <
                         move_prob(state.gaps[i],
                                   v_prev[(i + 1) % n_particles])
                     ? 1
                     : 0;
    for (std::size_t i = 0; i < n_particles; ++i) {
      state.gaps[i] += v_new[(i + 1) % n_particles];
      state.gaps[i] -= v_new[i];
      if (state.gaps[i] < 1)
        fail(Errc::internal_disagreement,
             "InternalDisagreement: exclusion violated on the ring");
      state.total_moves += v_new[i];
    }
    v_prev = v_new;
  }
  return state;
}

}  // namespace pca
