#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "error.hpp"
#include "invariance.hpp"
#include "models.hpp"
#include "simulate.hpp"
#include "test_util.hpp"

using namespace pca;
using testutil::pv;

TEST_CASE("the eight-vertex kernel implements the weight coupling") {
  const EightVertex ev = eight_vertex_kernel(Rat(9), Rat(2), Rat(1), Rat(8));
  CHECK(ev.q == Rat(9, 10));
  CHECK(ev.r == Rat(1, 5));

  // Unequal side neighbors produce a 1 with probability q when the
  // south cell is 0 (and symmetrically); equal sides use r.
  CHECK(ev.kernel(0, 0, 1, 1) == Rat(9, 10));
  CHECK(ev.kernel(1, 0, 0, 1) == Rat(9, 10));
  CHECK(ev.kernel(0, 1, 1, 0) == Rat(9, 10));
  CHECK(ev.kernel(1, 1, 0, 0) == Rat(9, 10));
  CHECK(ev.kernel(0, 1, 0, 1) == Rat(1, 5));
  CHECK(ev.kernel(1, 1, 1, 1) == Rat(1, 5));
  CHECK(ev.kernel(1, 0, 1, 0) == Rat(1, 5));
  CHECK(ev.kernel(0, 0, 0, 0) == Rat(1, 5));

  CHECK(check_condition(ev.kernel, ProbVector::uniform(2), Cond::hzpm)
            .holds);

  // Weight balance is required.
  try {
    eight_vertex_kernel(Rat(9), Rat(2), Rat(2), Rat(8));
    FAIL("expected ConstraintViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::constraint_violated);
  }
  try {
    eight_vertex_kernel(Rat(0), Rat(1), Rat(1), Rat(0));
    FAIL("expected ParamOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::param_out_of_range);
  }

  // Equal weights give the memoryless coin-flip kernel.
  const EightVertex fair = eight_vertex_kernel(Rat(1), Rat(1), Rat(1), Rat(1));
  CHECK(fair.q == Rat(1, 2));
  for (const Rat& x : fair.kernel.entries()) CHECK(x == Rat(1, 2));
}

TEST_CASE("constant and striped colorings map to the expected vertex types") {
  SUBCASE("constant coloring points every edge upward") {
    SpaceTimeWindow w(2, 10, 8);
    for (std::size_t t = 0; t < 8; ++t)
      for (std::size_t i = 0; i < 10; ++i)
        if (SpaceTimeWindow::populated(i, t)) w.set(i, t, 1);
    const OrientationField field = coloring_to_orientation(w);
    unsigned long long total = 0;
    for (std::size_t k = 0; k < 8; ++k) total += field.type_histogram[k];
    CHECK(total > 0);
    CHECK(field.type_histogram[2] == total);  // all edges agree: type 3
  }

  SUBCASE("row-striped coloring alternates every edge downward") {
    SpaceTimeWindow w(2, 10, 8);
    for (std::size_t t = 0; t < 8; ++t)
      for (std::size_t i = 0; i < 10; ++i)
        if (SpaceTimeWindow::populated(i, t))
          w.set(i, t, static_cast<std::uint8_t>(t % 2));
    const OrientationField field = coloring_to_orientation(w);
    unsigned long long total = 0;
    for (std::size_t k = 0; k < 8; ++k) total += field.type_histogram[k];
    CHECK(total > 0);
    CHECK(field.type_histogram[3] == total);  // all edges differ: type 4
  }
}

TEST_CASE("orientations are invariant under a global color flip") {
  const EightVertex ev = eight_vertex_kernel(Rat(9), Rat(2), Rat(1), Rat(8));
  const ProbVector u = ProbVector::uniform(2);
  const SpaceTimeWindow w = sample_diagram(ev.kernel, u, InitHzpm{},
                                           BoundaryIidP{}, 40, 30, 11);
  SpaceTimeWindow flipped = w;
  for (std::size_t t = 0; t < 30; ++t)
    for (std::size_t i = 0; i < 40; ++i)
      if (SpaceTimeWindow::populated(i, t))
        flipped.set(i, t, static_cast<std::uint8_t>(1 - w.at(i, t)));

  const OrientationField a = coloring_to_orientation(w);
  const OrientationField b = coloring_to_orientation(flipped);
  CHECK(a.up_right == b.up_right);
  CHECK(a.up_left == b.up_left);
  CHECK(a.type_histogram == b.type_histogram);
}

TEST_CASE("every interior vertex sees an even number of incoming edges") {
  // The histogram covers all interior vertices; classification would
  // throw on an odd pattern, so a populated histogram is the check.
  const EightVertex ev = eight_vertex_kernel(Rat(2), Rat(3), Rat(4), Rat(3));
  const ProbVector u = ProbVector::uniform(2);
  const SpaceTimeWindow w = sample_diagram(ev.kernel, u, InitHzpm{},
                                           BoundaryIidP{}, 30, 30, 17);
  const OrientationField field = coloring_to_orientation(w);
  const unsigned long long total = std::accumulate(
      field.type_histogram.begin(), field.type_histogram.end(), 0ULL);
  CHECK(total == 28 * 28 / 2);  // interior holes of a 30x30 window
}

TEST_CASE("animal generating functions satisfy the lattice identity") {
  const AnimalsGf at_zero = animals_gf(0.0);
  CHECK(at_zero.g_square == doctest::Approx(0.0));
  CHECK(at_zero.g_triangular == doctest::Approx(0.0));

  const AnimalsGf probe = animals_gf(-0.1);
  CHECK(-probe.g_square == doctest::Approx(0.0839748528).epsilon(1e-9));
  CHECK(probe.residual < 1e-15);

  // G_S(z) = z + 2z^2 + O(z^3): series check at small z.
  const double z = 1e-4;
  CHECK(animals_gf(z).g_square ==
        doctest::Approx(z + 2 * z * z).epsilon(1e-6));

  CHECK_THROWS_AS(animals_gf(0.25), Error);
  CHECK_THROWS_AS(animals_gf(-0.2), Error);
  try {
    animals_gf(0.3);
    FAIL("expected OutOfDomain");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_domain);
  }
}

TEST_CASE("hard-particle kernels gate occupation on empty neighbors") {
  const Rat rate(1, 10);
  const TransitionKernel square =
      animals_kernel(AnimalsLattice::square, rate);
  CHECK_FALSE(square.positive_rates());
  for (Symbol a = 0; a < 2; ++a)
    for (Symbol b = 0; b < 2; ++b)
      for (Symbol c = 0; c < 2; ++c) {
        const Rat expected = (a == 0 && c == 0) ? rate : Rat(0);
        CHECK(square(a, b, c, 1) == expected);
      }

  const TransitionKernel tri =
      animals_kernel(AnimalsLattice::triangular, rate);
  for (Symbol a = 0; a < 2; ++a)
    for (Symbol b = 0; b < 2; ++b)
      for (Symbol c = 0; c < 2; ++c) {
        const Rat expected = (a == 0 && b == 0 && c == 0) ? rate : Rat(0);
        CHECK(tri(a, b, c, 1) == expected);
      }
}

TEST_CASE("density estimation is reproducible and carries a sane error bar") {
  const TransitionKernel t = animals_kernel(AnimalsLattice::square,
                                            Rat(1, 10));
  const ProbVector p = pv("9/10,1/10");
  const DensityEstimate a = stationary_density(t, p, 80, 160, 40, 6, 21);
  const DensityEstimate b = stationary_density(t, p, 80, 160, 40, 6, 21);
  CHECK(a.density == b.density);
  CHECK(a.std_error == b.std_error);
  CHECK(a.blocks == 6);
  CHECK(a.density > 0.0);
  CHECK(a.density < 0.2);
  CHECK(a.std_error > 0.0);
  CHECK(a.samples > 0);
}

TEST_CASE("order-two exclusion kernels expose their two context families") {
  const TasepKernel classical = TasepKernel::classical(Rat(1, 2));
  CHECK(classical.move_given_front_moved(1) == Rat(1, 2));
  CHECK(classical.move_given_front_moved(7) == Rat(1, 2));
  CHECK(classical.move_given_front_stayed(2) == Rat(1, 2));
  CHECK(classical.move_probability(1, 0) == 0);  // headway 1 never moves
  CHECK(classical.move_probability(1, 1) == 0);
  CHECK(classical.move_probability(2, 1) == Rat(1, 2));
  CHECK(classical.constant_from() >= 1);

  const TasepKernel custom({Rat(1, 3), Rat(2, 5)}, Rat(1, 2),
                           {Rat(1, 4)}, Rat(3, 5));
  // move(k): k=1 -> 1/3, k=2 -> 2/5, k>=3 -> 1/2.
  CHECK(custom.move_given_front_moved(1) == Rat(1, 3));
  CHECK(custom.move_given_front_moved(2) == Rat(2, 5));
  CHECK(custom.move_given_front_moved(3) == Rat(1, 2));
  // stay_move(k): k=2 -> 1/4, k>=3 -> 3/5.
  CHECK(custom.move_given_front_stayed(2) == Rat(1, 4));
  CHECK(custom.move_given_front_stayed(3) == Rat(3, 5));
  // A particle at headway g moves with move(g-?) depending on the front
  // particle's previous displacement.
  CHECK(custom.move_probability(2, 1) == Rat(1, 3));
  CHECK(custom.move_probability(2, 0) == Rat(1, 4));

  CHECK_THROWS_AS(TasepKernel({Rat(3, 2)}, Rat(1, 2), {}, Rat(1, 2)),
                  Error);
}

TEST_CASE("the classical stationary gap law is geometric") {
  const TasepKernel kernel = TasepKernel::classical(Rat(1, 2));
  const TasepGapLaw law = tasep_gap_law(kernel, Rat(3, 10), 20);
  CHECK(law.z == Rat(7, 4));
  REQUIRE(law.p.size() == 20);
  Rat expect(4, 7);
  Rat mass = 0;
  for (std::size_t k = 0; k < 20; ++k) {
    CHECK(law.p[k] == expect);
    mass += law.p[k];
    expect *= Rat(3, 7);
  }
  CHECK(mass + law.tail_mass == 1);
}

TEST_CASE("gap laws reject non-normalizable regimes") {
  const TasepKernel kernel = TasepKernel::classical(Rat(1, 2));
  // Tail ratio q1/q0 >= 1.
  try {
    tasep_gap_law(kernel, Rat(1, 2), 10);
    FAIL("expected Divergent");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::divergent);
  }
  // Zero stay-move denominator.
  const TasepKernel stuck({Rat(1, 2)}, Rat(1, 2), {Rat(0)}, Rat(0));
  CHECK_THROWS_AS(tasep_gap_law(stuck, Rat(1, 4), 10), Error);
}

TEST_CASE("exclusion simulation preserves order and matches its law "
          "roughly") {
  const TasepKernel kernel = TasepKernel::classical(Rat(1, 2));
  const Rat q1(3, 10);
  const TasepStats stats = tasep_simulate(kernel, q1, 3000, 40, 5);
  CHECK(stats.t_steps == 40);
  CHECK(stats.stat_particles == 3000 - 40 - 1);
  CHECK(stats.speed_total > 0);

  // Meanspeed within five sigmas of q1.
  const double speed = static_cast<double>(stats.speed_moves) /
                       static_cast<double>(stats.speed_total);
  const double sigma =
      std::sqrt(0.3 * 0.7 / static_cast<double>(stats.speed_total));
  CHECK(std::abs(speed - 0.3) < 5 * sigma);

  // Rear displacement is Binomial(40, 3/10) in distribution.
  CHECK(stats.displacement0 <= 40);

  // Headway histogram close to the stationary law: compare the mass at
  // headway 1 (4/7) with a generous band.
  unsigned long long total = 0;
  for (auto c : stats.gap_counts) total += c;
  CHECK(total == stats.stat_particles);
  const double at1 = static_cast<double>(stats.gap_counts.at(0)) /
                     static_cast<double>(total);
  CHECK(at1 == doctest::Approx(4.0 / 7.0).epsilon(0.05));

  // Determinism.
  const TasepStats again = tasep_simulate(kernel, q1, 3000, 40, 5);
  CHECK(again.gap_counts == stats.gap_counts);
  CHECK(again.displacement0 == stats.displacement0);
}

TEST_CASE("a single-step simulation reads its statistics from the "
          "initial state") {
  const TasepKernel kernel = TasepKernel::classical(Rat(1, 2));
  const TasepStats stats = tasep_simulate(kernel, Rat(3, 10), 500, 1, 9);
  CHECK(stats.t_steps == 1);
  unsigned long long total = 0;
  for (auto c : stats.gap_counts) total += c;
  CHECK(total == stats.stat_particles);
  CHECK(stats.stat_particles == 500 - 2);
}

TEST_CASE("ring dynamics conserve the headway sum") {
  const TasepKernel kernel = TasepKernel::classical(Rat(1, 2));
  const TasepRingState ring = tasep_simulate_ring(kernel, 200, 3, 150, 13);
  CHECK(ring.gaps.size() == 200);
  unsigned long total = 0;
  for (unsigned long g : ring.gaps) {
    CHECK(g >= 1);
    total += g;
  }
  CHECK(total == 200 * 3);
  CHECK(ring.t_steps == 150);
  CHECK(ring.total_moves > 0);
}

TEST_CASE("a ring with zero move probabilities freezes") {
  const TasepKernel frozen({Rat(0)}, Rat(0), {Rat(0)}, Rat(0));
  const TasepRingState ring = tasep_simulate_ring(frozen, 50, 2, 60, 3);
  CHECK(ring.total_moves == 0);
  for (unsigned long g : ring.gaps) CHECK(g == 2);
}
