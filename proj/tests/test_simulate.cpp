#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "invariance.hpp"
#include "models.hpp"
#include "simulate.hpp"
#include "stats.hpp"
#include "test_util.hpp"

using namespace pca;
using testutil::product_kernel;
using testutil::pv;
using testutil::xor_kernel;

TEST_CASE("sampling is a pure function of the seed") {
  const ProbVector p = pv("1/3,2/3");
  const TransitionKernel t = product_kernel(p);
  const SpaceTimeWindow w1 =
      sample_diagram(t, p, InitHzpm{}, BoundaryIidP{}, 16, 12, 7);
  const SpaceTimeWindow w2 =
      sample_diagram(t, p, InitHzpm{}, BoundaryIidP{}, 16, 12, 7);
  const SpaceTimeWindow w3 =
      sample_diagram(t, p, InitHzpm{}, BoundaryIidP{}, 16, 12, 8);

  bool same12 = true, same13 = true;
  for (std::size_t tt = 0; tt < 12; ++tt)
    for (std::size_t i = 0; i < 16; ++i) {
      same12 = same12 && w1.at(i, tt) == w2.at(i, tt);
      same13 = same13 && w1.at(i, tt) == w3.at(i, tt);
    }
  CHECK(same12);
  CHECK_FALSE(same13);
}

TEST_CASE("windows populate exactly the even sublattice") {
  const ProbVector p = pv("1/2,1/2");
  const SpaceTimeWindow w = sample_diagram(product_kernel(p), p, InitHzpm{},
                                           BoundaryIidP{}, 9, 7, 1);
  CHECK(w.populated_count() == (9 * 7 + 1) / 2);
  for (std::size_t t = 0; t < 7; ++t)
    for (std::size_t i = 0; i < 9; ++i) {
      if (SpaceTimeWindow::populated(i, t)) {
        CHECK(w.at(i, t) <= 1);
      } else {
        CHECK(w.at(i, t) == SpaceTimeWindow::kHole);
      }
    }
}

TEST_CASE("the deterministic parity rule grows the binary triangle") {
  // One seed cell on an all-zero background.  The parity rule reads only
  // the two side parents (one row up), so a row-0 seed would be orphaned;
  // seeding row 1 grows Pascal's triangle mod 2 below it.
  const std::size_t width = 17, height = 9;
  std::vector<Symbol> row0(9, 0), row1(8, 0);
  row1[3] = 1;  // cell (7, 1)
  const ProbVector p = pv("1,0");
  const SpaceTimeWindow w =
      sample_diagram(xor_kernel(), p, InitExplicit{row0, row1},
                     BoundaryFixed{0, 0}, width, height, 3);

  // Independent recomputation of the same recurrence.
  std::vector<std::vector<int>> expect(height, std::vector<int>(width, 0));
  expect[1][7] = 1;
  for (std::size_t t = 2; t < height; ++t)
    for (std::size_t i = 0; i < width; ++i) {
      if (!SpaceTimeWindow::populated(i, t)) continue;
      const int west = i > 0 ? expect[t - 1][i - 1] : 0;
      const int east = i + 1 < width ? expect[t - 1][i + 1] : 0;
      expect[t][i] = west ^ east;
    }
  for (std::size_t t = 0; t < height; ++t)
    for (std::size_t i = 0; i < width; ++i)
      if (SpaceTimeWindow::populated(i, t))
        CHECK(w.at(i, t) == expect[t][i]);

  // Seven steps below the seed, binomial(7, k) is odd for every k, so
  // the whole reachable cone of row 8 is set and the rest is clear.
  for (std::size_t i = 0; i <= 14; i += 2) CHECK(w.at(i, 8) == 1);
  CHECK(w.at(16, 8) == 0);
  // Five steps down, binomial(5, k) is even exactly for k in {2, 3}.
  CHECK(w.at(6, 6) == 0);
  CHECK(w.at(8, 6) == 0);
  CHECK(w.at(2, 6) == 1);
}

TEST_CASE("periodic wrapping requires an even width") {
  const ProbVector p = pv("1/2,1/2");
  try {
    sample_diagram(product_kernel(p), p, InitHzpm{}, BoundaryPeriodic{}, 9,
                   6, 1);
    FAIL("expected OddWidthPeriodic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::odd_width_periodic);
  }
  CHECK_NOTHROW(sample_diagram(product_kernel(p), p, InitHzpm{},
                               BoundaryPeriodic{}, 10, 6, 1));
}

TEST_CASE("line parsing and extraction cover all four kinds") {
  const ProbVector p = pv("1,0");
  // All-zero field with one marked cell to track coordinates.
  SpaceTimeWindow w = sample_diagram(product_kernel(p), p, InitConstant{0},
                                     BoundaryFixed{0, 0}, 8, 6, 1);
  w.set(4, 2, 1);

  const auto horizontal = LineSpec::parse("horizontal:2");
  REQUIRE(horizontal.has_value());
  const auto hcells = extract_line(w, *horizontal);
  REQUIRE(hcells.size() == 4);  // populated cells of row 2: i = 0,2,4,6
  CHECK(hcells[2] == 1);

  const auto vertical = LineSpec::parse("vertical:4");
  REQUIRE(vertical.has_value());
  const auto vcells = extract_line(w, *vertical);
  REQUIRE(vcells.size() == 3);  // (4,0), (4,2), (4,4)
  CHECK(vcells[1] == 1);

  const auto sloped = LineSpec::parse("sloped:1,1,2");
  REQUIRE(sloped.has_value());
  const auto scells = extract_line(w, *sloped);
  REQUIRE(scells.size() == 6);  // (2+k, k) for k = 0..5
  CHECK(scells[2] == 1);

  const auto zig = LineSpec::parse("zigzag:3,1;4,2;5,1;6,2");
  REQUIRE(zig.has_value());
  const auto zcells = extract_line(w, *zig);
  REQUIRE(zcells.size() == 4);
  CHECK(zcells[1] == 1);

  CHECK(LineSpec::parse("horizontal:2")->str() == "horizontal:2");
  CHECK_FALSE(LineSpec::parse("diagonal:1").has_value());
}

TEST_CASE("invalid polylines are rejected") {
  const ProbVector p = pv("1/2,1/2");
  const SpaceTimeWindow w = sample_diagram(product_kernel(p), p, InitHzpm{},
                                           BoundaryIidP{}, 8, 6, 1);
  // (0,1) is a hole.
  CHECK_THROWS_AS(extract_line(w, LineSpec::zigzag({{0, 1}, {1, 2}})),
                  Error);
  // Non-adjacent consecutive points.
  CHECK_THROWS_AS(extract_line(w, LineSpec::zigzag({{0, 0}, {2, 2}})),
                  Error);
  // Sloped line falling on holes.
  try {
    extract_line(w, LineSpec::sloped(1, 1, 1));
    FAIL("expected InvalidPolyline");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_polyline);
  }
}

TEST_CASE("iid line diagnostics accept product fields and reject "
          "constant fields") {
  const ProbVector p = pv("1/2,1/2");
  const TransitionKernel t = product_kernel(p);
  std::vector<SpaceTimeWindow> windows;
  for (std::uint64_t s = 0; s < 4; ++s)
    windows.push_back(sample_diagram(t, p, InitHzpm{}, BoundaryIidP{}, 60,
                                     40, 100 + s));
  const std::vector<LineSpec> lines = {
      LineSpec::horizontal(20), LineSpec::vertical(20),
      LineSpec::sloped(1, 1, 0)};

  const LineBatchResult good = line_iid_test(windows, lines, p, 0.01);
  CHECK(good.all_pass);
  CHECK(good.outcomes.size() == 3);
  CHECK(good.bonferroni_alpha == doctest::Approx(0.01 / 6));

  // Testing the same windows against a wrong symbol law fails the
  // frequency test while keeping the pair tables healthy.
  const LineBatchResult bad =
      line_iid_test(windows, lines, pv("9/10,1/10"), 0.01);
  CHECK_FALSE(bad.all_pass);

  // A constant line starves the pair table instead of failing softly.
  SpaceTimeWindow all_zero(2, 60, 4);
  for (std::size_t tt = 0; tt < 4; ++tt)
    for (std::size_t i = 0; i < 60; ++i)
      if (SpaceTimeWindow::populated(i, tt)) all_zero.set(i, tt, 0);
  try {
    line_iid_test({all_zero}, {LineSpec::horizontal(2)}, p, 0.01);
    FAIL("expected InsufficientSamples");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::insufficient_samples);
  }
}

TEST_CASE("goodness-of-fit statistics match hand calculations") {
  const ChiSquareResult even =
      chi_square_gof({50, 50}, {Rat(1, 2), Rat(1, 2)});
  CHECK(even.statistic == doctest::Approx(0.0));
  CHECK(even.p_value == doctest::Approx(1.0));
  CHECK(even.dof == 1);

  const ChiSquareResult skew =
      chi_square_gof({60, 40}, {Rat(1, 2), Rat(1, 2)});
  CHECK(skew.statistic == doctest::Approx(4.0));
  CHECK(skew.p_value == doctest::Approx(0.04550026).epsilon(1e-6));

  try {
    chi_square_gof({3, 1}, {Rat(1, 2), Rat(1, 2)});
    FAIL("expected InsufficientSamples");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::insufficient_samples);
  }
}

TEST_CASE("independence statistics detect a diagonal table") {
  // Perfectly independent 2x2 table.
  const ChiSquareResult indep = chi_square_independence(2, {25, 25, 25, 25});
  CHECK(indep.statistic == doctest::Approx(0.0));
  CHECK(indep.dof == 1);

  const ChiSquareResult dep = chi_square_independence(2, {40, 10, 10, 40});
  CHECK(dep.statistic == doctest::Approx(36.0));
  CHECK(dep.p_value < 1e-8);
}

TEST_CASE("exact chain distance contracts under the coupling bound") {
  const EightVertex ev = eight_vertex_kernel(Rat(9), Rat(2), Rat(1), Rat(8));
  const ProbVector u = ProbVector::uniform(2);
  const ErgodicityResult res = ergodicity_tv(ev.kernel, u, 1, 6);

  CHECK(res.theta == 1 - Rat(1, 1000));  // min entry 1/10, 2k+1 = 3
  REQUIRE(res.distance.size() == 7);
  CHECK(res.distance[0] == Rat(7, 4));  // point mass vs uniform on 8 states
  for (std::size_t t = 0; t < res.distance.size(); ++t) {
    CHECK(res.distance[t] <= res.bound[t]);
    if (t > 0) CHECK(res.distance[t] <= res.distance[t - 1]);
  }
  CHECK(res.distance[6] < res.distance[0]);
}

TEST_CASE("chain experiments guard their domain") {
  const ProbVector p = pv("1/2,1/2");
  try {
    ergodicity_tv(xor_kernel(), p, 1, 2);
    FAIL("expected NonPositiveRates");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_positive_rates);
  }
  const EightVertex ev = eight_vertex_kernel(Rat(9), Rat(2), Rat(1), Rat(8));
  try {
    ergodicity_tv(ev.kernel, p, 12, 2);  // 2^25 states
    FAIL("expected StateSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::state_space_too_large);
  }
}

TEST_CASE("rendering produces a valid binary image") {
  const ProbVector p = pv("1/2,1/2");
  const SpaceTimeWindow w = sample_diagram(product_kernel(p), p, InitHzpm{},
                                           BoundaryIidP{}, 6, 4, 5);
  const std::string pgm = render_pgm(w);
  CHECK(pgm.substr(0, 3) == "P5\n");
  CHECK(pgm.find("6 4") != std::string::npos);
  // Header + one byte per pixel.
  CHECK(pgm.size() > 6 * 4);
  const std::string tail = pgm.substr(pgm.size() - 24);
  for (char byte : tail) {
    const unsigned char v = static_cast<unsigned char>(byte);
    CHECK((v == 0 || v == 255 || v == 127 || v == 128));
  }
}
