#include <doctest.h>

#include <vector>

#include "error.hpp"
#include "invariance.hpp"
#include "models.hpp"
#include "reversibility.hpp"
#include "test_util.hpp"

using namespace pca;
using testutil::no_product_kernel;
using testutil::product_kernel;
using testutil::pv;

namespace {

// F = B with all rows equal to p: the product measure written as a
// two-matrix zigzag chain.  Its invariant vector is p itself.
HzmcSpec product_spec(const ProbVector& p) {
  std::vector<Rat> rows;
  for (std::size_t i = 0; i < p.n(); ++i)
    rows.insert(rows.end(), p.entries().begin(), p.entries().end());
  StochasticMatrix m(p.n(), rows);
  return HzmcSpec(m, m);
}

const TransitionKernel& bin_r_kernel() {
  static const auto pair =
      binary_family(FamilyId::bin_r, Rat(2), {Rat(3, 4), Rat(4, 5)});
  return pair.first;
}

const ProbVector& bin_r_measure() {
  static const auto pair =
      binary_family(FamilyId::bin_r, Rat(2), {Rat(3, 4), Rat(4, 5)});
  return pair.second;
}

}  // namespace

TEST_CASE("condition names parse and print") {
  CHECK(cond_name(Cond::hzpm) == "HZPM");
  CHECK(cond_parse("RINV") == Cond::rinv);
  CHECK(cond_parse("HZMC_R") == Cond::hzmc_r);
  CHECK_FALSE(cond_parse("bogus").has_value());
}

TEST_CASE("product-measure conditions hold and fail with exact witnesses") {
  const EightVertex ev =
      eight_vertex_kernel(Rat(9), Rat(2), Rat(1), Rat(8));
  const ProbVector u = ProbVector::uniform(2);

  CHECK(check_condition(ev.kernel, u, Cond::hzpm).holds);

  // q + (1-r) = 9/10 + 4/5 != 1, so east-sums are not stochastic.
  const CheckResult r = check_condition(ev.kernel, u, Cond::r);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->tuple == "a=0,b=0,d=0");
  CHECK(r.witness->lhs == Rat(1, 2));
  // sum_c p(c) T(0,0,c;0) = (1/5 + 1/10) / 2.
  CHECK(r.witness->rhs == Rat(3, 20));
}

TEST_CASE("the two-parameter binary example separates the three conditions") {
  const TransitionKernel& t = bin_r_kernel();
  const ProbVector& p = bin_r_measure();
  REQUIRE(p == pv("1/3,2/3"));

  CHECK(check_condition(t, p, Cond::hzpm).holds);
  CHECK(check_condition(t, p, Cond::r).holds);

  const CheckResult rinv = check_condition(t, p, Cond::rinv);
  CHECK_FALSE(rinv.holds);
  REQUIRE(rinv.witness.has_value());
  CHECK(rinv.witness->tuple == "b=0,c=0,d=0");
  CHECK(rinv.witness->lhs == Rat(1, 3));
  // sum_a p(a) T(a,0,0;0) = (1/3)(3/4) + (2/3)(4/5).
  CHECK(rinv.witness->rhs == Rat(47, 60));
}

TEST_CASE("invariant product measures are found exactly when they exist") {
  const ProbVector p = pv("1/2,1/3,1/6");
  const auto found = find_hzpm(product_kernel(p));
  REQUIRE(found.has_value());
  CHECK(*found == p);

  const EightVertex ev =
      eight_vertex_kernel(Rat(9), Rat(2), Rat(1), Rat(8));
  const auto ev_p = find_hzpm(ev.kernel);
  REQUIRE(ev_p.has_value());
  CHECK(*ev_p == ProbVector::uniform(2));

  CHECK_FALSE(find_hzpm(no_product_kernel()).has_value());
}

TEST_CASE("zigzag pushforward reproduces the product law iff invariant") {
  const TransitionKernel& t = bin_r_kernel();
  const ProbVector& p = bin_r_measure();

  for (std::size_t k : {2, 3}) {
    const FiniteDistribution pushed = zigzag_pushforward(t, p, k);
    const FiniteDistribution target = product_distribution(p, 2 * k - 1);
    CHECK(pushed.weights == target.weights);
  }

  // k = 1 would carry a single cell through zero kernel applications.
  CHECK_THROWS_AS(zigzag_pushforward(t, p, 1), Error);

  const ProbVector u = ProbVector::uniform(2);
  const FiniteDistribution drifted =
      zigzag_pushforward(no_product_kernel(), u, 2);
  CHECK_FALSE(drifted.weights == product_distribution(u, 3).weights);
  CHECK(drifted.total() == 1);
}

TEST_CASE("zigzag chain specs validate commutation and the fixed vector") {
  const StochasticMatrix f(2, {Rat(1, 2), Rat(1, 2), Rat(1, 4), Rat(3, 4)});
  const StochasticMatrix b(2, {Rat(3, 4), Rat(1, 4), Rat(1, 8), Rat(7, 8)});
  // b = (I + f) / 2 commutes with f and shares its fixed vector.
  const HzmcSpec spec(f, b);
  CHECK(spec.rho() == pv("1/3,2/3"));
  CHECK(commuting_invariant_vector(f, b) == pv("1/3,2/3"));

  const StochasticMatrix flat(2,
                              {Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)});
  CHECK_THROWS_AS(HzmcSpec(f, flat), Error);  // FB != BF
  try {
    HzmcSpec ignored(f, flat);
    (void)ignored;
  } catch (const Error& e) {
    CHECK(e.code() == Errc::commutation_violation);
  }

  // Identity pair: the fixed space is two-dimensional.
  const StochasticMatrix id2(2, {Rat(1), Rat(0), Rat(0), Rat(1)});
  try {
    HzmcSpec ignored(id2, id2);
    (void)ignored;
    FAIL("expected EigenvectorNotUnique");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::eigenvector_not_unique);
  }

  // Unique fixed vector but not positive: (1, 0) for the absorbing pair.
  const StochasticMatrix absorb(2, {Rat(1), Rat(0), Rat(1), Rat(0)});
  try {
    HzmcSpec ignored(absorb, absorb);
    (void)ignored;
    FAIL("expected NonPositiveRates");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_positive_rates);
  }
}

TEST_CASE("Markov-measure conditions agree with product conditions when the "
          "chain is the product measure") {
  // With F = B = rows-p, Cond.4 reduces to Cond.1, Cond.5 to Cond.2,
  // Cond.6 to Cond.3, Cond.7 to Cond.3 and Cond.8 to Cond.2.
  const HzmcSpec spec = product_spec(bin_r_measure());
  const TransitionKernel& t = bin_r_kernel();

  CHECK(check_hzmc_condition(t, spec, Cond::hzmc).holds);
  CHECK(check_hzmc_condition(t, spec, Cond::hzmc_r).holds);
  CHECK_FALSE(check_hzmc_condition(t, spec, Cond::hzmc_rinv).holds);
  CHECK_FALSE(check_hzmc_condition(t, spec, Cond::eig_f).holds);
  CHECK(check_hzmc_condition(t, spec, Cond::eig_b).holds);

  const auto mirrored =
      binary_family(FamilyId::bin_rinv, Rat(2), {Rat(3, 4), Rat(4, 5)});
  const HzmcSpec spec2 = product_spec(mirrored.second);
  CHECK(check_hzmc_condition(mirrored.first, spec2, Cond::hzmc).holds);
  CHECK_FALSE(check_hzmc_condition(mirrored.first, spec2, Cond::hzmc_r).holds);
  CHECK(check_hzmc_condition(mirrored.first, spec2, Cond::hzmc_rinv).holds);
  CHECK(check_hzmc_condition(mirrored.first, spec2, Cond::eig_f).holds);
  CHECK_FALSE(check_hzmc_condition(mirrored.first, spec2, Cond::eig_b).holds);
}

TEST_CASE("zigzag path probabilities multiply F and B steps") {
  const StochasticMatrix f(2, {Rat(1, 2), Rat(1, 2), Rat(1, 4), Rat(3, 4)});
  const StochasticMatrix b(2, {Rat(3, 4), Rat(1, 4), Rat(1, 8), Rat(7, 8)});
  const HzmcSpec spec(f, b);  // rho = (1/3, 2/3)

  CHECK(hzmc_zigzag_probability(spec, {true}, {0, 1}) == Rat(1, 6));
  CHECK(hzmc_zigzag_probability(spec, {false}, {0, 1}) == Rat(1, 12));
  CHECK(hzmc_zigzag_probability(spec, {true, false}, {1, 0, 1}) ==
        Rat(2, 3) * Rat(1, 4) * Rat(1, 4));

  Rat total = 0;
  for (Symbol x = 0; x < 2; ++x)
    for (Symbol y = 0; y < 2; ++y)
      for (Symbol z = 0; z < 2; ++z)
        total += hzmc_zigzag_probability(spec, {true, false}, {x, y, z});
  CHECK(total == 1);
}

TEST_CASE("chain extraction recovers the product chain of a product kernel") {
  const ProbVector p = pv("1/4,3/4");
  const TransitionKernel t = product_kernel(p);

  const HzmcSpec candidate = hzmc_candidate(t);
  CHECK(candidate.rho() == p);
  for (Symbol a = 0; a < 2; ++a)
    for (Symbol d = 0; d < 2; ++d) {
      CHECK(candidate.f()(a, d) == p[d]);
      CHECK(candidate.b()(a, d) == p[d]);
    }

  const auto extraction = hzmc_from_kernel(t);
  REQUIRE(extraction.has_value());
  CHECK(extraction->t_r == t);
  CHECK(extraction->t_rinv == t);
}

TEST_CASE("chain extraction declines kernels whose eigen pair does not "
          "commute") {
  // The two-parameter r-quasi-reversible example has F rows
  // (16/21, 5/21) and (4/9, 5/9) against B rows both (1/3, 2/3); the
  // pair does not commute, so no chain candidate exists.
  CHECK_FALSE(hzmc_from_kernel(bin_r_kernel()).has_value());
  CHECK_THROWS_AS(hzmc_candidate(bin_r_kernel()), Error);
}
