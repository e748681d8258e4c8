#include <doctest.h>

#include <array>
#include <functional>
#include <set>
#include <vector>

#include "error.hpp"
#include "json_io.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "reversibility.hpp"
#include "test_util.hpp"
#include "types.hpp"

using namespace pca;
using testutil::product_kernel;
using testutil::pv;
using testutil::rq;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("rational parsing accepts fractions, integers and decimals") {
  CHECK(rat_parse("3/4") == Rat(3, 4));
  CHECK(rat_parse("-1/2") == Rat(-1, 2));
  CHECK(rat_parse("7") == 7);
  CHECK(rat_parse("-12") == -12);
  CHECK(rat_parse("0.25") == Rat(1, 4));
  CHECK(rat_parse("0.1") == Rat(1, 10));  // exact, not a binary float
  CHECK(rat_parse("-1.5") == Rat(-3, 2));
  CHECK(rat_parse("2.5e-3") == Rat(1, 400));
  CHECK(rat_parse("1e2") == 100);
  CHECK(rat_parse(" 9/12 ") == Rat(3, 4));  // canonicalized
}

TEST_CASE("rational parsing rejects malformed input") {
  CHECK(code_of([] { rat_parse("abc"); }) == Errc::parse);
  CHECK(code_of([] { rat_parse(""); }) == Errc::parse);
  CHECK(code_of([] { rat_parse("1/0"); }) == Errc::parse);
  CHECK(code_of([] { rat_parse("1//2"); }) == Errc::parse);
  CHECK(code_of([] { rat_parse("1.2.3"); }) == Errc::parse);
}

TEST_CASE("rational formatting is canonical") {
  CHECK(rat_str(Rat(3, 4)) == "3/4");
  CHECK(rat_str(Rat(5)) == "5");
  CHECK(rat_str(Rat(-7, 3)) == "-7/3");
  CHECK(rat_str(rat_parse("6/8")) == "3/4");
  CHECK(rat_parse(rat_str(Rat(22, 7))) == Rat(22, 7));
}

TEST_CASE("csv parsing splits and trims") {
  const auto xs = rat_parse_csv("1/2, 1/3 ,1/6");
  REQUIRE(xs.size() == 3);
  CHECK(xs[0] == Rat(1, 2));
  CHECK(xs[1] == Rat(1, 3));
  CHECK(xs[2] == Rat(1, 6));
}

TEST_CASE("probability vectors validate their entries") {
  const ProbVector p = pv("1/2,1/3,1/6");
  CHECK(p.n() == 3);
  CHECK(p[1] == Rat(1, 3));
  CHECK(p.positive());
  CHECK(p.min_entry() == Rat(1, 6));
  CHECK(p.str() == "1/2,1/3,1/6");

  const ProbVector u = ProbVector::uniform(4);
  CHECK(u[3] == Rat(1, 4));

  const ProbVector zero_entry = pv("0,1");
  CHECK_FALSE(zero_entry.positive());

  CHECK(code_of([] { pv("1/2,1/3"); }) == Errc::not_normalized);
  CHECK(code_of([] {
          ProbVector(std::vector<Rat>{Rat(-1, 2), Rat(3, 2)});
        }) == Errc::negative_entry);
}

TEST_CASE("stochastic matrices validate rows and multiply exactly") {
  const StochasticMatrix m(2, {Rat(1, 2), Rat(1, 2), Rat(1, 4), Rat(3, 4)});
  CHECK(m(1, 0) == Rat(1, 4));
  CHECK(m.positive());

  const StochasticMatrix mm = m.multiply(m);
  CHECK(mm(0, 0) == Rat(3, 8));
  CHECK(mm(0, 1) == Rat(5, 8));
  CHECK(mm(1, 0) == Rat(5, 16));
  CHECK(mm(1, 1) == Rat(11, 16));

  CHECK(code_of([] {
          StochasticMatrix(2, {Rat(1, 2), Rat(1, 3), Rat(1, 4), Rat(3, 4)});
        }) == Errc::row_not_stochastic);
}

TEST_CASE("kernels use d-contiguous storage") {
  // Distinct row profiles make index mistakes visible.
  std::vector<Rat> e;
  for (int row = 0; row < 8; ++row) {
    const Rat x = Rat(row + 1) / Rat(10);
    e.push_back(x);
    e.push_back(1 - x);
  }
  const TransitionKernel t(2, std::move(e));
  CHECK(t(0, 0, 0, 0) == Rat(1, 10));
  CHECK(t(0, 0, 1, 0) == Rat(1, 5));  // c advances before b
  CHECK(t(0, 1, 0, 0) == Rat(3, 10));
  CHECK(t(1, 0, 0, 0) == Rat(1, 2));
  CHECK(t(1, 1, 1, 1) == Rat(1) - Rat(4) / Rat(5));
  CHECK(t.positive_rates());
  CHECK(t.min_entry() == Rat(1, 10));
  CHECK(t.entries().size() == 16);

  CHECK_FALSE(testutil::xor_kernel().positive_rates());

  CHECK(code_of([] {
          std::vector<Rat> bad(16, Rat(1, 2));
          bad[3] = Rat(1, 3);  // row (0,0,1) sums to 5/6
          TransitionKernel(2, std::move(bad));
        }) == Errc::row_not_stochastic);
}

TEST_CASE("square symmetries act faithfully on tuples") {
  const std::array<Symbol, 4> x = {0, 1, 2, 3};
  CHECK(dihedral_apply(Dihedral::id, x) == std::array<Symbol, 4>{0, 1, 2, 3});
  CHECK(dihedral_apply(Dihedral::r, x) == std::array<Symbol, 4>{3, 0, 1, 2});
  CHECK(dihedral_apply(Dihedral::r2, x) == std::array<Symbol, 4>{2, 3, 0, 1});
  CHECK(dihedral_apply(Dihedral::r3, x) == std::array<Symbol, 4>{1, 2, 3, 0});
  CHECK(dihedral_apply(Dihedral::v, x) == std::array<Symbol, 4>{2, 1, 0, 3});
  CHECK(dihedral_apply(Dihedral::h, x) == std::array<Symbol, 4>{0, 3, 2, 1});
  CHECK(dihedral_apply(Dihedral::rv, x) == std::array<Symbol, 4>{3, 2, 1, 0});
  CHECK(dihedral_apply(Dihedral::r3v, x) == std::array<Symbol, 4>{1, 0, 3, 2});

  std::set<std::array<int, 4>> seen;
  for (Dihedral g : kDihedralAll) seen.insert(dihedral_sigma(g));
  CHECK(seen.size() == 8);
}

TEST_CASE("square symmetries form a group of order eight") {
  CHECK(dihedral_compose(Dihedral::r, Dihedral::r) == Dihedral::r2);
  CHECK(dihedral_compose(Dihedral::r2, Dihedral::r) == Dihedral::r3);
  CHECK(dihedral_compose(Dihedral::r2, Dihedral::r2) == Dihedral::id);
  CHECK(dihedral_compose(Dihedral::v, Dihedral::v) == Dihedral::id);
  // v-then-h and h-then-v are both the half turn.
  CHECK(dihedral_compose(Dihedral::h, Dihedral::v) == Dihedral::r2);
  CHECK(dihedral_compose(Dihedral::v, Dihedral::h) == Dihedral::r2);
  CHECK(dihedral_inverse(Dihedral::r) == Dihedral::r3);
  CHECK(dihedral_inverse(Dihedral::v) == Dihedral::v);

  for (Dihedral g : kDihedralAll) {
    CHECK(dihedral_compose(g, dihedral_inverse(g)) == Dihedral::id);
    CHECK(dihedral_compose(dihedral_inverse(g), g) == Dihedral::id);
    CHECK(dihedral_parse(dihedral_name(g)) == g);
    // compose matches the composition of tuple actions (h applied first).
    for (Dihedral h : kDihedralAll) {
      const std::array<Symbol, 4> probe = {0, 1, 2, 3};
      CHECK(dihedral_apply(dihedral_compose(g, h), probe) ==
            dihedral_apply(g, dihedral_apply(h, probe)));
    }
  }
}

TEST_CASE("kernel JSON round trip preserves entries, measure and hash") {
  const auto [t, p] =
      binary_family(FamilyId::bin_r, Rat(2), {Rat(3, 4), Rat(4, 5)});

  const std::string with_p = kernel_to_json(t, p);
  const KernelFile back = kernel_from_json(with_p);
  CHECK(back.kernel == t);
  REQUIRE(back.p.has_value());
  CHECK(*back.p == p);
  CHECK(kernel_hash(back.kernel) == kernel_hash(t));

  const std::string without_p = kernel_to_json(t, std::nullopt);
  CHECK_FALSE(kernel_from_json(without_p).p.has_value());

  // The digest depends on the kernel alone, not on the attachment.
  CHECK(kernel_hash(kernel_from_json(without_p).kernel) == kernel_hash(t));
  CHECK(kernel_hash(product_kernel(pv("1/3,2/3"))) != kernel_hash(t));
}

TEST_CASE("kernel JSON parsing reports malformed documents") {
  CHECK(code_of([] { kernel_from_json("not json at all"); }) == Errc::parse);
  CHECK(code_of([] { kernel_from_json("{\"n\": 2}"); }) == Errc::parse);
  CHECK(code_of([] {
          kernel_from_json(
              "{\"n\": 2, \"T\": {\"0,0,0\": [\"1/2\", \"1/2\"]}}");
        }) == Errc::parse);  // seven rows missing
  CHECK(code_of([] { kernel_load("/nonexistent/path.json"); }) == Errc::io);
}

TEST_CASE("rank, affine solving and fixed vectors are exact") {
  RatMatrix id3(3, 3);
  for (int i = 0; i < 3; ++i) id3.at(i, i) = 1;
  CHECK(rat_rank(id3) == 3);

  RatMatrix rank1(2, 3);
  for (int j = 0; j < 3; ++j) {
    rank1.at(0, j) = Rat(j + 1);
    rank1.at(1, j) = Rat(2 * (j + 1));
  }
  CHECK(rat_rank(rank1) == 1);

  SUBCASE("unique solution") {
    RatMatrix a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = -1;
    const auto sol = rat_solve(a, {Rat(1), Rat(0)});
    REQUIRE(sol.has_value());
    CHECK(sol->particular == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
    CHECK(sol->kernel_basis.empty());
  }

  SUBCASE("underdetermined system") {
    RatMatrix a(1, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    const auto sol = rat_solve(a, {Rat(1)});
    REQUIRE(sol.has_value());
    CHECK(sol->particular[0] + sol->particular[1] == 1);
    REQUIRE(sol->kernel_basis.size() == 1);
    CHECK(sol->kernel_basis[0][0] + sol->kernel_basis[0][1] == 0);
    CHECK_FALSE(sol->kernel_basis[0][0] == 0);
  }

  SUBCASE("inconsistent system") {
    RatMatrix a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = 1;
    CHECK_FALSE(rat_solve(a, {Rat(1), Rat(2)}).has_value());
  }

  SUBCASE("invariant vector of a stochastic matrix") {
    RatMatrix m(2, 2);
    m.at(0, 0) = Rat(1, 2);
    m.at(0, 1) = Rat(1, 2);
    m.at(1, 0) = Rat(1, 4);
    m.at(1, 1) = Rat(3, 4);
    const auto fixed = left_fixed_vectors(m);
    REQUIRE(fixed.size() == 1);
    // Proportional to (1/3, 2/3).
    CHECK(fixed[0][1] == 2 * fixed[0][0]);
  }
}
