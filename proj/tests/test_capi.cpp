#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <string>

#include "pca.h"

namespace {

// Owning wrapper so failed assertions cannot leak handles.
struct Str {
  char* p = nullptr;
  ~Str() { pca_string_free(p); }
  std::string view() const { return p ? std::string(p) : std::string(); }
};

struct Kernel {
  pca_kernel* p = nullptr;
  ~Kernel() { pca_kernel_free(p); }
};

struct ProbVec {
  pca_probvec* p = nullptr;
  ~ProbVec() { pca_probvec_free(p); }
};

struct Window {
  pca_window* p = nullptr;
  ~Window() { pca_window_free(p); }
};

const char* kExampleJson =
    "{\"n\": 2, \"p\": [\"1/3\", \"2/3\"], \"T\": {"
    "\"0,0,0\": [\"3/4\", \"1/4\"],"
    "\"0,0,1\": [\"1/8\", \"7/8\"],"
    "\"0,1,0\": [\"1/8\", \"7/8\"],"
    "\"0,1,1\": [\"7/16\", \"9/16\"],"
    "\"1,0,0\": [\"4/5\", \"1/5\"],"
    "\"1,0,1\": [\"1/10\", \"9/10\"],"
    "\"1,1,0\": [\"1/10\", \"9/10\"],"
    "\"1,1,1\": [\"9/20\", \"11/20\"]}}";

}  // namespace

TEST_CASE("version and error strings are stable") {
  REQUIRE(pca_version() != nullptr);
  CHECK(std::string(pca_version()) == "0.1.0");
  pca_string_free(nullptr);  // free functions tolerate NULL
  pca_kernel_free(nullptr);
  pca_probvec_free(nullptr);
  pca_window_free(nullptr);
}

TEST_CASE("kernel JSON crosses the boundary intact") {
  Kernel k;
  ProbVec p;
  REQUIRE(pca_kernel_from_json(kExampleJson, &k.p, &p.p) == PCA_OK);
  REQUIRE(k.p != nullptr);
  REQUIRE(p.p != nullptr);
  CHECK(pca_kernel_n(k.p) == 2);
  CHECK(pca_probvec_n(p.p) == 2);

  Str entry;
  REQUIRE(pca_kernel_entry(k.p, 0, 1, 1, 0, &entry.p) == PCA_OK);
  CHECK(entry.view() == "7/16");

  Str pe;
  REQUIRE(pca_probvec_entry(p.p, 1, &pe.p) == PCA_OK);
  CHECK(pe.view() == "2/3");

  Str json;
  REQUIRE(pca_kernel_to_json(k.p, p.p, &json.p) == PCA_OK);
  Kernel k2;
  ProbVec p2;
  REQUIRE(pca_kernel_from_json(json.p, &k2.p, &p2.p) == PCA_OK);
  CHECK(pca_kernel_equal(k.p, k2.p) == 1);

  Str h1, h2;
  REQUIRE(pca_kernel_hash_hex(k.p, &h1.p) == PCA_OK);
  REQUIRE(pca_kernel_hash_hex(k2.p, &h2.p) == PCA_OK);
  CHECK(h1.view() == h2.view());
  CHECK(h1.view().size() == 16);

  CHECK(pca_kernel_positive_rates(k.p) == 1);
}

TEST_CASE("failures set a status and a readable message") {
  Kernel k;
  CHECK(pca_kernel_from_json("definitely not json", &k.p, nullptr) ==
        PCA_EPARSE);
  REQUIRE(pca_last_error() != nullptr);
  CHECK(std::strlen(pca_last_error()) > 0);

  ProbVec p;
  CHECK(pca_probvec_parse("1/2,1/3", &p.p) == PCA_ENOT_NORMALIZED);
  CHECK(pca_probvec_parse("abc", &p.p) == PCA_EPARSE);
  CHECK(pca_kernel_from_json(nullptr, &k.p, nullptr) == PCA_EINVAL);
  CHECK(pca_kernel_n(nullptr) == 0);
}

TEST_CASE("condition checks run through the C surface") {
  Kernel k;
  ProbVec p;
  REQUIRE(pca_kernel_from_json(kExampleJson, &k.p, &p.p) == PCA_OK);

  int holds = -1;
  Str line;
  REQUIRE(pca_check(k.p, p.p, "HZPM", &holds, &line.p) == PCA_OK);
  CHECK(holds == 1);
  CHECK(line.view() == "Cond.1: HOLDS");

  int holds3 = -1;
  Str line3;
  REQUIRE(pca_check(k.p, p.p, "RINV", &holds3, &line3.p) == PCA_OK);
  CHECK(holds3 == 0);
  CHECK(line3.view().find("FAILS at (b=0,c=0,d=0)") != std::string::npos);

  CHECK(pca_check(k.p, p.p, "NOPE", &holds, nullptr) == PCA_EINVAL);

  ProbVec found;
  int any = 0;
  REQUIRE(pca_find_p(k.p, &found.p, &any) == PCA_OK);
  CHECK(any == 1);
  REQUIRE(found.p != nullptr);
  Str csv;
  REQUIRE(pca_probvec_to_csv(found.p, &csv.p) == PCA_OK);
  CHECK(csv.view() == "1/3,2/3");
}

TEST_CASE("rotations, families and dimensions cross the boundary") {
  Kernel k;
  ProbVec p;
  REQUIRE(pca_kernel_from_json(kExampleJson, &k.p, &p.p) == PCA_OK);

  Kernel rotated;
  REQUIRE(pca_reverse(k.p, p.p, "r", &rotated.p) == PCA_OK);
  Str entry;
  REQUIRE(pca_kernel_entry(rotated.p, 1, 0, 1, 0, &entry.p) == PCA_OK);
  CHECK(entry.view() == "7/16");

  Kernel bad;
  CHECK(pca_reverse(k.p, p.p, "r3", &bad.p) == PCA_EPRECONDITION);

  long long dim = 0;
  REQUIRE(pca_family_dimension("REV_D4", 2, &dim) == PCA_OK);
  CHECK(dim == 1);
  CHECK(pca_family_dimension("REV_XX", 2, &dim) == PCA_EINVAL);

  unsigned long long orbits = 0;
  REQUIRE(pca_family_orbit_count("REV_R", 3, &orbits) == PCA_OK);
  CHECK(orbits == 6);

  ProbVec law;
  REQUIRE(pca_probvec_parse("1/3,2/3", &law.p) == PCA_OK);
  Kernel member;
  REQUIRE(pca_gen_member("REV_V", law.p, "1/16,-1/8,3/16", "1/32",
                         &member.p) == PCA_OK);
  Kernel back;
  REQUIRE(pca_reverse(member.p, law.p, "v", &back.p) == PCA_OK);
  CHECK(pca_kernel_equal(member.p, back.p) == 1);

  Kernel bk;
  ProbVec bp;
  REQUIRE(pca_binary_family("BIN_R", "2", "3/4,4/5", &bk.p, &bp.p) ==
          PCA_OK);
  CHECK(pca_kernel_equal(bk.p, k.p) == 1);
}

TEST_CASE("reports render through the C surface") {
  Kernel k;
  ProbVec p;
  REQUIRE(pca_kernel_from_json(kExampleJson, &k.p, &p.p) == PCA_OK);

  Str report;
  REQUIRE(pca_reversibility_report(k.p, p.p, &report.p) == PCA_OK);
  CHECK(report.view().find("quasi-reversible") != std::string::npos);

  Str marginals;
  REQUIRE(pca_marginals_report(k.p, p.p, 1, &marginals.p) == PCA_OK);
  CHECK(marginals.view().find("probability") != std::string::npos);

  Str provenance;
  REQUIRE(pca_provenance(k.p, 0, 0, &provenance.p) == PCA_OK);
  CHECK(provenance.view().find("# version=") != std::string::npos);
  CHECK(provenance.view().find("# kernel-hash=") != std::string::npos);
}

TEST_CASE("chain extraction reports success and failure") {
  Kernel k;
  REQUIRE(pca_kernel_from_json(kExampleJson, &k.p, nullptr) == PCA_OK);
  int found = -1;
  Str report;
  Kernel tr, trinv;
  REQUIRE(pca_hzmc_extract(k.p, &found, &report.p, &tr.p, &trinv.p) ==
          PCA_OK);
  CHECK(found == 0);  // the example kernel has no chain-form measure
  CHECK(tr.p == nullptr);
  CHECK(trinv.p == nullptr);
}

TEST_CASE("simulation, windows and images cross the boundary") {
  Kernel k;
  ProbVec p;
  REQUIRE(pca_kernel_from_json(kExampleJson, &k.p, &p.p) == PCA_OK);

  Window w;
  REQUIRE(pca_simulate(k.p, p.p, "hzpm", "iid", 12, 10, 42, &w.p) ==
          PCA_OK);
  CHECK(pca_window_width(w.p) == 12);
  CHECK(pca_window_height(w.p) == 10);
  CHECK(pca_window_n(w.p) == 2);
  CHECK(pca_window_at(w.p, 1, 0) == -1);  // hole
  const int cell = pca_window_at(w.p, 2, 0);
  CHECK(cell >= 0);
  CHECK(cell <= 1);

  Str text;
  REQUIRE(pca_window_text(w.p, &text.p) == PCA_OK);
  CHECK(text.view().find('.') != std::string::npos);

  char* bytes = nullptr;
  size_t len = 0;
  REQUIRE(pca_render_pgm(w.p, &bytes, &len) == PCA_OK);
  REQUIRE(bytes != nullptr);
  CHECK(len > 120);
  CHECK(bytes[0] == 'P');
  CHECK(bytes[1] == '5');
  std::free(bytes);

  // Same seed, same diagram.
  Window w2;
  REQUIRE(pca_simulate(k.p, p.p, "hzpm", "iid", 12, 10, 42, &w2.p) ==
          PCA_OK);
  CHECK(pca_window_at(w2.p, 2, 0) == cell);

  CHECK(pca_simulate(k.p, p.p, "hzpm", "periodic", 11, 10, 42, &w2.p) ==
        PCA_EODD_WIDTH_PERIODIC);
  CHECK(pca_simulate(k.p, p.p, "constant:9", "iid", 12, 10, 42, &w2.p) ==
        PCA_EINVAL);
}

TEST_CASE("line diagnostics and ergodicity run end to end") {
  Kernel k;
  ProbVec p;
  ProbVec u;
  REQUIRE(pca_probvec_parse("1/2,1/2", &u.p) == PCA_OK);
  REQUIRE(pca_eight_vertex("1", "1", "4", "4", &k.p, nullptr, nullptr) ==
          PCA_OK);

  int all_pass = -1;
  Str lines;
  REQUIRE(pca_lines_test(k.p, u.p, "hzpm", "iid", 80, 60, 7, 2,
                         "horizontal:30;vertical:40", 0.01, &all_pass,
                         &lines.p) == PCA_OK);
  CHECK((all_pass == 0 || all_pass == 1));
  CHECK(lines.view().find("horizontal:30") != std::string::npos);

  Str ergo;
  REQUIRE(pca_ergodicity_report(k.p, u.p, 1, 8, &ergo.p) == PCA_OK);
  CHECK(ergo.view().find("theta") != std::string::npos);
}

TEST_CASE("model constructors cross the boundary") {
  Kernel ev;
  Str q, r;
  REQUIRE(pca_eight_vertex("9", "2", "1", "8", &ev.p, &q.p, &r.p) == PCA_OK);
  CHECK(q.view() == "9/10");
  CHECK(r.view() == "1/5");
  CHECK(pca_eight_vertex("9", "2", "2", "8", &ev.p, nullptr, nullptr) ==
        PCA_ECONSTRAINT);

  double gs = 0, gt = 0, residual = 1;
  REQUIRE(pca_animals_gf(-0.1, &gs, &gt, &residual) == PCA_OK);
  CHECK(gs < 0);
  CHECK(residual < 1e-12);
  CHECK(pca_animals_gf(0.3, &gs, &gt, &residual) == PCA_EOUT_OF_DOMAIN);

  Kernel animals;
  REQUIRE(pca_animals_kernel("square", "1/10", &animals.p) == PCA_OK);
  Str entry;
  REQUIRE(pca_kernel_entry(animals.p, 0, 1, 0, 1, &entry.p) == PCA_OK);
  CHECK(entry.view() == "1/10");

  Str law;
  REQUIRE(pca_tasep_gap_law("1/2", "1/2", "1/2", "1/2", "3/10", 10,
                            &law.p) == PCA_OK);
  CHECK(law.view().find("4/7") != std::string::npos);
  CHECK(law.view().find("7/4") != std::string::npos);

  Str sim;
  REQUIRE(pca_tasep_simulate("1/2", "1/2", "1/2", "1/2", "3/10", 400, 20, 3,
                             &sim.p) == PCA_OK);
  CHECK(sim.view().find("gap-samples") != std::string::npos);

  Str ring;
  REQUIRE(pca_tasep_ring("1/2", "1/2", "1/2", "1/2", 100, 3, 50, 3,
                         &ring.p) == PCA_OK);
  CHECK(ring.view().find("conserved") != std::string::npos);
}
