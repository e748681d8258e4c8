#include "pca.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "invariance.hpp"
#include "json_io.hpp"
#include "marginals.hpp"
#include "models.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "reversibility.hpp"
#include "simulate.hpp"
#include "types.hpp"

struct pca_kernel {
  pca::TransitionKernel v;
};
struct pca_probvec {
  pca::ProbVector v;
};
struct pca_window {
  pca::SpaceTimeWindow v;
};

namespace {

thread_local std::string g_last_error;

pca_status map_code(pca::Errc code) {
  using pca::Errc;
  switch (code) {
    case Errc::invalid_argument: return PCA_EINVAL;
    case Errc::parse: return PCA_EPARSE;
    case Errc::io: return PCA_EIO;
    case Errc::negative_entry: return PCA_ENEGATIVE_ENTRY;
    case Errc::not_normalized: return PCA_ENOT_NORMALIZED;
    case Errc::row_not_stochastic: return PCA_EROW_NOT_STOCHASTIC;
    case Errc::alphabet_mismatch: return PCA_EALPHABET_MISMATCH;
    case Errc::non_positive_rates: return PCA_ENON_POSITIVE_RATES;
    case Errc::commutation_violation: return PCA_ECOMMUTATION;
    case Errc::eigenvector_not_unique: return PCA_EEIGENVECTOR_NOT_UNIQUE;
    case Errc::precondition_failed: return PCA_EPRECONDITION;
    case Errc::not_triangular: return PCA_ENOT_TRIANGULAR;
    case Errc::param_out_of_range: return PCA_EPARAM_RANGE;
    case Errc::epsilon_too_large: return PCA_EEPSILON_TOO_LARGE;
    case Errc::dimension_mismatch: return PCA_EDIMENSION_MISMATCH;
    case Errc::internal_disagreement: return PCA_EINTERNAL;
    case Errc::invalid_polyline: return PCA_EINVALID_POLYLINE;
    case Errc::odd_width_periodic: return PCA_EODD_WIDTH_PERIODIC;
    case Errc::state_space_too_large: return PCA_ESTATE_SPACE_TOO_LARGE;
    case Errc::insufficient_samples: return PCA_EINSUFFICIENT_SAMPLES;
    case Errc::constraint_violated: return PCA_ECONSTRAINT;
    case Errc::divergent: return PCA_EDIVERGENT;
    case Errc::out_of_domain: return PCA_EOUT_OF_DOMAIN;
  }
  return PCA_EUNKNOWN;
}

template <typename F>
pca_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return PCA_OK;
  } catch (const pca::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PCA_EUNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return PCA_EUNKNOWN;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_string(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

void require(bool ok, const char* message) {
  if (!ok) pca::fail(pca::Errc::invalid_argument, message);
}

const pca::TransitionKernel& kernel_of(const pca_kernel* k) {
  require(k != nullptr, "InvalidArgument: kernel handle is NULL");
  return k->v;
}

const pca::ProbVector& probvec_of(const pca_probvec* p) {
  require(p != nullptr, "InvalidArgument: probability handle is NULL");
  return p->v;
}

const pca::SpaceTimeWindow& window_of(const pca_window* w) {
  require(w != nullptr, "InvalidArgument: window handle is NULL");
  return w->v;
}

pca::Rat rat_of(const char* text, const char* what) {
  require(text != nullptr, what);
  return pca::rat_parse(text);
}

std::vector<pca::Rat> csv_of(const char* text) {
  if (!text || !*text) return {};
  return pca::rat_parse_csv(text);
}

pca::Cond cond_of(const char* name) {
  require(name != nullptr, "InvalidArgument: condition name is NULL");
  auto cond = pca::cond_parse(name);
  if (!cond)
    pca::fail(pca::Errc::invalid_argument,
              std::string("InvalidArgument: unknown condition '") + name +
                  "'");
  return *cond;
}

pca::Dihedral dihedral_of(const char* name) {
  require(name != nullptr, "InvalidArgument: symmetry name is NULL");
  auto g = pca::dihedral_parse(name);
  if (!g)
    pca::fail(pca::Errc::invalid_argument,
              std::string("InvalidArgument: unknown symmetry '") + name +
                  "'");
  return *g;
}

pca::FamilyId family_of(const char* name) {
  require(name != nullptr, "InvalidArgument: family name is NULL");
  auto id = pca::family_parse(name);
  if (!id)
    pca::fail(pca::Errc::invalid_argument,
              std::string("InvalidArgument: unknown family '") + name +
                  "'");
  return *id;
}

pca::InitPolicy init_of(const char* text,
                        const std::optional<pca::HzmcSpec>& hzmc) {
  require(text != nullptr, "InvalidArgument: init policy is NULL");
  const std::string s = text;
  if (s == "hzpm") return pca::InitHzpm{};
  if (s == "hzmc") {
    require(hzmc.has_value(),
            "InvalidArgument: hzmc init needs an extractable kernel");
    return pca::InitHzmc{&*hzmc};
  }
  if (s.rfind("constant:", 0) == 0) {
    const pca::Rat v = pca::rat_parse(s.substr(9));
    require(v.get_den() == 1 && v >= 0,
            "InvalidArgument: constant init needs a symbol index");
    return pca::InitConstant{pca::Symbol(v.get_num().get_ui())};
  }
  pca::fail(pca::Errc::invalid_argument,
            "InvalidArgument: init must be hzpm, hzmc or constant:<s>");
}

pca::BoundaryPolicy boundary_of(const char* text) {
  require(text != nullptr, "InvalidArgument: boundary policy is NULL");
  const std::string s = text;
  if (s == "iid") return pca::BoundaryIidP{};
  if (s == "periodic") return pca::BoundaryPeriodic{};
  if (s.rfind("fixed:", 0) == 0) {
    const std::vector<pca::Rat> parts = pca::rat_parse_csv(s.substr(6));
    require(parts.size() == 2 && parts[0].get_den() == 1 &&
                parts[1].get_den() == 1 && parts[0] >= 0 && parts[1] >= 0,
            "InvalidArgument: fixed boundary needs two symbol indices");
    return pca::BoundaryFixed{pca::Symbol(parts[0].get_num().get_ui()),
                              pca::Symbol(parts[1].get_num().get_ui())};
  }
  pca::fail(pca::Errc::invalid_argument,
            "InvalidArgument: boundary must be iid, periodic or "
            "fixed:<l>,<r>");
}

std::vector<pca::LineSpec> lines_of(const char* text) {
  require(text != nullptr && *text != '\0',
          "InvalidArgument: empty line list");
  std::vector<pca::LineSpec> lines;
  const std::string all = text;
  std::size_t pos = 0;
  while (pos < all.size()) {
    std::size_t end;
    if (all.compare(pos, 7, "zigzag:") == 0) {
      end = all.size();  // polyline points use ';' internally
    } else {
      end = all.find(';', pos);
      if (end == std::string::npos) end = all.size();
    }
    const std::string piece = all.substr(pos, end - pos);
    auto spec = pca::LineSpec::parse(piece);
    if (!spec)
      pca::fail(pca::Errc::invalid_argument,
                "InvalidArgument: bad line spec '" + piece + "'");
    lines.push_back(std::move(*spec));
    pos = end + (end < all.size() ? 1 : 0);
  }
  return lines;
}

pca::TasepKernel tasep_of(const char* move_csv, const char* move_tail,
                          const char* stay_csv, const char* stay_tail) {
  return pca::TasepKernel(
      csv_of(move_csv),
      rat_of(move_tail, "InvalidArgument: move tail is NULL"),
      csv_of(stay_csv),
      rat_of(stay_tail, "InvalidArgument: stay tail is NULL"));
}

std::string hash_hex(const pca::TransitionKernel& k) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(pca::kernel_hash(k)));
  return buf;
}

}  // namespace

extern "C" {

const char* pca_version(void) { return pca::kVersion; }

const char* pca_last_error(void) { return g_last_error.c_str(); }

void pca_string_free(char* s) { std::free(s); }
void pca_kernel_free(pca_kernel* k) { delete k; }
void pca_probvec_free(pca_probvec* p) { delete p; }
void pca_window_free(pca_window* w) { delete w; }

pca_status pca_kernel_from_json(const char* text, pca_kernel** out_kernel,
                                pca_probvec** out_p) {
  return guard([&] {
    require(text != nullptr, "InvalidArgument: JSON text is NULL");
    require(out_kernel != nullptr, "InvalidArgument: out pointer is NULL");
    pca::KernelFile file = pca::kernel_from_json(text);
    *out_kernel = new pca_kernel{std::move(file.kernel)};
    if (out_p)
      *out_p = file.p ? new pca_probvec{std::move(*file.p)} : nullptr;
  });
}

pca_status pca_kernel_load(const char* path, pca_kernel** out_kernel,
                           pca_probvec** out_p) {
  return guard([&] {
    require(path != nullptr, "InvalidArgument: path is NULL");
    require(out_kernel != nullptr, "InvalidArgument: out pointer is NULL");
    pca::KernelFile file = pca::kernel_load(path);
    *out_kernel = new pca_kernel{std::move(file.kernel)};
    if (out_p)
      *out_p = file.p ? new pca_probvec{std::move(*file.p)} : nullptr;
  });
}

pca_status pca_kernel_to_json(const pca_kernel* k, const pca_probvec* p,
                              char** out_text) {
  return guard([&] {
    require(out_text != nullptr, "InvalidArgument: out pointer is NULL");
    std::optional<pca::ProbVector> attach;
    if (p) attach = probvec_of(p);
    set_string(out_text, pca::kernel_to_json(kernel_of(k), attach));
  });
}

pca_status pca_kernel_save(const char* path, const pca_kernel* k,
                           const pca_probvec* p) {
  return guard([&] {
    require(path != nullptr, "InvalidArgument: path is NULL");
    std::optional<pca::ProbVector> attach;
    if (p) attach = probvec_of(p);
    pca::kernel_save(path, kernel_of(k), attach);
  });
}

size_t pca_kernel_n(const pca_kernel* k) { return k ? k->v.n() : 0; }

int pca_kernel_positive_rates(const pca_kernel* k) {
  return k && k->v.positive_rates() ? 1 : 0;
}

pca_status pca_kernel_entry(const pca_kernel* k, size_t a, size_t b,
                            size_t c, size_t d, char** out_rational) {
  return guard([&] {
    require(out_rational != nullptr, "InvalidArgument: out pointer is NULL");
    const pca::TransitionKernel& kernel = kernel_of(k);
    const std::size_t n = kernel.n();
    require(a < n && b < n && c < n && d < n,
            "InvalidArgument: symbol index out of range");
    set_string(out_rational, pca::rat_str(kernel(a, b, c, d)));
  });
}

pca_status pca_kernel_hash_hex(const pca_kernel* k, char** out_hex) {
  return guard([&] {
    require(out_hex != nullptr, "InvalidArgument: out pointer is NULL");
    set_string(out_hex, hash_hex(kernel_of(k)));
  });
}

int pca_kernel_equal(const pca_kernel* a, const pca_kernel* b) {
  if (!a || !b) return 0;
  return a->v == b->v ? 1 : 0;
}

pca_status pca_probvec_parse(const char* csv, pca_probvec** out) {
  return guard([&] {
    require(csv != nullptr, "InvalidArgument: CSV text is NULL");
    require(out != nullptr, "InvalidArgument: out pointer is NULL");
    *out = new pca_probvec{pca::ProbVector(pca::rat_parse_csv(csv))};
  });
}

size_t pca_probvec_n(const pca_probvec* p) { return p ? p->v.n() : 0; }

pca_status pca_probvec_entry(const pca_probvec* p, size_t i,
                             char** out_rational) {
  return guard([&] {
    require(out_rational != nullptr, "InvalidArgument: out pointer is NULL");
    const pca::ProbVector& v = probvec_of(p);
    require(i < v.n(), "InvalidArgument: index out of range");
    set_string(out_rational, pca::rat_str(v[i]));
  });
}

pca_status pca_probvec_to_csv(const pca_probvec* p, char** out_csv) {
  return guard([&] {
    require(out_csv != nullptr, "InvalidArgument: out pointer is NULL");
    set_string(out_csv, probvec_of(p).str());
  });
}

pca_status pca_check(const pca_kernel* k, const pca_probvec* p,
                     const char* cond, int* out_holds, char** out_line) {
  return guard([&] {
    require(out_holds != nullptr, "InvalidArgument: out pointer is NULL");
    const pca::TransitionKernel& kernel = kernel_of(k);
    const pca::Cond c = cond_of(cond);
    pca::CheckResult result;
    if (c == pca::Cond::hzpm || c == pca::Cond::r || c == pca::Cond::rinv) {
      result = pca::check_condition(kernel, probvec_of(p), c);
    } else {
      result = pca::check_hzmc_condition(kernel, pca::hzmc_candidate(kernel),
                                         c);
    }
    *out_holds = result.holds ? 1 : 0;
    if (out_line) set_string(out_line, pca::check_report_line(c, result));
  });
}

pca_status pca_find_p(const pca_kernel* k, pca_probvec** out_p,
                      int* out_found) {
  return guard([&] {
    require(out_p != nullptr && out_found != nullptr,
            "InvalidArgument: out pointer is NULL");
    std::optional<pca::ProbVector> p = pca::find_hzpm(kernel_of(k));
    *out_found = p ? 1 : 0;
    *out_p = p ? new pca_probvec{std::move(*p)} : nullptr;
  });
}

pca_status pca_reverse(const pca_kernel* k, const pca_probvec* p,
                       const char* g, pca_kernel** out) {
  return guard([&] {
    require(out != nullptr, "InvalidArgument: out pointer is NULL");
    *out = new pca_kernel{
        pca::reverse_kernel(kernel_of(k), probvec_of(p), dihedral_of(g))};
  });
}

pca_status pca_reversibility_report(const pca_kernel* k,
                                    const pca_probvec* p, char** out_text) {
  return guard([&] {
    require(out_text != nullptr, "InvalidArgument: out pointer is NULL");
    set_string(out_text,
               pca::reversibility_report_text(kernel_of(k), probvec_of(p)));
  });
}

pca_status pca_family_dimension(const char* family, size_t n,
                                long long* out) {
  return guard([&] {
    require(out != nullptr, "InvalidArgument: out pointer is NULL");
    *out = pca::family_dimension(family_of(family), n);
  });
}

pca_status pca_family_orbit_count(const char* family, size_t n,
                                  unsigned long long* out) {
  return guard([&] {
    require(out != nullptr, "InvalidArgument: out pointer is NULL");
    *out = pca::family_orbit_count(family_of(family), n);
  });
}

pca_status pca_gen_member(const char* family, const pca_probvec* p,
                          const char* params_csv, const char* eps,
                          pca_kernel** out) {
  return guard([&] {
    require(out != nullptr, "InvalidArgument: out pointer is NULL");
    *out = new pca_kernel{pca::gen_member(
        family_of(family), probvec_of(p), csv_of(params_csv),
        rat_of(eps, "InvalidArgument: eps is NULL"))};
  });
}

pca_status pca_binary_family(const char* family, const char* k,
                             const char* params_csv, pca_kernel** out,
                             pca_probvec** out_p) {
  return guard([&] {
    require(out != nullptr, "InvalidArgument: out pointer is NULL");
    auto [kernel, p] = pca::binary_family(
        family_of(family), rat_of(k, "InvalidArgument: k is NULL"),
        csv_of(params_csv));
    *out = new pca_kernel{std::move(kernel)};
    if (out_p) *out_p = new pca_probvec{std::move(p)};
  });
}

pca_status pca_marginals_report(const pca_kernel* k, const pca_probvec* p,
                                size_t m, char** out_text) {
  return guard([&] {
    require(out_text != nullptr, "InvalidArgument: out pointer is NULL");
    set_string(out_text,
               pca::marginals_report(kernel_of(k), probvec_of(p), m));
  });
}

pca_status pca_hzmc_extract(const pca_kernel* k, int* out_found,
                            char** out_report, pca_kernel** out_t_r,
                            pca_kernel** out_t_rinv) {
  return guard([&] {
    require(out_found != nullptr, "InvalidArgument: out pointer is NULL");
    std::optional<pca::HzmcExtraction> got =
        pca::hzmc_from_kernel(kernel_of(k));
    *out_found = got ? 1 : 0;
    if (!got) return;
    if (out_report) set_string(out_report, pca::hzmc_report(*got));
    if (out_t_r) *out_t_r = new pca_kernel{std::move(got->t_r)};
    if (out_t_rinv) *out_t_rinv = new pca_kernel{std::move(got->t_rinv)};
  });
}

pca_status pca_ergodicity_report(const pca_kernel* k, const pca_probvec* p,
                                 size_t hw, size_t t_max, char** out_text) {
  return guard([&] {
    require(out_text != nullptr, "InvalidArgument: out pointer is NULL");
    set_string(out_text, pca::ergodicity_report(pca::ergodicity_tv(
                             kernel_of(k), probvec_of(p), hw, t_max)));
  });
}

pca_status pca_simulate(const pca_kernel* k, const pca_probvec* p,
                        const char* init, const char* boundary,
                        size_t width, size_t height, uint64_t seed,
                        pca_window** out) {
  return guard([&] {
    require(out != nullptr, "InvalidArgument: out pointer is NULL");
    const pca::TransitionKernel& kernel = kernel_of(k);
    std::optional<pca::HzmcSpec> hzmc;
    if (init && std::string(init) == "hzmc")
      hzmc = pca::hzmc_candidate(kernel);
    *out = new pca_window{pca::sample_diagram(
        kernel, probvec_of(p), init_of(init, hzmc), boundary_of(boundary),
        width, height, seed)};
  });
}

size_t pca_window_width(const pca_window* w) { return w ? w->v.width() : 0; }
size_t pca_window_height(const pca_window* w) {
  return w ? w->v.height() : 0;
}
size_t pca_window_n(const pca_window* w) { return w ? w->v.n() : 0; }

int pca_window_at(const pca_window* w, size_t i, size_t t) {
  if (!w || i >= w->v.width() || t >= w->v.height() ||
      !pca::SpaceTimeWindow::populated(i, t))
    return -1;
  return int(w->v.at(i, t));
}

pca_status pca_window_text(const pca_window* w, char** out_text) {
  return guard([&] {
    require(out_text != nullptr, "InvalidArgument: out pointer is NULL");
    set_string(out_text, pca::window_text(window_of(w)));
  });
}

pca_status pca_render_pgm(const pca_window* w, char** out_bytes,
                          size_t* out_len) {
  return guard([&] {
    require(out_bytes != nullptr && out_len != nullptr,
            "InvalidArgument: out pointer is NULL");
    const std::string pgm = pca::render_pgm(window_of(w));
    char* buf = static_cast<char*>(std::malloc(pgm.size()));
    require(buf != nullptr, "InvalidArgument: allocation failed");
    std::memcpy(buf, pgm.data(), pgm.size());
    *out_bytes = buf;
    *out_len = pgm.size();
  });
}

pca_status pca_lines_test(const pca_kernel* k, const pca_probvec* p,
                          const char* init, const char* boundary,
                          size_t width, size_t height, uint64_t seed,
                          size_t windows, const char* lines, double alpha,
                          int* out_all_pass, char** out_report) {
  return guard([&] {
    require(out_all_pass != nullptr, "InvalidArgument: out pointer is NULL");
    require(windows >= 1, "InvalidArgument: need at least one window");
    const pca::TransitionKernel& kernel = kernel_of(k);
    const pca::ProbVector& prob = probvec_of(p);
    std::optional<pca::HzmcSpec> hzmc;
    if (init && std::string(init) == "hzmc")
      hzmc = pca::hzmc_candidate(kernel);
    const pca::InitPolicy init_policy = init_of(init, hzmc);
    const pca::BoundaryPolicy boundary_policy = boundary_of(boundary);
    std::vector<pca::SpaceTimeWindow> samples;
    samples.reserve(windows);
    for (size_t w = 0; w < windows; ++w)
      samples.push_back(pca::sample_diagram(kernel, prob, init_policy,
                                            boundary_policy, width, height,
                                            seed + w));
    const pca::LineBatchResult result =
        pca::line_iid_test(samples, lines_of(lines), prob, alpha);
    *out_all_pass = result.all_pass ? 1 : 0;
    if (out_report) set_string(out_report, pca::lines_report(result));
  });
}

pca_status pca_eight_vertex(const char* wa, const char* wb, const char* wc,
                            const char* wd, pca_kernel** out,
                            char** out_q, char** out_r) {
  return guard([&] {
    require(out != nullptr, "InvalidArgument: out pointer is NULL");
    pca::EightVertex model = pca::eight_vertex_kernel(
        rat_of(wa, "InvalidArgument: weight a is NULL"),
        rat_of(wb, "InvalidArgument: weight b is NULL"),
        rat_of(wc, "InvalidArgument: weight c is NULL"),
        rat_of(wd, "InvalidArgument: weight d is NULL"));
    if (out_q) set_string(out_q, pca::rat_str(model.q));
    if (out_r) set_string(out_r, pca::rat_str(model.r));
    *out = new pca_kernel{std::move(model.kernel)};
  });
}

pca_status pca_orientation(const pca_window* w, char** out_histogram,
                           char** out_edges) {
  return guard([&] {
    const pca::OrientationField field =
        pca::coloring_to_orientation(window_of(w));
    if (out_histogram)
      set_string(out_histogram, pca::orientation_report(field));
    if (out_edges) set_string(out_edges, field.edge_list());
  });
}

pca_status pca_animals_gf(double z, double* out_square,
                          double* out_triangular, double* out_residual) {
  return guard([&] {
    const pca::AnimalsGf gf = pca::animals_gf(z);
    if (out_square) *out_square = gf.g_square;
    if (out_triangular) *out_triangular = gf.g_triangular;
    if (out_residual) *out_residual = gf.residual;
  });
}

pca_status pca_animals_kernel(const char* lattice, const char* p,
                              pca_kernel** out) {
  return guard([&] {
    require(out != nullptr, "InvalidArgument: out pointer is NULL");
    require(lattice != nullptr, "InvalidArgument: lattice is NULL");
    const std::string name = lattice;
    pca::AnimalsLattice which;
    if (name == "square")
      which = pca::AnimalsLattice::square;
    else if (name == "triangular")
      which = pca::AnimalsLattice::triangular;
    else
      pca::fail(pca::Errc::invalid_argument,
                "InvalidArgument: lattice must be square or triangular");
    *out = new pca_kernel{pca::animals_kernel(
        which, rat_of(p, "InvalidArgument: rate is NULL"))};
  });
}

pca_status pca_stationary_density(const pca_kernel* k, const pca_probvec* p,
                                  size_t width, size_t rows, size_t burn_in,
                                  size_t blocks, uint64_t seed,
                                  double* out_density, double* out_std_error,
                                  char** out_report) {
  return guard([&] {
    const pca::DensityEstimate est = pca::stationary_density(
        kernel_of(k), probvec_of(p), width, rows, burn_in, blocks, seed);
    if (out_density) *out_density = est.density;
    if (out_std_error) *out_std_error = est.std_error;
    if (out_report) set_string(out_report, pca::density_report(est));
  });
}

pca_status pca_tasep_gap_law(const char* move_csv, const char* move_tail,
                             const char* stay_csv, const char* stay_tail,
                             const char* q1, size_t cutoff,
                             char** out_report) {
  return guard([&] {
    require(out_report != nullptr, "InvalidArgument: out pointer is NULL");
    const pca::TasepGapLaw law = pca::tasep_gap_law(
        tasep_of(move_csv, move_tail, stay_csv, stay_tail),
        rat_of(q1, "InvalidArgument: q1 is NULL"), cutoff);
    set_string(out_report, pca::gap_law_report(law));
  });
}

pca_status pca_tasep_simulate(const char* move_csv, const char* move_tail,
                              const char* stay_csv, const char* stay_tail,
                              const char* q1, size_t n_particles,
                              size_t t_steps, uint64_t seed,
                              char** out_report) {
  return guard([&] {
    require(out_report != nullptr, "InvalidArgument: out pointer is NULL");
    const pca::TasepKernel kernel =
        tasep_of(move_csv, move_tail, stay_csv, stay_tail);
    const pca::Rat rate = rat_of(q1, "InvalidArgument: q1 is NULL");
    const pca::TasepStats stats =
        pca::tasep_simulate(kernel, rate, n_particles, t_steps, seed);
    const pca::TasepGapLaw law =
        pca::tasep_gap_law(kernel, rate, kernel.constant_from() + 32);
    set_string(out_report, pca::tasep_sim_report(stats, &law));
  });
}

pca_status pca_tasep_ring(const char* move_csv, const char* move_tail,
                          const char* stay_csv, const char* stay_tail,
                          size_t n_particles, unsigned long initial_gap,
                          size_t t_steps, uint64_t seed, char** out_report) {
  return guard([&] {
    require(out_report != nullptr, "InvalidArgument: out pointer is NULL");
    const pca::TasepRingState state = pca::tasep_simulate_ring(
        tasep_of(move_csv, move_tail, stay_csv, stay_tail), n_particles,
        initial_gap, t_steps, seed);
    unsigned long long total = 0;
    std::vector<unsigned long long> histogram;
    for (unsigned long g : state.gaps) {
      if (g > histogram.size()) histogram.resize(g, 0);
      ++histogram[g - 1];
      total += g;
    }
    std::string report;
    report += "k\tcount\n";
    for (std::size_t k = 1; k <= histogram.size(); ++k)
      report += std::to_string(k) + "\t" + std::to_string(histogram[k - 1]) +
                "\n";
    report += "headway-sum\t" + std::to_string(total) + "\n";
    report += "headway-sum-initial\t" +
              std::to_string(static_cast<unsigned long long>(n_particles) *
                             initial_gap) +
              "\n";
    report += "conserved\t";
    report += (total == static_cast<unsigned long long>(n_particles) *
                            initial_gap
                   ? "yes"
                   : "NO");
    report += "\n";
    report += "total-moves\t" + std::to_string(state.total_moves) + "\n";
    set_string(out_report, report);
  });
}

pca_status pca_provenance(const pca_kernel* k, int has_seed, uint64_t seed,
                          char** out_text) {
  return guard([&] {
    require(out_text != nullptr, "InvalidArgument: out pointer is NULL");
    const std::uint64_t s = seed;
    set_string(out_text,
               pca::provenance_header(k ? &k->v : nullptr,
                                      has_seed ? &s : nullptr));
  });
}

}  // extern "C"
