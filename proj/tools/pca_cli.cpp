// Command-line front end.  Talks to the library exclusively through the
// C interface in pca.h; every exact quantity stays a rational string.
//
// Exit codes: 0 success; 1 a checked condition failed (the witness or
// failing table is printed); 2 usage or input errors.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pca.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// RAII wrappers for C-interface resources.
struct CStr {
  char* p = nullptr;
  ~CStr() { pca_string_free(p); }
  std::string str() const { return p ? p : ""; }
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

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

int api_error(pca_status status) {
  std::cerr << "error: " << pca_last_error() << " (status " << int(status)
            << ")\n";
  return kExitUsage;
}

int write_file(const std::string& path, const std::string& content,
               bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) return usage_error("cannot open '" + path + "' for writing");
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) return usage_error("short write to '" + path + "'");
  return kExitOk;
}

// Prints to stdout, or writes to `out` (prefixed by the provenance
// header) when a path was given.
int emit_report(const std::string& out, const pca_kernel* kernel,
                const std::optional<std::uint64_t>& seed,
                const std::string& body) {
  if (out.empty()) {
    std::cout << body;
    return kExitOk;
  }
  CStr header;
  const pca_status st = pca_provenance(kernel, seed.has_value(),
                                       seed.value_or(0), &header.p);
  if (st != PCA_OK) return api_error(st);
  return write_file(out, header.str() + body, false);
}

// Loads --kernel, then resolves the measure: --p wins, else the vector
// attached to the kernel file.
int load_kernel(const std::string& path, const std::string& p_csv,
                Kernel& kernel, ProbVec& p, bool need_p) {
  pca_probvec* attached = nullptr;
  const pca_status st = pca_kernel_load(path.c_str(), &kernel.p, &attached);
  if (st != PCA_OK) return api_error(st);
  if (!p_csv.empty()) {
    pca_probvec_free(attached);
    const pca_status ps = pca_probvec_parse(p_csv.c_str(), &p.p);
    if (ps != PCA_OK) return api_error(ps);
  } else {
    p.p = attached;
    if (need_p && !p.p)
      return usage_error(
          "no measure: pass --p or attach \"p\" in the kernel file");
  }
  return kExitOk;
}

std::string uniform_csv(std::size_t n) {
  std::string csv;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) csv += ",";
    csv += "1/" + std::to_string(n);
  }
  return csv;
}

bool is_binary_family(const std::string& family) {
  return family.rfind("BIN_", 0) == 0 || family.rfind("bin_", 0) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-row probabilistic cellular automata toolkit"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // ------------------------------------------------------------ check
  {
    auto* cmd = app.add_subcommand(
        "check", "Verify an invariance / reversibility condition");
    auto kernel_path = std::make_shared<std::string>();
    auto p_csv = std::make_shared<std::string>();
    auto cond = std::make_shared<std::string>();
    cmd->add_option("--kernel", *kernel_path, "kernel JSON file")
        ->required();
    cmd->add_option("--p", *p_csv, "measure as CSV rationals");
    cmd->add_option("--cond", *cond,
                    "HZPM | R | RINV | HZMC | HZMC_R | HZMC_RINV | EIG_F "
                    "| EIG_B")
        ->required();
    cmd->callback([&exit_code, kernel_path, p_csv, cond] {
      Kernel kernel;
      ProbVec p;
      const bool product_cond =
          *cond == "HZPM" || *cond == "R" || *cond == "RINV";
      exit_code = load_kernel(*kernel_path, *p_csv, kernel, p, product_cond);
      if (exit_code != kExitOk) return;
      int holds = 0;
      CStr line;
      const pca_status st =
          pca_check(kernel.p, p.p, cond->c_str(), &holds, &line.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      std::cout << line.str() << "\n";
      exit_code = holds ? kExitOk : kExitCheckFailed;
    });
  }

  // ----------------------------------------------------------- find-p
  {
    auto* cmd = app.add_subcommand(
        "find-p", "Search for an invariant product measure");
    auto kernel_path = std::make_shared<std::string>();
    cmd->add_option("--kernel", *kernel_path, "kernel JSON file")
        ->required();
    cmd->callback([&exit_code, kernel_path] {
      Kernel kernel;
      ProbVec ignored;
      exit_code = load_kernel(*kernel_path, "", kernel, ignored, false);
      if (exit_code != kExitOk) return;
      ProbVec found;
      int ok = 0;
      const pca_status st = pca_find_p(kernel.p, &found.p, &ok);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      if (!ok) {
        std::cout << "no invariant product measure\n";
        exit_code = kExitCheckFailed;
        return;
      }
      CStr csv;
      if (pca_probvec_to_csv(found.p, &csv.p) != PCA_OK) {
        exit_code = api_error(PCA_EUNKNOWN);
        return;
      }
      std::cout << csv.str() << "\n";
    });
  }

  // ---------------------------------------------------------- reverse
  {
    auto* cmd = app.add_subcommand(
        "reverse", "Rotate a kernel by a square symmetry");
    auto kernel_path = std::make_shared<std::string>();
    auto p_csv = std::make_shared<std::string>();
    auto g = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--kernel", *kernel_path, "kernel JSON file")
        ->required();
    cmd->add_option("--p", *p_csv, "measure as CSV rationals");
    cmd->add_option("--g", *g, "r | r2 | r3 | h | v | rv | r3v")
        ->required();
    cmd->add_option("--out", *out, "output kernel file (default stdout)");
    cmd->callback([&exit_code, kernel_path, p_csv, g, out] {
      Kernel kernel;
      ProbVec p;
      exit_code = load_kernel(*kernel_path, *p_csv, kernel, p, true);
      if (exit_code != kExitOk) return;
      Kernel rotated;
      pca_status st = pca_reverse(kernel.p, p.p, g->c_str(), &rotated.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      CStr json;
      st = pca_kernel_to_json(rotated.p, p.p, &json.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      if (out->empty())
        std::cout << json.str();
      else
        exit_code = write_file(*out, json.str(), false);
    });
  }

  // ----------------------------------------------------------- report
  {
    auto* cmd = app.add_subcommand(
        "report", "Quasi-reversibility table over all square symmetries");
    auto kernel_path = std::make_shared<std::string>();
    auto p_csv = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--kernel", *kernel_path, "kernel JSON file")
        ->required();
    cmd->add_option("--p", *p_csv, "measure as CSV rationals");
    cmd->add_option("--out", *out, "report file (default stdout)");
    cmd->callback([&exit_code, kernel_path, p_csv, out] {
      Kernel kernel;
      ProbVec p;
      exit_code = load_kernel(*kernel_path, *p_csv, kernel, p, true);
      if (exit_code != kExitOk) return;
      CStr text;
      const pca_status st =
          pca_reversibility_report(kernel.p, p.p, &text.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      exit_code = emit_report(*out, kernel.p, std::nullopt, text.str());
    });
  }

  // ------------------------------------------------------------- dims
  {
    auto* cmd = app.add_subcommand(
        "dims", "Free-parameter count of a kernel family");
    auto family = std::make_shared<std::string>();
    auto n = std::make_shared<std::size_t>(2);
    auto orbits = std::make_shared<bool>(false);
    cmd->add_option("--family", *family, "family name (e.g. REV_D4)")
        ->required();
    cmd->add_option("--n", *n, "alphabet size")->required();
    cmd->add_flag("--orbits", *orbits,
                  "print the orbit count instead (REV_R / REV_RV / "
                  "REV_D4)");
    cmd->callback([&exit_code, family, n, orbits] {
      if (*orbits) {
        unsigned long long count = 0;
        const pca_status st =
            pca_family_orbit_count(family->c_str(), *n, &count);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        std::cout << count << "\n";
        return;
      }
      long long dim = 0;
      const pca_status st = pca_family_dimension(family->c_str(), *n, &dim);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      std::cout << dim << "\n";
    });
  }

  // -------------------------------------------------------------- gen
  {
    auto* cmd = app.add_subcommand(
        "gen", "Generate an explicit member of a kernel family");
    auto family = std::make_shared<std::string>();
    auto n = std::make_shared<std::size_t>(2);
    auto p_csv = std::make_shared<std::string>();
    auto params = std::make_shared<std::string>();
    auto eps = std::make_shared<std::string>("1/16");
    auto k_rat = std::make_shared<std::string>("1");
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    auto* seed_opt =
        cmd->add_option("--seed", *seed,
                        "draw the free parameters (required without "
                        "--params)");
    cmd->add_option("--family", *family, "family name")->required();
    cmd->add_option("--n", *n, "alphabet size (non-binary families)");
    cmd->add_option("--p", *p_csv, "measure (default uniform)");
    cmd->add_option("--params", *params, "free parameters as CSV");
    cmd->add_option("--eps", *eps, "perturbation scale (default 1/16)");
    cmd->add_option("--k", *k_rat,
                    "measure parameter of the two-letter families");
    cmd->add_option("--out", *out, "output kernel file (default stdout)");
    cmd->callback([&exit_code, family, n, p_csv, params, eps, k_rat, seed,
                   seed_opt, out] {
      std::string param_csv = *params;
      if (param_csv.empty()) {
        if (seed_opt->count() == 0) {
          exit_code = usage_error("gen needs --params or --seed");
          return;
        }
        long long dim = 0;
        const pca_status st =
            pca_family_dimension(family->c_str(), *n, &dim);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        std::mt19937_64 rng(*seed);
        for (long long j = 0; j < dim; ++j) {
          if (j) param_csv += ",";
          if (is_binary_family(*family)) {
            // admissible open-interval parameters
            param_csv += std::to_string(1 + rng() % 31) + "/32";
          } else {
            param_csv +=
                std::to_string(long(rng() % 129) - 64) + "/64";
          }
        }
      }
      Kernel kernel;
      ProbVec p;
      if (is_binary_family(*family)) {
        const pca_status st = pca_binary_family(
            family->c_str(), k_rat->c_str(), param_csv.c_str(), &kernel.p,
            &p.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
      } else {
        const std::string measure =
            p_csv->empty() ? uniform_csv(*n) : *p_csv;
        pca_status st = pca_probvec_parse(measure.c_str(), &p.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        st = pca_gen_member(family->c_str(), p.p, param_csv.c_str(),
                            eps->c_str(), &kernel.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
      }
      CStr json;
      const pca_status st = pca_kernel_to_json(kernel.p, p.p, &json.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      if (out->empty())
        std::cout << json.str();
      else
        exit_code = write_file(*out, json.str(), false);
    });
  }

  // -------------------------------------------------------- marginals
  {
    auto* cmd = app.add_subcommand(
        "marginals", "Exact joint law of the rotated boundary lines");
    auto kernel_path = std::make_shared<std::string>();
    auto p_csv = std::make_shared<std::string>();
    auto m = std::make_shared<std::size_t>(1);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--kernel", *kernel_path, "kernel JSON file")
        ->required();
    cmd->add_option("--p", *p_csv, "measure as CSV rationals");
    cmd->add_option("--m", *m, "diamond depth")->required();
    cmd->add_option("--out", *out, "report file (default stdout)");
    cmd->callback([&exit_code, kernel_path, p_csv, m, out] {
      Kernel kernel;
      ProbVec p;
      exit_code = load_kernel(*kernel_path, *p_csv, kernel, p, true);
      if (exit_code != kExitOk) return;
      CStr text;
      const pca_status st =
          pca_marginals_report(kernel.p, p.p, *m, &text.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      exit_code = emit_report(*out, kernel.p, std::nullopt, text.str());
    });
  }

  // --------------------------------------------------------- simulate
  {
    auto* cmd = app.add_subcommand(
        "simulate", "Sample a space-time diagram as text");
    auto kernel_path = std::make_shared<std::string>();
    auto p_csv = std::make_shared<std::string>();
    auto width = std::make_shared<std::size_t>(0);
    auto height = std::make_shared<std::size_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto init = std::make_shared<std::string>("hzpm");
    auto boundary = std::make_shared<std::string>("iid");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--kernel", *kernel_path, "kernel JSON file")
        ->required();
    cmd->add_option("--p", *p_csv, "measure as CSV rationals");
    cmd->add_option("--width", *width, "window width")->required();
    cmd->add_option("--height", *height, "window height")->required();
    cmd->add_option("--seed", *seed, "RNG seed")->required();
    cmd->add_option("--init", *init, "hzpm | hzmc | constant:<s>");
    cmd->add_option("--boundary", *boundary,
                    "iid | periodic | fixed:<l>,<r>");
    cmd->add_option("--out", *out, "report file (default stdout)");
    cmd->callback([&exit_code, kernel_path, p_csv, width, height, seed,
                   init, boundary, out] {
      Kernel kernel;
      ProbVec p;
      exit_code = load_kernel(*kernel_path, *p_csv, kernel, p, true);
      if (exit_code != kExitOk) return;
      Window window;
      pca_status st =
          pca_simulate(kernel.p, p.p, init->c_str(), boundary->c_str(),
                       *width, *height, *seed, &window.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      CStr text;
      st = pca_window_text(window.p, &text.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      exit_code = emit_report(*out, kernel.p, *seed, text.str());
    });
  }

  // ------------------------------------------------------- ergodicity
  {
    auto* cmd = app.add_subcommand(
        "ergodicity",
        "Exact distance to stationarity on the finite zigzag chain");
    auto kernel_path = std::make_shared<std::string>();
    auto p_csv = std::make_shared<std::string>();
    auto hw = std::make_shared<std::size_t>(1);
    auto tmax = std::make_shared<std::size_t>(20);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--kernel", *kernel_path, "kernel JSON file")
        ->required();
    cmd->add_option("--p", *p_csv, "measure as CSV rationals");
    cmd->add_option("--k", *hw, "zigzag half-width")->required();
    cmd->add_option("--tmax", *tmax, "number of steps");
    cmd->add_option("--out", *out, "report file (default stdout)");
    cmd->callback([&exit_code, kernel_path, p_csv, hw, tmax, out] {
      Kernel kernel;
      ProbVec p;
      exit_code = load_kernel(*kernel_path, *p_csv, kernel, p, true);
      if (exit_code != kExitOk) return;
      CStr text;
      const pca_status st =
          pca_ergodicity_report(kernel.p, p.p, *hw, *tmax, &text.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      exit_code = emit_report(*out, kernel.p, std::nullopt, text.str());
    });
  }

  // ------------------------------------------------------- lines-test
  {
    auto* cmd = app.add_subcommand(
        "lines-test", "Chi-square iid diagnostics along lattice lines");
    auto kernel_path = std::make_shared<std::string>();
    auto p_csv = std::make_shared<std::string>();
    auto width = std::make_shared<std::size_t>(0);
    auto height = std::make_shared<std::size_t>(0);
    auto windows = std::make_shared<std::size_t>(1);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto lines = std::make_shared<std::string>();
    auto alpha = std::make_shared<double>(0.01);
    auto init = std::make_shared<std::string>("hzpm");
    auto boundary = std::make_shared<std::string>("iid");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--kernel", *kernel_path, "kernel JSON file")
        ->required();
    cmd->add_option("--p", *p_csv, "measure as CSV rationals");
    cmd->add_option("--width", *width, "window width")->required();
    cmd->add_option("--height", *height, "window height")->required();
    cmd->add_option("--windows", *windows, "independent windows");
    cmd->add_option("--seed", *seed, "RNG seed")->required();
    cmd->add_option("--lines", *lines,
                    "';'-separated line specs, e.g. "
                    "horizontal:10;vertical:5;sloped:1,1,0")
        ->required();
    cmd->add_option("--alpha", *alpha, "family-wise level (default 0.01)");
    cmd->add_option("--init", *init, "hzpm | hzmc | constant:<s>");
    cmd->add_option("--boundary", *boundary,
                    "iid | periodic | fixed:<l>,<r>");
    cmd->add_option("--out", *out, "report file (default stdout)");
    cmd->callback([&exit_code, kernel_path, p_csv, width, height, windows,
                   seed, lines, alpha, init, boundary, out] {
      Kernel kernel;
      ProbVec p;
      exit_code = load_kernel(*kernel_path, *p_csv, kernel, p, true);
      if (exit_code != kExitOk) return;
      int all_pass = 0;
      CStr text;
      const pca_status st = pca_lines_test(
          kernel.p, p.p, init->c_str(), boundary->c_str(), *width, *height,
          *seed, *windows, lines->c_str(), *alpha, &all_pass, &text.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      exit_code = emit_report(*out, kernel.p, *seed, text.str());
      if (exit_code == kExitOk && !all_pass) exit_code = kExitCheckFailed;
    });
  }

  // ----------------------------------------------------------- render
  {
    auto* cmd = app.add_subcommand(
        "render", "Sample a diagram and write it as a binary PGM image");
    auto kernel_path = std::make_shared<std::string>();
    auto p_csv = std::make_shared<std::string>();
    auto width = std::make_shared<std::size_t>(0);
    auto height = std::make_shared<std::size_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto init = std::make_shared<std::string>("hzpm");
    auto boundary = std::make_shared<std::string>("iid");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--kernel", *kernel_path, "kernel JSON file")
        ->required();
    cmd->add_option("--p", *p_csv, "measure as CSV rationals");
    cmd->add_option("--width", *width, "window width")->required();
    cmd->add_option("--height", *height, "window height")->required();
    cmd->add_option("--seed", *seed, "RNG seed")->required();
    cmd->add_option("--init", *init, "hzpm | hzmc | constant:<s>");
    cmd->add_option("--boundary", *boundary,
                    "iid | periodic | fixed:<l>,<r>");
    cmd->add_option("--out", *out, "PGM output file")->required();
    cmd->callback([&exit_code, kernel_path, p_csv, width, height, seed,
                   init, boundary, out] {
      Kernel kernel;
      ProbVec p;
      exit_code = load_kernel(*kernel_path, *p_csv, kernel, p, true);
      if (exit_code != kExitOk) return;
      Window window;
      pca_status st =
          pca_simulate(kernel.p, p.p, init->c_str(), boundary->c_str(),
                       *width, *height, *seed, &window.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      CStr bytes;
      size_t len = 0;
      st = pca_render_pgm(window.p, &bytes.p, &len);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      exit_code = write_file(*out, std::string(bytes.p, len), true);
    });
  }

  // --------------------------------------------------------- model-8v
  {
    auto* cmd = app.add_subcommand(
        "model-8v", "Eight-vertex coupling: kernel, sampling, orientations");
    auto wa = std::make_shared<std::string>();
    auto wb = std::make_shared<std::string>();
    auto wc = std::make_shared<std::string>();
    auto wd = std::make_shared<std::string>();
    auto width = std::make_shared<std::size_t>(0);
    auto height = std::make_shared<std::size_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    auto edges = std::make_shared<std::string>();
    cmd->add_option("--wa", *wa, "vertex weight a")->required();
    cmd->add_option("--wb", *wb, "vertex weight b")->required();
    cmd->add_option("--wc", *wc, "vertex weight c")->required();
    cmd->add_option("--wd", *wd, "vertex weight d")->required();
    auto* width_opt =
        cmd->add_option("--width", *width, "sample window width");
    cmd->add_option("--height", *height, "sample window height");
    auto* seed_opt = cmd->add_option("--seed", *seed, "RNG seed");
    cmd->add_option("--out", *out, "write the kernel JSON here");
    cmd->add_option("--edges", *edges, "write the edge list here");
    cmd->callback([&exit_code, wa, wb, wc, wd, width, height, seed, out,
                   edges, width_opt, seed_opt] {
      Kernel kernel;
      CStr q, r;
      pca_status st = pca_eight_vertex(wa->c_str(), wb->c_str(),
                                       wc->c_str(), wd->c_str(), &kernel.p,
                                       &q.p, &r.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      std::cout << "q\t" << q.str() << "\n" << "r\t" << r.str() << "\n";
      if (!out->empty()) {
        ProbVec half;
        st = pca_probvec_parse("1/2,1/2", &half.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        CStr json;
        st = pca_kernel_to_json(kernel.p, half.p, &json.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        exit_code = write_file(*out, json.str(), false);
        if (exit_code != kExitOk) return;
      }
      if (width_opt->count()) {
        if (seed_opt->count() == 0) {
          exit_code = usage_error("sampling needs --seed");
          return;
        }
        ProbVec half;
        st = pca_probvec_parse("1/2,1/2", &half.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        Window window;
        st = pca_simulate(kernel.p, half.p, "hzpm", "iid", *width, *height,
                          *seed, &window.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        CStr histogram, edge_text;
        st = pca_orientation(window.p, &histogram.p,
                             edges->empty() ? nullptr : &edge_text.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        std::cout << histogram.str();
        if (!edges->empty()) {
          exit_code = write_file(*edges, edge_text.str(), false);
          if (exit_code != kExitOk) return;
        }
      }
    });
  }

  // ---------------------------------------------------- model-animals
  {
    auto* cmd = app.add_subcommand(
        "model-animals",
        "Directed-animals generating functions and hard-particle kernels");
    auto z = std::make_shared<double>(0.0);
    auto lattice = std::make_shared<std::string>("square");
    auto rate = std::make_shared<std::string>();
    auto width = std::make_shared<std::size_t>(512);
    auto rows = std::make_shared<std::size_t>(1024);
    auto burn_in = std::make_shared<std::size_t>(128);
    auto blocks = std::make_shared<std::size_t>(16);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    auto* z_opt = cmd->add_option(
        "--z", *z, "evaluate the generating functions at z");
    cmd->add_option("--lattice", *lattice, "square | triangular");
    auto* rate_opt =
        cmd->add_option("--p-rate", *rate, "hard-particle rate in (0,1)");
    cmd->add_option("--width", *width, "strip width (density runs)");
    cmd->add_option("--rows", *rows, "strip height (density runs)");
    cmd->add_option("--burn-in", *burn_in, "rows discarded before counting");
    cmd->add_option("--blocks", *blocks, "row bands for the error bar");
    auto* seed_opt = cmd->add_option("--seed", *seed, "RNG seed");
    cmd->add_option("--out", *out, "write the kernel JSON here");
    cmd->callback([&exit_code, z, lattice, rate, width, rows, burn_in,
                   blocks, seed, out, z_opt, rate_opt, seed_opt] {
      if (z_opt->count()) {
        double gs = 0, gt = 0, residual = 0;
        const pca_status st = pca_animals_gf(*z, &gs, &gt, &residual);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        std::printf("G_square\t%.12g\nG_triangular\t%.12g\nresidual\t%.12g\n",
                    gs, gt, residual);
      }
      if (!rate_opt->count()) {
        if (!z_opt->count())
          exit_code = usage_error("pass --z and/or --p-rate");
        return;
      }
      Kernel kernel;
      pca_status st =
          pca_animals_kernel(lattice->c_str(), rate->c_str(), &kernel.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      if (!out->empty()) {
        CStr json;
        st = pca_kernel_to_json(kernel.p, nullptr, &json.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        exit_code = write_file(*out, json.str(), false);
        if (exit_code != kExitOk) return;
      }
      if (seed_opt->count()) {
        ProbVec half;
        st = pca_probvec_parse("1/2,1/2", &half.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        CStr report;
        st = pca_stationary_density(kernel.p, half.p, *width, *rows,
                                    *burn_in, *blocks, *seed, nullptr,
                                    nullptr, &report.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        std::cout << report.str();
      }
    });
  }

  // ------------------------------------------------------ model-tasep
  {
    auto* cmd = app.add_subcommand(
        "model-tasep",
        "Order-two exclusion process: stationary law and simulation");
    auto move_csv = std::make_shared<std::string>("");
    auto move_tail = std::make_shared<std::string>("1/2");
    auto stay_csv = std::make_shared<std::string>("");
    auto stay_tail = std::make_shared<std::string>("1/2");
    auto q1 = std::make_shared<std::string>();
    auto cutoff = std::make_shared<std::size_t>(50);
    auto particles = std::make_shared<std::size_t>(0);
    auto steps = std::make_shared<std::size_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto ring = std::make_shared<bool>(false);
    auto initial_gap = std::make_shared<unsigned long>(2);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--move", *move_csv,
                    "move(k) overrides as CSV, k = 1, 2, ...");
    cmd->add_option("--move-tail", *move_tail,
                    "move(k) beyond the overrides (default 1/2)");
    cmd->add_option("--stay", *stay_csv,
                    "stay-context move(k) overrides, k = 2, 3, ...");
    cmd->add_option("--stay-tail", *stay_tail,
                    "stay-context rate beyond the overrides (default 1/2)");
    cmd->add_option("--q1", *q1, "leader move probability")->required();
    cmd->add_option("--cutoff", *cutoff, "gap-law cutoff (default 50)");
    auto* particles_opt =
        cmd->add_option("--particles", *particles, "simulated particles");
    cmd->add_option("--steps", *steps, "simulated steps");
    auto* seed_opt = cmd->add_option("--seed", *seed, "RNG seed");
    cmd->add_flag("--ring", *ring, "run the periodic conservation check");
    cmd->add_option("--initial-gap", *initial_gap,
                    "uniform initial headway on the ring (default 2)");
    cmd->add_option("--out", *out, "report file (default stdout)");
    cmd->callback([&exit_code, move_csv, move_tail, stay_csv, stay_tail, q1,
                   cutoff, particles, steps, seed, ring, initial_gap, out,
                   particles_opt, seed_opt] {
      std::string body;
      CStr law;
      pca_status st = pca_tasep_gap_law(move_csv->c_str(),
                                        move_tail->c_str(),
                                        stay_csv->c_str(),
                                        stay_tail->c_str(), q1->c_str(),
                                        *cutoff, &law.p);
      if (st != PCA_OK) {
        exit_code = api_error(st);
        return;
      }
      body += law.str();
      std::optional<std::uint64_t> used_seed;
      if (particles_opt->count()) {
        if (seed_opt->count() == 0 || *steps == 0) {
          exit_code = usage_error("simulation needs --steps and --seed");
          return;
        }
        used_seed = *seed;
        CStr sim;
        st = pca_tasep_simulate(move_csv->c_str(), move_tail->c_str(),
                                stay_csv->c_str(), stay_tail->c_str(),
                                q1->c_str(), *particles, *steps, *seed,
                                &sim.p);
        if (st != PCA_OK) {
          exit_code = api_error(st);
          return;
        }
        body += sim.str();
        if (*ring) {
          CStr ring_report;
          st = pca_tasep_ring(move_csv->c_str(), move_tail->c_str(),
                              stay_csv->c_str(), stay_tail->c_str(),
                              *particles, *initial_gap, *steps, *seed,
                              &ring_report.p);
          if (st != PCA_OK) {
            exit_code = api_error(st);
            return;
          }
          body += ring_report.str();
        }
      }
      exit_code = emit_report(*out, nullptr, used_seed, body);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return exit_code;
}
