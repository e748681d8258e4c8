/* C interface to the two-row probabilistic cellular automata library.
 *
 * Conventions:
 *   - Every fallible function returns a pca_status; PCA_OK is 0.  On
 *     failure, pca_last_error() returns a thread-local message that
 *     stays valid until the next library call on the same thread.
 *   - Objects are opaque handles created by the library and released
 *     with the matching *_free function (all tolerate NULL).
 *   - Strings produced by the library (char** out parameters) are
 *     heap-allocated and must be released with pca_string_free.
 *   - Exact numbers travel as rational strings ("3/4", "1", "0.25");
 *     lists of them as comma-separated values.  Report strings are
 *     UTF-8, tab-separated tables.
 */
#ifndef PCA_H
#define PCA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pca_status {
  PCA_OK = 0,
  PCA_EINVAL,
  PCA_EPARSE,
  PCA_EIO,
  PCA_ENEGATIVE_ENTRY,
  PCA_ENOT_NORMALIZED,
  PCA_EROW_NOT_STOCHASTIC,
  PCA_EALPHABET_MISMATCH,
  PCA_ENON_POSITIVE_RATES,
  PCA_ECOMMUTATION,
  PCA_EEIGENVECTOR_NOT_UNIQUE,
  PCA_EPRECONDITION,
  PCA_ENOT_TRIANGULAR,
  PCA_EPARAM_RANGE,
  PCA_EEPSILON_TOO_LARGE,
  PCA_EDIMENSION_MISMATCH,
  PCA_EINTERNAL,
  PCA_EINVALID_POLYLINE,
  PCA_EODD_WIDTH_PERIODIC,
  PCA_ESTATE_SPACE_TOO_LARGE,
  PCA_EINSUFFICIENT_SAMPLES,
  PCA_ECONSTRAINT,
  PCA_EDIVERGENT,
  PCA_EOUT_OF_DOMAIN,
  PCA_EUNKNOWN
} pca_status;

typedef struct pca_kernel pca_kernel;
typedef struct pca_probvec pca_probvec;
typedef struct pca_window pca_window;

/* ------------------------------------------------------------------ */
/* Utilities.                                                         */
/* ------------------------------------------------------------------ */

const char* pca_version(void);
/* Thread-local message describing the last failure; "" after success. */
const char* pca_last_error(void);
void pca_string_free(char* s);
void pca_kernel_free(pca_kernel* k);
void pca_probvec_free(pca_probvec* p);
void pca_window_free(pca_window* w);

/* ------------------------------------------------------------------ */
/* Kernels and probability vectors.                                   */
/* ------------------------------------------------------------------ */

/* Parses the JSON kernel format.  When out_p is non-NULL it receives
 * the file's attached probability vector, or NULL if absent. */
pca_status pca_kernel_from_json(const char* text, pca_kernel** out_kernel,
                                pca_probvec** out_p);
pca_status pca_kernel_load(const char* path, pca_kernel** out_kernel,
                           pca_probvec** out_p);
/* p may be NULL to omit the attachment. */
pca_status pca_kernel_to_json(const pca_kernel* k, const pca_probvec* p,
                              char** out_text);
pca_status pca_kernel_save(const char* path, const pca_kernel* k,
                           const pca_probvec* p);

size_t pca_kernel_n(const pca_kernel* k);
/* 1 when every entry is strictly positive, else 0. */
int pca_kernel_positive_rates(const pca_kernel* k);
pca_status pca_kernel_entry(const pca_kernel* k, size_t a, size_t b,
                            size_t c, size_t d, char** out_rational);
/* 16-hex-digit digest of the canonical serialization. */
pca_status pca_kernel_hash_hex(const pca_kernel* k, char** out_hex);
/* 1 when the two kernels agree entrywise. */
int pca_kernel_equal(const pca_kernel* a, const pca_kernel* b);

pca_status pca_probvec_parse(const char* csv, pca_probvec** out);
size_t pca_probvec_n(const pca_probvec* p);
pca_status pca_probvec_entry(const pca_probvec* p, size_t i,
                             char** out_rational);
pca_status pca_probvec_to_csv(const pca_probvec* p, char** out_csv);

/* ------------------------------------------------------------------ */
/* Invariance and reversibility.                                      */
/* ------------------------------------------------------------------ */

/* cond is one of HZPM, R, RINV, HZMC, HZMC_R, HZMC_RINV, EIG_F, EIG_B.
 * The first three need p; the Markov-measure conditions derive their
 * matrix pair from the kernel and ignore p (it may be NULL).
 * out_holds gets 1/0; out_line (optional) a one-line verdict such as
 * "Cond.2: HOLDS", including the first violating tuple on failure. */
pca_status pca_check(const pca_kernel* k, const pca_probvec* p,
                     const char* cond, int* out_holds, char** out_line);

/* Searches for a probability vector making the product law invariant.
 * out_found gets 1/0; *out_p is set only when found. */
pca_status pca_find_p(const pca_kernel* k, pca_probvec** out_p,
                      int* out_found);

/* g is one of r, r2, r3, h, v, rv, r3v (or id). */
pca_status pca_reverse(const pca_kernel* k, const pca_probvec* p,
                       const char* g, pca_kernel** out);

/* Tab-separated table of quasi-reversibility and reversibility over
 * the eight square symmetries. */
pca_status pca_reversibility_report(const pca_kernel* k,
                                    const pca_probvec* p, char** out_text);

/* ------------------------------------------------------------------ */
/* Families.                                                          */
/* ------------------------------------------------------------------ */

/* family is one of TRIANG, QR_R, QR_RINV, QR_D4, REV_V, REV_R2, REV_H,
 * REV_R2V, REV_R, REV_RV, REV_D4, BIN_HZPM, BIN_R, BIN_RINV, BIN_D4. */
pca_status pca_family_dimension(const char* family, size_t n,
                                long long* out);
/* Orbit count backing the REV_R / REV_RV / REV_D4 dimensions. */
pca_status pca_family_orbit_count(const char* family, size_t n,
                                  unsigned long long* out);

/* params_csv must list exactly family_dimension(family, n) rationals;
 * eps scales the offset from the product kernel. */
pca_status pca_gen_member(const char* family, const pca_probvec* p,
                          const char* params_csv, const char* eps,
                          pca_kernel** out);

/* Two-letter parametrized families (BIN_*): k > 0 sets the measure
 * p = (1/(1+k), k/(1+k)); params_csv lists the family's q values. */
pca_status pca_binary_family(const char* family, const char* k,
                             const char* params_csv, pca_kernel** out,
                             pca_probvec** out_p);

/* ------------------------------------------------------------------ */
/* Exact laws.                                                        */
/* ------------------------------------------------------------------ */

/* Joint law of the two boundary lines of the rotated diamond at depth
 * m, with product-marginal and independence diagnostics. */
pca_status pca_marginals_report(const pca_kernel* k, const pca_probvec* p,
                                size_t m, char** out_text);

/* Markov-measure extraction.  out_found gets 1 when the eigenvector
 * pair satisfies both fixed-point conditions; only then are the report
 * and the optional rotated kernels (t_r, t_rinv) produced. */
pca_status pca_hzmc_extract(const pca_kernel* k, int* out_found,
                            char** out_report, pca_kernel** out_t_r,
                            pca_kernel** out_t_rinv);

/* Exact distance-to-stationarity table on the finite zigzag chain of
 * half-width hw (positive rates required). */
pca_status pca_ergodicity_report(const pca_kernel* k, const pca_probvec* p,
                                 size_t hw, size_t t_max, char** out_text);

/* ------------------------------------------------------------------ */
/* Simulation.                                                        */
/* ------------------------------------------------------------------ */

/* init: "hzpm" | "constant:<s>" | "hzmc"
 * boundary: "iid" | "periodic" | "fixed:<l>,<r>" */
pca_status pca_simulate(const pca_kernel* k, const pca_probvec* p,
                        const char* init, const char* boundary,
                        size_t width, size_t height, uint64_t seed,
                        pca_window** out);

size_t pca_window_width(const pca_window* w);
size_t pca_window_height(const pca_window* w);
size_t pca_window_n(const pca_window* w);
/* Symbol at (i, t), or -1 on the holes of the even sublattice. */
int pca_window_at(const pca_window* w, size_t i, size_t t);
/* Plain-text rendering, one row per time line, '.' on the holes. */
pca_status pca_window_text(const pca_window* w, char** out_text);
/* Binary P5 image; out_len receives the byte count. */
pca_status pca_render_pgm(const pca_window* w, char** out_bytes,
                          size_t* out_len);

/* lines: ';'-separated specs -- "horizontal:<t>", "vertical:<i>",
 * "sloped:<dx>,<dy>,<offset>", "zigzag:<i>,<t>;..." (a zigzag consumes
 * the rest of the string).  Draws `windows` independent diagrams with
 * seeds seed, seed+1, ... and pools each line across them. */
pca_status pca_lines_test(const pca_kernel* k, const pca_probvec* p,
                          const char* init, const char* boundary,
                          size_t width, size_t height, uint64_t seed,
                          size_t windows, const char* lines, double alpha,
                          int* out_all_pass, char** out_report);

/* ------------------------------------------------------------------ */
/* Models.                                                            */
/* ------------------------------------------------------------------ */

/* Positive weights with wa + wc = wb + wd; out_q/out_r (optional)
 * receive the induced flip and keep probabilities. */
pca_status pca_eight_vertex(const char* wa, const char* wb, const char* wc,
                            const char* wd, pca_kernel** out,
                            char** out_q, char** out_r);

/* Orientation induced by a binary window: vertex-type histogram and an
 * edge list ("j s dj ds bit" per line); either output may be NULL. */
pca_status pca_orientation(const pca_window* w, char** out_histogram,
                           char** out_edges);

/* Area generating functions of directed animals and the
 * change-of-variable residual. */
pca_status pca_animals_gf(double z, double* out_square,
                          double* out_triangular, double* out_residual);

/* lattice: "square" | "triangular"; p in (0,1). */
pca_status pca_animals_kernel(const char* lattice, const char* p,
                              pca_kernel** out);

/* Blocked stationary-density estimate on a periodic strip. */
pca_status pca_stationary_density(const pca_kernel* k, const pca_probvec* p,
                                  size_t width, size_t rows, size_t burn_in,
                                  size_t blocks, uint64_t seed,
                                  double* out_density, double* out_std_error,
                                  char** out_report);

/* Exclusion-process move families: move_csv[j] is the rate at headway
 * j+1 given the front particle moved, stay_csv[j] at headway j+2 given
 * it stayed; the tails extend both families.  Empty CSVs are allowed. */
pca_status pca_tasep_gap_law(const char* move_csv, const char* move_tail,
                             const char* stay_csv, const char* stay_tail,
                             const char* q1, size_t cutoff,
                             char** out_report);

pca_status pca_tasep_simulate(const char* move_csv, const char* move_tail,
                              const char* stay_csv, const char* stay_tail,
                              const char* q1, size_t n_particles,
                              size_t t_steps, uint64_t seed,
                              char** out_report);

/* Ring variant: conserves the headway sum exactly; the report carries
 * the final headway histogram and the conservation check. */
pca_status pca_tasep_ring(const char* move_csv, const char* move_tail,
                          const char* stay_csv, const char* stay_tail,
                          size_t n_particles, unsigned long initial_gap,
                          size_t t_steps, uint64_t seed, char** out_report);

/* Provenance header ("# version=... # kernel-hash=... # seed=...") for
 * report files; k may be NULL, has_seed 0 drops the seed line. */
pca_status pca_provenance(const pca_kernel* k, int has_seed, uint64_t seed,
                          char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* PCA_H */
