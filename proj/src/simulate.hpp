#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "invariance.hpp"
#include "stats.hpp"
#include "types.hpp"

namespace pca {

// Dense W x H view of a sampled space-time diagram.  Cells live on the
// even sublattice: (i, t) is populated iff i + t is even; the other
// half are holes.  Row t = 0 is the oldest row.
class SpaceTimeWindow {
 public:
  static constexpr std::uint8_t kHole = 0xff;

  SpaceTimeWindow(std::size_t n, std::size_t width, std::size_t height);

  std::size_t n() const { return n_; }
  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  static bool populated(std::size_t i, std::size_t t) {
    return ((i + t) & 1) == 0;
  }
  std::uint8_t at(std::size_t i, std::size_t t) const {
    return cells_[t * width_ + i];
  }
  void set(std::size_t i, std::size_t t, std::uint8_t s) {
    cells_[t * width_ + i] = s;
  }
  std::size_t populated_count() const;

 private:
  std::size_t n_, width_, height_;
  std::vector<std::uint8_t> cells_;
};

// Neighbors outside the window: wrap around (even width only), draw a
// fresh iid-p symbol per step and side, or clamp to fixed symbols.
struct BoundaryPeriodic {};
struct BoundaryIidP {};
struct BoundaryFixed {
  Symbol left, right;
};
using BoundaryPolicy =
    std::variant<BoundaryPeriodic, BoundaryIidP, BoundaryFixed>;

// Law of the first two rows.
struct InitHzpm {};                  // all cells iid p
struct InitHzmc {                    // two-row zigzag is the (F,B)-chain
  const HzmcSpec* spec;
};
struct InitConstant {
  Symbol s;
};
struct InitExplicit {                // populated cells of rows 0 and 1,
  std::vector<Symbol> row0, row1;    // left to right
};
using InitPolicy =
    std::variant<InitHzpm, InitHzmc, InitConstant, InitExplicit>;

// Straight or zigzag lines along which cells are read out of a window.
struct LineSpec {
  enum class Kind { horizontal, vertical, sloped, zigzag };
  Kind kind = Kind::horizontal;
  long t = 0;                      // horizontal
  long i = 0;                      // vertical
  long dx = 1, dy = 1, offset = 0; // sloped: cells (offset + k*dx, k*dy)
  std::vector<std::pair<long, long>> polyline;  // zigzag: (i, t) cells

  static LineSpec horizontal(long t);
  static LineSpec vertical(long i);
  static LineSpec sloped(long dx, long dy, long offset);
  static LineSpec zigzag(std::vector<std::pair<long, long>> polyline);

  std::string str() const;
  // "horizontal:12", "vertical:3", "sloped:1,1,0",
  // "zigzag:0,0;1,1;2,0;..."
  static std::optional<LineSpec> parse(std::string_view text);
};

// Samples a width x height diagram.  The update of cell (i, t) draws
// from T(west, south, east; .) with west = (i-1, t-1), south = (i, t-2),
// east = (i+1, t-1); missing neighbors come from the boundary policy.
// Every draw is keyed by (seed, t, i), so the result is a pure function
// of the arguments.  p is the symbol law used by InitHzpm and by the
// iid boundary.  Requires width, height >= 2; periodic wrapping
// additionally requires an even width (OddWidthPeriodic).
SpaceTimeWindow sample_diagram(const TransitionKernel& t,
                               const ProbVector& p, const InitPolicy& init,
                               const BoundaryPolicy& boundary,
                               std::size_t width, std::size_t height,
                               std::uint64_t seed);

// Cells of the window along the line, in path order.  Off-lattice or
// non-adjacent zigzag points raise InvalidPolyline; lines that miss the
// window entirely return an empty vector.
std::vector<std::uint8_t> extract_line(const SpaceTimeWindow& window,
                                       const LineSpec& line);

// Per-line i.i.d. diagnostics: a goodness-of-fit test of the symbol
// frequencies against p and an independence test on adjacent pairs.
struct LineTestOutcome {
  std::string label;
  ChiSquareResult gof;
  ChiSquareResult pairs;
};

struct LineBatchResult {
  std::vector<LineTestOutcome> outcomes;
  double alpha = 0.0;            // family-wise significance level
  double bonferroni_alpha = 0.0; // per-test threshold alpha / (2 * lines)
  bool all_pass = false;
};

// Pools each line's cells across all windows, then applies both tests
// per line with a Bonferroni-corrected threshold.
LineBatchResult line_iid_test(const std::vector<SpaceTimeWindow>& windows,
                              const std::vector<LineSpec>& lines,
                              const ProbVector& p, double alpha);

// Exact ergodicity experiment on the finite chain whose state is a
// zigzag of half-width k (2k+1 cells: k+1 older, k newer).  One step
// draws the k+1 new older cells from T with iid-p boundary symbols on
// both ends, then the k new newer cells.  Evolves the point mass at the
// all-zero state against the product law pi = p^(2k+1) and returns the
// exact L1 distance sum_x |mu_t(x) - pi_t(x)| per step, together with
// the coupling bound 2 * theta^t, theta = 1 - (min T)^(2k+1).
// Requires positive rates (NonPositiveRates) and a state space of at
// most 2e6 states (StateSpaceTooLarge).
struct ErgodicityResult {
  std::vector<Rat> distance;  // index t = 0..t_max
  std::vector<Rat> bound;
  Rat theta;
};

ErgodicityResult ergodicity_tv(const TransitionKernel& t,
                               const ProbVector& p, std::size_t k,
                               std::size_t t_max);

// Binary P5 image of the window: gray = floor(255 s / (n-1)); holes are
// filled with the mean of their horizontal neighbors.  Requires n <= 256.
std::string render_pgm(const SpaceTimeWindow& window);

}  // namespace pca
