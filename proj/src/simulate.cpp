#include "simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"

namespace pca {

namespace {

// Draws from a cumulative row: first index whose cdf exceeds u.
Symbol pick(const std::vector<double>& cdf, std::size_t begin, std::size_t n,
            double u) {
  for (std::size_t d = 0; d + 1 < n; ++d)
    if (u < cdf[begin + d]) return d;
  return n - 1;
}

std::vector<double> cumulative(const std::vector<Rat>& weights,
                               std::size_t row_len) {
  std::vector<double> cdf(weights.size());
  for (std::size_t r = 0; r * row_len < weights.size(); ++r) {
    double acc = 0.0;
    for (std::size_t d = 0; d < row_len; ++d) {
      acc += rat_double(weights[r * row_len + d]);
      cdf[r * row_len + d] = acc;
    }
  }
  return cdf;
}

void check_symbol(Symbol s, std::size_t n, const char* what) {
  if (s >= n)
    fail(Errc::invalid_argument, std::string("InvalidArgument: ") + what +
                                     " symbol " + std::to_string(s) +
                                     " is outside the alphabet");
}

}  // namespace

SpaceTimeWindow::SpaceTimeWindow(std::size_t n, std::size_t width,
                                 std::size_t height)
    : n_(n), width_(width), height_(height),
      cells_(width * height, kHole) {}

std::size_t SpaceTimeWindow::populated_count() const {
  std::size_t count = 0;
  for (std::size_t t = 0; t < height_; ++t)
    for (std::size_t i = 0; i < width_; ++i)
      if (populated(i, t)) ++count;
  return count;
}

LineSpec LineSpec::horizontal(long t) {
  LineSpec s;
  s.kind = Kind::horizontal;
  s.t = t;
  return s;
}

LineSpec LineSpec::vertical(long i) {
  LineSpec s;
  s.kind = Kind::vertical;
  s.i = i;
  return s;
}

LineSpec LineSpec::sloped(long dx, long dy, long offset) {
  LineSpec s;
  s.kind = Kind::sloped;
  s.dx = dx;
  s.dy = dy;
  s.offset = offset;
  return s;
}

LineSpec LineSpec::zigzag(std::vector<std::pair<long, long>> polyline) {
  LineSpec s;
  s.kind = Kind::zigzag;
  s.polyline = std::move(polyline);
  return s;
}

std::string LineSpec::str() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::horizontal:
      out << "horizontal:" << t;
      break;
    case Kind::vertical:
      out << "vertical:" << i;
      break;
    case Kind::sloped:
      out << "sloped:" << dx << "," << dy << "," << offset;
      break;
    case Kind::zigzag: {
      out << "zigzag:";
      for (std::size_t k = 0; k < polyline.size(); ++k) {
        if (k) out << ";";
        out << polyline[k].first << "," << polyline[k].second;
      }
      break;
    }
  }
  return out.str();
}

std::optional<LineSpec> LineSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const std::string head(text.substr(0, colon));
  const std::string rest(text.substr(colon + 1));
  auto parse_longs = [](const std::string& s,
                        char sep) -> std::optional<std::vector<long>> {
    std::vector<long> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t next = s.find(sep, pos);
      if (next == std::string::npos) next = s.size();
      const std::string item = s.substr(pos, next - pos);
      if (item.empty()) return std::nullopt;
      char* end = nullptr;
      const long value = std::strtol(item.c_str(), &end, 10);
      if (end == nullptr || *end != '\0') return std::nullopt;
      out.push_back(value);
      if (next == s.size()) break;
      pos = next + 1;
    }
    return out;
  };
  if (head == "horizontal" || head == "vertical") {
    auto values = parse_longs(rest, ',');
    if (!values || values->size() != 1) return std::nullopt;
    return head == "horizontal" ? horizontal((*values)[0])
                                : vertical((*values)[0]);
  }
  if (head == "sloped") {
    auto values = parse_longs(rest, ',');
    if (!values || values->size() != 3) return std::nullopt;
    return sloped((*values)[0], (*values)[1], (*values)[2]);
  }
  if (head == "zigzag") {
    std::vector<std::pair<long, long>> points;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t next = rest.find(';', pos);
      if (next == std::string::npos) next = rest.size();
      auto pair = parse_longs(rest.substr(pos, next - pos), ',');
      if (!pair || pair->size() != 2) return std::nullopt;
      points.emplace_back((*pair)[0], (*pair)[1]);
      if (next == rest.size()) break;
      pos = next + 1;
    }
    if (points.empty()) return std::nullopt;
    return zigzag(std::move(points));
  }
  return std::nullopt;
}

SpaceTimeWindow sample_diagram(const TransitionKernel& t,
                               const ProbVector& p, const InitPolicy& init,
                               const BoundaryPolicy& boundary,
                               std::size_t width, std::size_t height,
                               std::uint64_t seed) {
  const std::size_t n = t.n();
  if (p.n() != n)
    fail(Errc::alphabet_mismatch,
         "AlphabetMismatch: kernel and symbol law disagree");
  if (width < 2 || height < 2)
    fail(Errc::invalid_argument,
         "InvalidArgument: window must be at least 2 x 2");
  if (std::holds_alternative<BoundaryPeriodic>(boundary) && width % 2 != 0)
    fail(Errc::odd_width_periodic,
         "OddWidthPeriodic: periodic wrapping needs an even width, got " +
             std::to_string(width));
  if (const auto* fixed = std::get_if<BoundaryFixed>(&boundary)) {
    check_symbol(fixed->left, n, "left boundary");
    check_symbol(fixed->right, n, "right boundary");
  }

  const CounterRng rng(seed);
  const std::vector<double> kernel_cdf = cumulative(t.entries(), n);
  const std::vector<double> p_cdf = cumulative(p.entries(), n);

  SpaceTimeWindow window(n, width, height);

  // First two rows.
  if (const auto* hz = std::get_if<InitHzmc>(&init)) {
    const HzmcSpec& spec = *hz->spec;
    if (spec.n() != n)
      fail(Errc::alphabet_mismatch,
           "AlphabetMismatch: kernel and Markov spec disagree");
    const std::vector<double> rho_cdf = cumulative(spec.rho().entries(), n);
    const std::vector<double> f_cdf = cumulative(spec.f().entries(), n);
    const std::vector<double> b_cdf = cumulative(spec.b().entries(), n);
    Symbol prev = 0;
    for (std::size_t i = 0; i < width; ++i) {
      const std::size_t row = i % 2;  // zigzag (0,0),(1,1),(2,0),...
      const double u = rng.uniform(kStreamInit, row, i);
      Symbol s;
      if (i == 0)
        s = pick(rho_cdf, 0, n, u);
      else if (row == 1)  // up-step
        s = pick(f_cdf, prev * n, n, u);
      else                // down-step
        s = pick(b_cdf, prev * n, n, u);
      window.set(i, row, static_cast<std::uint8_t>(s));
      prev = s;
    }
  } else if (const auto* cst = std::get_if<InitConstant>(&init)) {
    check_symbol(cst->s, n, "constant init");
    for (std::size_t row = 0; row < 2; ++row)
      for (std::size_t i = row % 2; i < width; i += 2)
        window.set(i, row, static_cast<std::uint8_t>(cst->s));
  } else if (const auto* ex = std::get_if<InitExplicit>(&init)) {
    const std::size_t len0 = (width + 1) / 2, len1 = width / 2;
    if (ex->row0.size() != len0 || ex->row1.size() != len1)
      fail(Errc::dimension_mismatch,
           "DimensionMismatch: explicit init rows must have " +
               std::to_string(len0) + " and " + std::to_string(len1) +
               " symbols");
    for (std::size_t k = 0; k < len0; ++k) {
      check_symbol(ex->row0[k], n, "explicit init");
      window.set(2 * k, 0, static_cast<std::uint8_t>(ex->row0[k]));
    }
    for (std::size_t k = 0; k < len1; ++k) {
      check_symbol(ex->row1[k], n, "explicit init");
      window.set(2 * k + 1, 1, static_cast<std::uint8_t>(ex->row1[k]));
    }
  } else {  // InitHzpm: every cell of the two rows is iid p
    for (std::size_t row = 0; row < 2; ++row)
      for (std::size_t i = row % 2; i < width; i += 2) {
        const double u = rng.uniform(kStreamInit, row, i);
        window.set(i, row,
                   static_cast<std::uint8_t>(pick(p_cdf, 0, n, u)));
      }
  }

  // Bulk rows.
  for (std::size_t row = 2; row < height; ++row) {
    // One fresh symbol per side and step under the iid boundary.
    Symbol fresh_left = 0, fresh_right = 0;
    if (std::holds_alternative<BoundaryIidP>(boundary)) {
      fresh_left =
          pick(p_cdf, 0, n, rng.uniform(kStreamBoundary, row, 0));
      fresh_right =
          pick(p_cdf, 0, n, rng.uniform(kStreamBoundary, row, 1));
    }
    for (std::size_t i = row % 2; i < width; i += 2) {
      Symbol west, east;
      if (i == 0) {
        if (std::holds_alternative<BoundaryPeriodic>(boundary))
          west = window.at(width - 1, row - 1);
        else if (const auto* fixed = std::get_if<BoundaryFixed>(&boundary))
          west = fixed->left;
        else
          west = fresh_left;
      } else {
        west = window.at(i - 1, row - 1);
      }
      if (i == width - 1) {
        if (std::holds_alternative<BoundaryPeriodic>(boundary))
          east = window.at(0, row - 1);
        else if (const auto* fixed = std::get_if<BoundaryFixed>(&boundary))
          east = fixed->right;
        else
          east = fresh_right;
      } else {
        east = window.at(i + 1, row - 1);
      }
      const Symbol south = window.at(i, row - 2);
      const std::size_t krow = ((west * n + south) * n + east) * n;
      const double u = rng.uniform(kStreamCell, row, i);
      window.set(i, row,
                 static_cast<std::uint8_t>(pick(kernel_cdf, krow, n, u)));
    }
  }
  return window;
}

std::vector<std::uint8_t> extract_line(const SpaceTimeWindow& window,
                                       const LineSpec& line) {
  const long w = static_cast<long>(window.width());
  const long h = static_cast<long>(window.height());
  std::vector<std::uint8_t> values;
  auto in_window = [&](long i, long t) {
    return i >= 0 && i < w && t >= 0 && t < h;
  };
  switch (line.kind) {
    case LineSpec::Kind::horizontal: {
      if (line.t < 0 || line.t >= h) return values;
      for (long i = line.t % 2; i < w; i += 2)
        values.push_back(window.at(i, line.t));
      return values;
    }
    case LineSpec::Kind::vertical: {
      if (line.i < 0 || line.i >= w) return values;
      for (long t = line.i % 2; t < h; t += 2)
        values.push_back(window.at(line.i, t));
      return values;
    }
    case LineSpec::Kind::sloped: {
      if (line.dy < 1 || (line.dx + line.dy) % 2 != 0)
        fail(Errc::invalid_polyline,
             "InvalidPolyline: sloped line needs dy >= 1 and dx + dy "
             "even");
      if (line.offset % 2 != 0)
        fail(Errc::invalid_polyline,
             "InvalidPolyline: sloped line offset must be even to stay "
             "on the lattice");
      bool entered = false;
      for (long k = 0;; ++k) {
        const long i = line.offset + k * line.dx;
        const long t = k * line.dy;
        if (t >= h) break;
        if (!in_window(i, t)) {
          if (entered) break;  // monotone exit
          continue;            // not inside yet
        }
        entered = true;
        values.push_back(window.at(i, t));
      }
      return values;
    }
    case LineSpec::Kind::zigzag: {
      for (std::size_t k = 0; k < line.polyline.size(); ++k) {
        const auto [i, t] = line.polyline[k];
        if (!in_window(i, t))
          fail(Errc::invalid_polyline,
               "InvalidPolyline: point (" + std::to_string(i) + "," +
                   std::to_string(t) + ") is outside the window");
        if ((i + t) % 2 != 0)
          fail(Errc::invalid_polyline,
               "InvalidPolyline: point (" + std::to_string(i) + "," +
                   std::to_string(t) + ") is off the populated lattice");
        if (k > 0) {
          const auto [pi, pt] = line.polyline[k - 1];
          if (std::labs(i - pi) != 1 || std::labs(t - pt) != 1)
            fail(Errc::invalid_polyline,
                 "InvalidPolyline: step " + std::to_string(k) +
                     " is not a diagonal move");
        }
        values.push_back(window.at(i, t));
      }
      return values;
    }
  }
  return values;
}

LineBatchResult line_iid_test(const std::vector<SpaceTimeWindow>& windows,
                              const std::vector<LineSpec>& lines,
                              const ProbVector& p, double alpha) {
  if (windows.empty() || lines.empty())
    fail(Errc::invalid_argument,
         "InvalidArgument: need at least one window and one line");
  const std::size_t n = p.n();
  for (const auto& w : windows)
    if (w.n() != n)
      fail(Errc::alphabet_mismatch,
           "AlphabetMismatch: window and symbol law disagree");
  LineBatchResult result;
  result.alpha = alpha;
  result.bonferroni_alpha =
      alpha / (2.0 * static_cast<double>(lines.size()));
  result.all_pass = true;
  for (const auto& line : lines) {
    std::vector<unsigned long long> counts(n, 0);
    std::vector<unsigned long long> table(n * n, 0);
    for (const auto& w : windows) {
      const auto values = extract_line(w, line);
      for (std::size_t k = 0; k < values.size(); ++k) {
        ++counts[values[k]];
        if (k > 0) ++table[values[k - 1] * n + values[k]];
      }
    }
    LineTestOutcome outcome;
    outcome.label = line.str();
    outcome.gof = chi_square_gof(counts, p.entries());
    outcome.pairs = chi_square_independence(n, table);
    if (outcome.gof.p_value < result.bonferroni_alpha ||
        outcome.pairs.p_value < result.bonferroni_alpha)
      result.all_pass = false;
    result.outcomes.push_back(std::move(outcome));
  }
  return result;
}

ErgodicityResult ergodicity_tv(const TransitionKernel& t,
                               const ProbVector& p, std::size_t k,
                               std::size_t t_max) {
  const std::size_t n = t.n();
  if (p.n() != n)
    fail(Errc::alphabet_mismatch,
         "AlphabetMismatch: kernel and symbol law disagree");
  if (k < 1)
    fail(Errc::invalid_argument, "InvalidArgument: half-width k must be >= 1");
  if (!t.positive_rates())
    fail(Errc::non_positive_rates,
         "NonPositiveRates: the coupling bound needs min T > 0");
  const std::size_t cells = 2 * k + 1;
  double size_estimate = 1.0;
  for (std::size_t c = 0; c < cells; ++c) size_estimate *= double(n);
  if (size_estimate > 2e6)
    fail(Errc::state_space_too_large,
         "StateSpaceTooLarge: n^(2k+1) exceeds 2e6 states");
  std::size_t states = 1;
  for (std::size_t c = 0; c < cells; ++c) states *= n;

  // State layout: older cells a_0..a_k in the high digits, then newer
  // b_0..b_{k-1}; digit s of `state` is symbol floor(state / n^s) % n
  // with s counted from the last coordinate.
  const std::size_t a_len = k + 1, b_len = k;
  auto decode = [&](std::size_t state, std::vector<Symbol>& a,
                    std::vector<Symbol>& b) {
    for (std::size_t j = b_len; j-- > 0;) {
      b[j] = state % n;
      state /= n;
    }
    for (std::size_t j = a_len; j-- > 0;) {
      a[j] = state % n;
      state /= n;
    }
  };

  std::vector<Rat> pi(states);
  {
    std::vector<Symbol> a(a_len), b(b_len);
    for (std::size_t s = 0; s < states; ++s) {
      decode(s, a, b);
      Rat w = 1;
      for (auto x : a) w *= p[x];
      for (auto x : b) w *= p[x];
      pi[s] = w;
    }
  }

  auto step = [&](const std::vector<Rat>& dist) {
    std::vector<Rat> next(states, Rat(0));
    std::vector<Symbol> a(a_len), b(b_len), na(a_len), nb(b_len);
    for (std::size_t s = 0; s < states; ++s) {
      if (dist[s] == 0) continue;
      decode(s, a, b);
      for (Symbol left = 0; left < n; ++left)
        for (Symbol right = 0; right < n; ++right) {
          const Rat edge = dist[s] * p[left] * p[right];
          // Enumerate the new older row.
          std::fill(na.begin(), na.end(), 0);
          while (true) {
            Rat wa = edge;
            for (std::size_t j = 0; j < a_len; ++j) {
              const Symbol w = j == 0 ? left : b[j - 1];
              const Symbol e = j == b_len ? right : b[j];
              wa *= t(w, a[j], e, na[j]);
            }
            if (wa != 0) {
              // Enumerate the new newer row on top of na.
              std::fill(nb.begin(), nb.end(), 0);
              while (true) {
                Rat wb = wa;
                for (std::size_t j = 0; j < b_len; ++j)
                  wb *= t(na[j], b[j], na[j + 1], nb[j]);
                if (wb != 0) {
                  std::size_t idx = 0;
                  for (std::size_t j = 0; j < a_len; ++j)
                    idx = idx * n + na[j];
                  for (std::size_t j = 0; j < b_len; ++j)
                    idx = idx * n + nb[j];
                  next[idx] += wb;
                }
                std::size_t j = b_len;
                while (j > 0 && nb[j - 1] == n - 1) nb[--j] = 0;
                if (j == 0) break;
                ++nb[j - 1];
              }
            }
            std::size_t j = a_len;
            while (j > 0 && na[j - 1] == n - 1) na[--j] = 0;
            if (j == 0) break;
            ++na[j - 1];
          }
        }
    }
    return next;
  };

  auto l1 = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat sum = 0;
    for (std::size_t s = 0; s < states; ++s) sum += abs(x[s] - y[s]);
    return sum;
  };

  const bool product_invariant = check_condition(t, p, Cond::hzpm).holds;

  ErgodicityResult result;
  Rat min_entry = t.min_entry();
  Rat theta = 1;
  {
    Rat coalesce = 1;
    for (std::size_t c = 0; c < cells; ++c) coalesce *= min_entry;
    theta -= coalesce;
  }
  result.theta = theta;

  std::vector<Rat> mu(states, Rat(0));
  mu[0] = 1;  // the all-zero zigzag
  std::vector<Rat> nu = pi;
  Rat bound = 2;
  for (std::size_t step_count = 0;; ++step_count) {
    result.distance.push_back(l1(mu, nu));
    result.bound.push_back(bound);
    if (step_count == t_max) break;
    mu = step(mu);
    nu = step(nu);
    if (product_invariant && nu != pi)
      fail(Errc::internal_disagreement,
           "InternalDisagreement: the product law moved under a kernel "
           "that satisfies Cond.1");
    bound *= theta;
  }
  return result;
}

std::string render_pgm(const SpaceTimeWindow& window) {
  const std::size_t n = window.n();
  if (n > 256)
    fail(Errc::invalid_argument,
         "InvalidArgument: grayscale rendering needs n <= 256");
  const std::size_t w = window.width(), h = window.height();
  auto gray = [&](std::uint8_t s) -> unsigned {
    if (n <= 1) return 0;
    return static_cast<unsigned>((255u * s) / (n - 1));
  };
  std::string out =
      "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + w * h);
  for (std::size_t t = 0; t < h; ++t)
    for (std::size_t i = 0; i < w; ++i) {
      unsigned value;
      if (SpaceTimeWindow::populated(i, t)) {
        value = gray(window.at(i, t));
      } else {
        unsigned sum = 0, count = 0;
        if (i > 0) {
          sum += gray(window.at(i - 1, t));
          ++count;
        }
        if (i + 1 < w) {
          sum += gray(window.at(i + 1, t));
          ++count;
        }
        value = count ? sum / count : 0;
      }
      out.push_back(static_cast<char>(static_cast<unsigned char>(value)));
    }
  return out;
}

}  // namespace pca
