#include "marginals.hpp"

#include <functional>

#include "error.hpp"
#include "reversibility.hpp"

namespace pca {

namespace {

void require_triang(const TransitionKernel& t, const ProbVector& p) {
  if (t.n() != p.n()) {
    fail(Errc::alphabet_mismatch, "AlphabetMismatch between kernel and p");
  }
  if (!check_condition(t, p, Cond::hzpm).holds) {
    fail(Errc::not_triangular,
         "NotInTriang: p is not an invariant product measure (Cond.1)");
  }
}

using Column = std::vector<std::uint8_t>;

// Column-transfer evaluation of a diamond factorization.  `initial`
// yields the weight of column 0; `transition` the factor tying column
// j-1 to column j; `observe` lists the cells of column j that extend the
// output key (in output order).  Returns the joint law of all observed
// cells.
FiniteDistribution column_dp(
    std::size_t n, std::size_t m,
    const std::function<Rat(const Column&)>& initial,
    const std::function<Rat(std::size_t, const Column&, const Column&)>&
        transition,
    const std::function<std::vector<std::size_t>(std::size_t)>& observe) {
  std::vector<Column> columns;
  {
    Column c(m + 1, 0);
    while (true) {
      columns.push_back(c);
      std::size_t pos = m + 1;
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++c[pos] < n) {
          done = false;
          break;
        }
        c[pos] = 0;
      }
      if (done) break;
    }
  }

  // State: observed prefix followed by the current column.
  std::map<std::vector<std::uint8_t>, Rat> states;
  for (const Column& c : columns) {
    Rat w = initial(c);
    if (w == 0) continue;
    std::vector<std::uint8_t> key;
    for (std::size_t i : observe(0)) key.push_back(c[i]);
    key.insert(key.end(), c.begin(), c.end());
    states[std::move(key)] += w;
  }

  for (std::size_t j = 1; j <= m; ++j) {
    std::map<std::vector<std::uint8_t>, Rat> next;
    for (const auto& [key, w] : states) {
      Column prev(key.end() - static_cast<long>(m + 1), key.end());
      std::vector<std::uint8_t> prefix(key.begin(),
                                       key.end() - static_cast<long>(m + 1));
      for (const Column& cur : columns) {
        Rat step = transition(j, prev, cur);
        if (step == 0) continue;
        std::vector<std::uint8_t> nkey = prefix;
        for (std::size_t i : observe(j)) nkey.push_back(cur[i]);
        nkey.insert(nkey.end(), cur.begin(), cur.end());
        next[std::move(nkey)] += w * step;
      }
    }
    states = std::move(next);
  }

  FiniteDistribution dist;
  dist.n = n;
  for (const auto& [key, w] : states) {
    std::vector<std::uint8_t> prefix(key.begin(),
                                     key.end() - static_cast<long>(m + 1));
    dist.length = prefix.size();
    dist.add(prefix, w);
  }
  return dist;
}

}  // namespace

Rat diamond_probability(const TransitionKernel& t, const ProbVector& p,
                        std::size_t m, const std::vector<Symbol>& cells) {
  require_triang(t, p);
  if (m == 0) fail(Errc::invalid_argument, "diamond needs m >= 1");
  if (cells.size() != (m + 1) * (m + 1)) {
    fail(Errc::invalid_argument,
         "diamond over m=" + std::to_string(m) + " needs " +
             std::to_string((m + 1) * (m + 1)) + " cells");
  }
  std::size_t n = t.n();
  for (Symbol v : cells) {
    if (v >= n) fail(Errc::invalid_argument, "symbol out of alphabet range");
  }
  auto a = [&](std::size_t i, std::size_t j) { return cells[i * (m + 1) + j]; };
  Rat prob = 1;
  for (std::size_t i = 0; i <= m; ++i) prob *= p[a(i, 0)];
  for (std::size_t j = 1; j <= m; ++j) prob *= p[a(0, j)];
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      prob *= t(a(i, j - 1), a(i - 1, j - 1), a(i - 1, j), a(i, j));
    }
  }
  return prob;
}

FiniteDistribution rotated_marginal(const TransitionKernel& t,
                                    const ProbVector& p, std::size_t m) {
  require_triang(t, p);
  if (!check_condition(t, p, Cond::r).holds) {
    fail(Errc::precondition_failed,
         "PreconditionFailed(r, R): rotated_marginal needs Cond.2");
  }
  if (m == 0) fail(Errc::invalid_argument, "rotated_marginal needs m >= 1");
  std::size_t n = t.n();
  {
    double guard = 1.0;
    for (std::size_t i = 0; i < 3 * m + 1; ++i) guard *= double(n);
    if (guard > 2e6) {
      fail(Errc::state_space_too_large,
           "StateSpaceTooLarge: rotated_marginal guard exceeded");
    }
  }

  // Observed cells per column j: (j,j) always, (j+1,j) while j < m.
  auto observe = [&](std::size_t j) {
    std::vector<std::size_t> idx = {j};
    if (j < m) idx.push_back(j + 1);
    return idx;
  };

  // Direct factorization: base column iid p, transition
  //   p(cur[0]) prod_i T(prev[i], prev[i-1], cur[i-1]; cur[i]).
  auto direct = column_dp(
      n, m,
      [&](const Column& c) {
        Rat w = 1;
        for (std::uint8_t v : c) w *= p[v];
        return w;
      },
      [&](std::size_t, const Column& prev, const Column& cur) {
        Rat w = p[cur[0]];
        for (std::size_t i = 1; i <= m; ++i) {
          w *= t(prev[i], prev[i - 1], cur[i - 1], cur[i]);
        }
        return w;
      },
      observe);

  // Quarter-turn factorization through T_r:
  //   p(cur[m]) prod_i T_r(cur[i+1], prev[i+1], prev[i]; cur[i]).
  TransitionKernel tr = sigma_transport(t, p, Dihedral::r);
  auto flipped = column_dp(
      n, m,
      [&](const Column& c) {
        Rat w = 1;
        for (std::uint8_t v : c) w *= p[v];
        return w;
      },
      [&](std::size_t, const Column& prev, const Column& cur) {
        Rat w = p[cur[m]];
        for (std::size_t i = 0; i < m; ++i) {
          w *= tr(cur[i + 1], prev[i + 1], prev[i], cur[i]);
        }
        return w;
      },
      observe);

  if (direct.weights != flipped.weights) {
    fail(Errc::internal_disagreement,
         "InternalDisagreement: direct and quarter-turn factorizations of "
         "the rotated marginal differ");
  }
  return direct;
}

}  // namespace pca
