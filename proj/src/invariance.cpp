#include "invariance.hpp"

#include <algorithm>

#include "error.hpp"
#include "linalg.hpp"

namespace pca {

namespace {

const char* kCondNames[] = {"HZPM",   "R",         "RINV",  "HZMC",
                            "HZMC_R", "HZMC_RINV", "EIG_F", "EIG_B"};

std::string tuple_text(std::initializer_list<std::pair<char, Symbol>> parts) {
  std::string out;
  for (const auto& [name, value] : parts) {
    if (!out.empty()) out += ',';
    out += name;
    out += '=';
    out += std::to_string(value);
  }
  return out;
}

void require_same_n(std::size_t kn, std::size_t pn) {
  if (kn != pn) {
    fail(Errc::alphabet_mismatch, "AlphabetMismatch: kernel n=" +
                                      std::to_string(kn) + ", measure n=" +
                                      std::to_string(pn));
  }
}

}  // namespace

std::string cond_name(Cond c) {
  return kCondNames[static_cast<int>(c) - 1];
}

std::optional<Cond> cond_parse(std::string_view s) {
  for (int k = 0; k < 8; ++k) {
    if (s == kCondNames[k]) return static_cast<Cond>(k + 1);
  }
  return std::nullopt;
}

CheckResult check_condition(const TransitionKernel& t, const ProbVector& p,
                            Cond cond) {
  require_same_n(t.n(), p.n());
  std::size_t n = t.n();
  // Each condition fixes three of (a,b,c,d) and sums the fourth; the
  // loops below run in lexicographic order of the fixed tuple so the
  // first violation found is the canonical witness.
  switch (cond) {
    case Cond::hzpm:
      for (Symbol a = 0; a < n; ++a)
        for (Symbol c = 0; c < n; ++c)
          for (Symbol d = 0; d < n; ++d) {
            Rat rhs = 0;
            for (Symbol b = 0; b < n; ++b) rhs += p[b] * t(a, b, c, d);
            if (rhs != p[d]) {
              return {false,
                      Witness{tuple_text({{'a', a}, {'c', c}, {'d', d}}),
                              p[d], rhs}};
            }
          }
      return {true, std::nullopt};
    case Cond::r:
      for (Symbol a = 0; a < n; ++a)
        for (Symbol b = 0; b < n; ++b)
          for (Symbol d = 0; d < n; ++d) {
            Rat rhs = 0;
            for (Symbol c = 0; c < n; ++c) rhs += p[c] * t(a, b, c, d);
            if (rhs != p[d]) {
              return {false,
                      Witness{tuple_text({{'a', a}, {'b', b}, {'d', d}}),
                              p[d], rhs}};
            }
          }
      return {true, std::nullopt};
    case Cond::rinv:
      for (Symbol b = 0; b < n; ++b)
        for (Symbol c = 0; c < n; ++c)
          for (Symbol d = 0; d < n; ++d) {
            Rat rhs = 0;
            for (Symbol a = 0; a < n; ++a) rhs += p[a] * t(a, b, c, d);
            if (rhs != p[d]) {
              return {false,
                      Witness{tuple_text({{'b', b}, {'c', c}, {'d', d}}),
                              p[d], rhs}};
            }
          }
      return {true, std::nullopt};
    default:
      fail(Errc::invalid_argument,
           "check_condition handles HZPM/R/RINV; use check_hzmc_condition "
           "for Markov-measure conditions");
  }
}

std::optional<ProbVector> find_hzpm(const TransitionKernel& t) {
  std::size_t n = t.n();
  // Unknowns p(0..n-1): invariance equations for every (a,c,d) plus
  // normalization.  The feasible set is a polytope; when the affine
  // solution space is positive-dimensional we enumerate the vertices
  // supported on coordinate hyperplanes, which is exhaustive because the
  // polytope is bounded.
  RatMatrix sys(0, n);
  std::vector<Rat> rhs;
  for (Symbol a = 0; a < n; ++a) {
    for (Symbol c = 0; c < n; ++c) {
      for (Symbol d = 0; d < n; ++d) {
        std::vector<Rat> row(n, Rat(0));
        for (Symbol b = 0; b < n; ++b) row[b] += t(a, b, c, d);
        row[d] -= 1;
        sys.append_row(row);
        rhs.push_back(Rat(0));
      }
    }
  }
  sys.append_row(std::vector<Rat>(n, Rat(1)));
  rhs.push_back(Rat(1));

  auto try_point = [&](const std::vector<Rat>& v) -> std::optional<ProbVector> {
    for (const Rat& x : v) {
      if (x < 0) return std::nullopt;
    }
    return ProbVector(v);
  };

  auto base = rat_solve(sys, rhs);
  if (!base) return std::nullopt;
  if (auto ok = try_point(base->particular)) return ok;
  std::size_t dim = base->kernel_basis.size();
  if (dim == 0) return std::nullopt;

  // Pin `dim` coordinates to zero in all possible ways and re-solve.
  std::vector<std::size_t> subset(dim);
  std::vector<bool> select(n, false);
  std::fill(select.begin(), select.begin() + static_cast<long>(dim), true);
  std::sort(select.begin(), select.end());
  do {
    RatMatrix pinned = sys;
    std::vector<Rat> pinned_rhs = rhs;
    for (std::size_t i = 0; i < n; ++i) {
      if (!select[i]) continue;
      std::vector<Rat> row(n, Rat(0));
      row[i] = 1;
      pinned.append_row(row);
      pinned_rhs.push_back(Rat(0));
    }
    auto sol = rat_solve(pinned, pinned_rhs);
    if (sol && sol->kernel_basis.empty()) {
      if (auto ok = try_point(sol->particular)) return ok;
    }
  } while (std::next_permutation(select.begin(), select.end()));
  return std::nullopt;
}

ProbVector commuting_invariant_vector(const StochasticMatrix& f,
                                      const StochasticMatrix& b) {
  if (f.n() != b.n()) {
    fail(Errc::alphabet_mismatch, "AlphabetMismatch between F and B");
  }
  if (f.multiply(b) != b.multiply(f)) {
    fail(Errc::commutation_violation, "CommutationViolation: FB != BF");
  }
  std::size_t n = f.n();
  RatMatrix fm(n, n);
  for (Symbol i = 0; i < n; ++i)
    for (Symbol j = 0; j < n; ++j) fm.at(i, j) = f(i, j);
  auto fixed = left_fixed_vectors(fm);
  if (fixed.size() != 1) {
    fail(Errc::eigenvector_not_unique,
         "EigenvectorNotUnique: invariant space of F has dimension " +
             std::to_string(fixed.size()));
  }
  Rat sum = 0;
  for (const Rat& x : fixed[0]) sum += x;
  if (sum == 0) {
    fail(Errc::eigenvector_not_unique,
         "EigenvectorNotUnique: invariant vector of F is not normalizable");
  }
  std::vector<Rat> rho(n);
  for (Symbol i = 0; i < n; ++i) rho[i] = fixed[0][i] / sum;
  ProbVector result(rho);  // validates nonnegativity and normalization
  // F and B commute, so rho B is F-invariant; uniqueness forces rho B = rho.
  for (Symbol j = 0; j < n; ++j) {
    Rat image = 0;
    for (Symbol i = 0; i < n; ++i) image += result[i] * b(i, j);
    if (image != result[j]) {
      fail(Errc::eigenvector_not_unique,
           "EigenvectorNotUnique: F-invariant vector is not B-invariant");
    }
  }
  return result;
}

HzmcSpec::HzmcSpec(StochasticMatrix f, StochasticMatrix b)
    : f_(std::move(f)),
      b_(std::move(b)),
      rho_(commuting_invariant_vector(f_, b_)) {
  if (!rho_.positive()) {
    fail(Errc::non_positive_rates,
         "invariant vector of (F,B) has zero entries");
  }
}

CheckResult check_hzmc_condition(const TransitionKernel& t,
                                 const HzmcSpec& spec, Cond cond) {
  require_same_n(t.n(), spec.n());
  std::size_t n = t.n();
  const StochasticMatrix& f = spec.f();
  const StochasticMatrix& b = spec.b();
  const ProbVector& rho = spec.rho();
  switch (cond) {
    case Cond::hzmc:
      for (Symbol a = 0; a < n; ++a)
        for (Symbol c = 0; c < n; ++c)
          for (Symbol d = 0; d < n; ++d) {
            Rat lhs = f(a, d) * b(d, c);
            Rat rhs = 0;
            for (Symbol bb = 0; bb < n; ++bb) {
              rhs += b(a, bb) * f(bb, c) * t(a, bb, c, d);
            }
            if (lhs != rhs) {
              return {false,
                      Witness{tuple_text({{'a', a}, {'c', c}, {'d', d}}),
                              lhs, rhs}};
            }
          }
      return {true, std::nullopt};
    case Cond::hzmc_r:
      for (Symbol a = 0; a < n; ++a)
        for (Symbol bb = 0; bb < n; ++bb)
          for (Symbol d = 0; d < n; ++d) {
            Rat lhs = f(a, d);
            Rat rhs = 0;
            for (Symbol c = 0; c < n; ++c) rhs += f(bb, c) * t(a, bb, c, d);
            if (lhs != rhs) {
              return {false,
                      Witness{tuple_text({{'a', a}, {'b', bb}, {'d', d}}),
                              lhs, rhs}};
            }
          }
      return {true, std::nullopt};
    case Cond::hzmc_rinv:
      for (Symbol bb = 0; bb < n; ++bb)
        for (Symbol c = 0; c < n; ++c)
          for (Symbol d = 0; d < n; ++d) {
            Rat lhs = rho[d] / rho[c] * b(d, c);
            Rat rhs = 0;
            for (Symbol a = 0; a < n; ++a) {
              rhs += rho[a] / rho[bb] * b(a, bb) * t(a, bb, c, d);
            }
            if (lhs != rhs) {
              return {false,
                      Witness{tuple_text({{'b', bb}, {'c', c}, {'d', d}}),
                              lhs, rhs}};
            }
          }
      return {true, std::nullopt};
    case Cond::eig_f:
      for (Symbol a = 0; a < n; ++a)
        for (Symbol bb = 0; bb < n; ++bb)
          for (Symbol c = 0; c < n; ++c) {
            Rat lhs = f(bb, c);
            Rat rhs = 0;
            for (Symbol d = 0; d < n; ++d) rhs += f(a, d) * t(d, a, bb, c);
            if (lhs != rhs) {
              return {false,
                      Witness{tuple_text({{'a', a}, {'b', bb}, {'c', c}}),
                              lhs, rhs}};
            }
          }
      return {true, std::nullopt};
    case Cond::eig_b:
      for (Symbol a = 0; a < n; ++a)
        for (Symbol c = 0; c < n; ++c)
          for (Symbol d = 0; d < n; ++d) {
            Rat lhs = b(d, c);
            Rat rhs = 0;
            for (Symbol bb = 0; bb < n; ++bb) {
              rhs += b(a, bb) * t(d, a, bb, c);
            }
            if (lhs != rhs) {
              return {false,
                      Witness{tuple_text({{'a', a}, {'c', c}, {'d', d}}),
                              lhs, rhs}};
            }
          }
      return {true, std::nullopt};
    default:
      fail(Errc::invalid_argument,
           "check_hzmc_condition handles HZMC/HZMC_R/HZMC_RINV/EIG_F/EIG_B");
  }
}

Rat hzmc_zigzag_probability(const HzmcSpec& spec, const std::vector<bool>& ups,
                            const std::vector<Symbol>& values) {
  if (values.size() != ups.size() + 1 || values.empty()) {
    fail(Errc::invalid_argument,
         "polyline needs one more value than steps");
  }
  for (Symbol v : values) {
    if (v >= spec.n()) {
      fail(Errc::invalid_argument, "symbol out of alphabet range");
    }
  }
  Rat prob = spec.rho()[values[0]];
  for (std::size_t i = 0; i < ups.size(); ++i) {
    prob *= ups[i] ? spec.f()(values[i], values[i + 1])
                   : spec.b()(values[i], values[i + 1]);
  }
  return prob;
}

HzmcSpec hzmc_candidate(const TransitionKernel& t) {
  std::size_t n = t.n();
  // Candidate rows: F(a;.) must be invariant for (T(d,a,a;c))_{d,c} and
  // B(a;.) for (T(a,a,b;c))_{b,c}; both matrices are row-stochastic.
  auto eigen_row = [&](const RatMatrix& m, const std::string& which) {
    auto fixed = left_fixed_vectors(m);
    if (fixed.size() != 1) {
      fail(Errc::eigenvector_not_unique,
           "EigenvectorNotUnique: " + which + " candidate space has dim " +
               std::to_string(fixed.size()));
    }
    Rat sum = 0;
    for (const Rat& x : fixed[0]) sum += x;
    if (sum == 0) {
      fail(Errc::eigenvector_not_unique,
           "EigenvectorNotUnique: " + which + " vector not normalizable");
    }
    std::vector<Rat> row(n);
    for (Symbol j = 0; j < n; ++j) row[j] = fixed[0][j] / sum;
    return row;
  };

  std::vector<Rat> f_entries(n * n), b_entries(n * n);
  for (Symbol a = 0; a < n; ++a) {
    RatMatrix mf(n, n), mb(n, n);
    for (Symbol x = 0; x < n; ++x) {
      for (Symbol c = 0; c < n; ++c) {
        mf.at(x, c) = t(x, a, a, c);
        mb.at(x, c) = t(a, a, x, c);
      }
    }
    auto frow = eigen_row(mf, "F(" + std::to_string(a) + ";.)");
    auto brow = eigen_row(mb, "B(" + std::to_string(a) + ";.)");
    for (Symbol j = 0; j < n; ++j) {
      f_entries[a * n + j] = frow[j];
      b_entries[a * n + j] = brow[j];
    }
  }

  StochasticMatrix f(n, std::move(f_entries));
  StochasticMatrix b(n, std::move(b_entries));
  return HzmcSpec(std::move(f), std::move(b));
}

std::optional<HzmcExtraction> hzmc_from_kernel(const TransitionKernel& t) {
  const std::size_t n = t.n();
  std::optional<HzmcSpec> candidate;
  try {
    candidate = hzmc_candidate(t);
  } catch (const Error& e) {
    // No candidate matrix pair at all: not an extractable kernel.
    if (e.code() == Errc::eigenvector_not_unique ||
        e.code() == Errc::commutation_violation)
      return std::nullopt;
    throw;
  }
  HzmcSpec spec = std::move(*candidate);
  const StochasticMatrix& f = spec.f();
  const StochasticMatrix& b = spec.b();

  if (!check_hzmc_condition(t, spec, Cond::eig_f).holds) return std::nullopt;
  if (!check_hzmc_condition(t, spec, Cond::eig_b).holds) return std::nullopt;

  if (!f.positive() || !b.positive()) {
    fail(Errc::non_positive_rates,
         "rotated kernels need strictly positive F and B");
  }

  // T_r3(a,b,c;d) = F(a;d) T(d,a,b;c) / F(b;c)   (rows sum by eig_f)
  // T_r (a,b,c;d) = B(c;d) T(b,c,d;a) / B(b;a)   (rows sum by eig_b)
  std::vector<Rat> rinv_entries(n * n * n * n), r_entries(n * n * n * n);
  for (Symbol a = 0; a < n; ++a)
    for (Symbol bb = 0; bb < n; ++bb)
      for (Symbol c = 0; c < n; ++c)
        for (Symbol d = 0; d < n; ++d) {
          std::size_t idx = ((a * n + bb) * n + c) * n + d;
          rinv_entries[idx] = f(a, d) * t(d, a, bb, c) / f(bb, c);
          r_entries[idx] = b(c, d) * t(bb, c, d, a) / b(bb, a);
        }

  return HzmcExtraction{std::move(spec),
                        TransitionKernel(n, std::move(rinv_entries)),
                        TransitionKernel(n, std::move(r_entries))};
}

FiniteDistribution product_distribution(const ProbVector& p,
                                        std::size_t length) {
  FiniteDistribution dist;
  dist.n = p.n();
  dist.length = length;
  std::vector<std::uint8_t> key(length, 0);
  while (true) {
    Rat w = 1;
    for (std::uint8_t s : key) w *= p[s];
    dist.add(key, w);
    std::size_t pos = length;
    while (pos > 0) {
      --pos;
      if (++key[pos] < p.n()) break;
      key[pos] = 0;
      if (pos == 0) return dist;
    }
    if (length == 0) return dist;
  }
}

FiniteDistribution zigzag_pushforward(const TransitionKernel& t,
                                      const ProbVector& p, std::size_t k) {
  require_same_n(t.n(), p.n());
  if (k < 2) fail(Errc::invalid_argument, "zigzag pushforward needs k >= 2");
  std::size_t n = t.n();
  std::size_t in_len = 2 * k + 1;
  double size_guard = 1.0;
  for (std::size_t i = 0; i < in_len; ++i) size_guard *= double(n);
  if (size_guard > 2e6) {
    fail(Errc::state_space_too_large,
         "StateSpaceTooLarge: zigzag enumeration exceeds guard");
  }

  // Input zigzag: lower cells L_0..L_k interleaved with upper cells
  // U_0..U_{k-1}, iid p.  New row cells V_j ~ T(U_{j-1}, L_j, U_j; .)
  // for j = 1..k-1; output zigzag is U_0, V_1, U_1, ..., V_{k-1}, U_{k-1}.
  FiniteDistribution dist;
  dist.n = n;
  dist.length = 2 * k - 1;

  std::vector<std::uint8_t> in(in_len, 0);
  auto lower = [&](std::size_t j) { return in[2 * j]; };
  auto upper = [&](std::size_t j) { return in[2 * j + 1]; };
  while (true) {
    Rat base = 1;
    for (std::uint8_t s : in) base *= p[s];
    if (base != 0) {
      // Enumerate the k-1 produced cells.
      std::vector<std::uint8_t> v(k - 1, 0);
      while (true) {
        Rat w = base;
        for (std::size_t j = 1; j < k; ++j) {
          w *= t(upper(j - 1), lower(j), upper(j), v[j - 1]);
        }
        if (w != 0) {
          std::vector<std::uint8_t> out(2 * k - 1);
          for (std::size_t j = 0; j < k; ++j) out[2 * j] = upper(j);
          for (std::size_t j = 1; j < k; ++j) out[2 * j - 1] = v[j - 1];
          dist.add(out, w);
        }
        std::size_t pos = v.size();
        bool done = true;
        while (pos > 0) {
          --pos;
          if (++v[pos] < n) {
            done = false;
            break;
          }
          v[pos] = 0;
        }
        if (done) break;
      }
    }
    std::size_t pos = in_len;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++in[pos] < n) {
        done = false;
        break;
      }
      in[pos] = 0;
    }
    if (done) break;
  }
  return dist;
}

}  // namespace pca
