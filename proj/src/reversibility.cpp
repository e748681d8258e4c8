#include "reversibility.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "error.hpp"

namespace pca {

namespace {

using Tuple = std::array<Symbol, 4>;

const char* kFamilyNames[] = {"TRIANG",  "QR_R",  "QR_RINV",  "QR_D4",
                              "REV_V",   "REV_R2", "REV_H",   "REV_R2V",
                              "REV_R",   "REV_RV", "REV_D4",  "BIN_HZPM",
                              "BIN_R",   "BIN_RINV", "BIN_D4"};

std::size_t flat(std::size_t n, const Tuple& x) {
  return ((x[0] * n + x[1]) * n + x[2]) * n + x[3];
}

std::string tuple_str(const Tuple& x) {
  return "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," +
         std::to_string(x[2]) + ";" + std::to_string(x[3]) + ")";
}

void require_positive_p(const ProbVector& p, const char* what) {
  if (!p.positive()) {
    fail(Errc::precondition_failed,
         std::string("PreconditionFailed: ") + what +
             " requires strictly positive p");
  }
}

void require_same_n(const TransitionKernel& t, const ProbVector& p) {
  if (t.n() != p.n()) {
    fail(Errc::alphabet_mismatch, "AlphabetMismatch: kernel n=" +
                                      std::to_string(t.n()) + ", measure n=" +
                                      std::to_string(p.n()));
  }
}

// ---------------------------------------------------------------------
// Completion machinery.
//
// Families are parametrized on a "free block" where the marginalized
// positions and d range over S* = S \ {s}, s = n-1, and the remaining
// positions over all of S.  The missing entries follow uniquely from
// row-stochasticity in d plus the p-weighted marginal identity of every
// marginalized position q:
//     sum_q p(q) T(...q...; d) = p(d).
// The fills are mutually consistent, which verify_member re-checks.
// ---------------------------------------------------------------------
std::vector<Rat> complete_kernel(std::size_t n, const ProbVector& p,
                                 const std::vector<int>& fill_order,
                                 const std::map<Tuple, Rat>& free_values) {
  std::size_t s = n - 1;
  std::vector<Rat> t(n * n * n * n, Rat(0));
  std::array<bool, 4> restricted = {false, false, false, true};
  for (int q : fill_order) restricted[static_cast<std::size_t>(q)] = true;

  auto limit = [&](int pos) { return restricted[pos] ? s : n; };

  // Free block.
  for (const auto& [x, value] : free_values) t[flat(n, x)] = value;

  // d = s from row sums.
  {
    Tuple x;
    for (x[0] = 0; x[0] < limit(0); ++x[0])
      for (x[1] = 0; x[1] < limit(1); ++x[1])
        for (x[2] = 0; x[2] < limit(2); ++x[2]) {
          Rat sum = 0;
          for (x[3] = 0; x[3] < s; ++x[3]) sum += t[flat(n, x)];
          x[3] = s;
          t[flat(n, x)] = 1 - sum;
        }
  }
  restricted[3] = false;

  // Marginalized positions, in the family's canonical order.
  for (int q : fill_order) {
    std::array<std::size_t, 4> lim = {limit(0), limit(1), limit(2), limit(3)};
    lim[q] = 1;  // the q coordinate is forced to s below
    Tuple x;
    for (x[0] = 0; x[0] < lim[0]; ++x[0])
      for (x[1] = 0; x[1] < lim[1]; ++x[1])
        for (x[2] = 0; x[2] < lim[2]; ++x[2])
          for (x[3] = 0; x[3] < lim[3]; ++x[3]) {
            Tuple y = x;
            y[q] = s;
            Rat value = p[y[3]];
            for (Symbol v = 0; v < s; ++v) {
              Tuple z = y;
              z[q] = v;
              value -= p[v] * t[flat(n, z)];
            }
            value /= p[s];
            t[flat(n, y)] = value;
          }
    restricted[q] = false;
  }
  return t;
}

// Completion of a single n x n block in M_S(p): free entries (b,d) in
// S*^2, column s from row sums, row s from the p-weighted column sums.
void complete_block_msp(std::size_t n, const ProbVector& p,
                        std::vector<Rat>& m) {
  std::size_t s = n - 1;
  for (Symbol b = 0; b < s; ++b) {
    Rat sum = 0;
    for (Symbol d = 0; d < s; ++d) sum += m[b * n + d];
    m[b * n + s] = 1 - sum;
  }
  for (Symbol d = 0; d < n; ++d) {
    Rat value = p[d];
    for (Symbol b = 0; b < s; ++b) value -= p[b] * m[b * n + d];
    m[s * n + d] = value / p[s];
  }
}

// p-symmetric stochastic block: entries m(b,d) for b < d are free, the
// lower triangle follows from p(b) m(b,d) = p(d) m(d,b) and the diagonal
// from row sums.  Column sums then equal p automatically.
void complete_block_msym(std::size_t n, const ProbVector& p,
                         std::vector<Rat>& m) {
  for (Symbol d = 0; d < n; ++d)
    for (Symbol b = 0; b < d; ++b) m[d * n + b] = p[b] * m[b * n + d] / p[d];
  for (Symbol b = 0; b < n; ++b) {
    Rat sum = 0;
    for (Symbol d = 0; d < n; ++d) {
      if (d != b) sum += m[b * n + d];
    }
    m[b * n + b] = 1 - sum;
  }
}

void store_block(std::size_t n, std::vector<Rat>& t, Symbol a, Symbol c,
                 const std::vector<Rat>& m) {
  for (Symbol b = 0; b < n; ++b)
    for (Symbol d = 0; d < n; ++d) t[flat(n, {a, b, c, d})] = m[b * n + d];
}

// Coordinate-permutation groups whose orbits index the free parameters
// of the rotation-reversible families (y[i] = x[perm[i]]).
const std::vector<std::array<int, 4>>& orbit_group(FamilyId id) {
  static const std::vector<std::array<int, 4>> c4 = {
      {0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}};
  static const std::vector<std::array<int, 4>> c2 = {{0, 1, 2, 3},
                                                     {3, 2, 1, 0}};
  static const std::vector<std::array<int, 4>> d4 = {
      {0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2},
      {2, 1, 0, 3}, {1, 0, 3, 2}, {0, 3, 2, 1}, {3, 2, 1, 0}};
  switch (id) {
    case FamilyId::rev_r:
      return c4;
    case FamilyId::rev_rv:
      return c2;
    case FamilyId::rev_d4:
      return d4;
    default:
      fail(Errc::invalid_argument, "family has no orbit structure");
  }
}

Tuple apply_perm(const std::array<int, 4>& perm, const Tuple& x) {
  return {x[perm[0]], x[perm[1]], x[perm[2]], x[perm[3]]};
}

long long poly_div(long long value, long long divisor) {
  if (value % divisor != 0) {
    fail(Errc::invalid_argument, "dimension polynomial not integral");
  }
  return value / divisor;
}

void verify_member(FamilyId id, const TransitionKernel& t,
                   const ProbVector& p) {
  auto need_cond = [&](Cond c) {
    if (!check_condition(t, p, c).holds) {
      fail(Errc::internal_disagreement,
           "InternalDisagreement: generated " +
               family_name(id) + " member violates Cond." +
               std::to_string(static_cast<int>(c)));
    }
  };
  auto need_id = [&](Dihedral g) {
    if (!reversal_identity_holds(t, p, g)) {
      fail(Errc::internal_disagreement,
           "InternalDisagreement: generated " + family_name(id) +
               " member is not " + dihedral_name(g) + "-reversible");
    }
  };
  switch (id) {
    case FamilyId::triang:
    case FamilyId::bin_hzpm:
      need_cond(Cond::hzpm);
      break;
    case FamilyId::qr_r:
    case FamilyId::bin_r:
      need_cond(Cond::hzpm);
      need_cond(Cond::r);
      break;
    case FamilyId::qr_rinv:
    case FamilyId::bin_rinv:
      need_cond(Cond::hzpm);
      need_cond(Cond::rinv);
      break;
    case FamilyId::qr_d4:
      need_cond(Cond::hzpm);
      need_cond(Cond::r);
      need_cond(Cond::rinv);
      break;
    case FamilyId::rev_v:
      need_cond(Cond::hzpm);
      need_id(Dihedral::v);
      break;
    case FamilyId::rev_h:
      need_cond(Cond::hzpm);
      need_id(Dihedral::h);
      break;
    case FamilyId::rev_r2:
      need_cond(Cond::hzpm);
      need_id(Dihedral::r2);
      break;
    case FamilyId::rev_r2v:
      need_cond(Cond::hzpm);
      need_id(Dihedral::r2);
      need_id(Dihedral::v);
      need_id(Dihedral::h);
      break;
    case FamilyId::rev_r:
      need_cond(Cond::hzpm);
      need_cond(Cond::r);
      need_cond(Cond::rinv);
      need_id(Dihedral::r);
      break;
    case FamilyId::rev_rv:
      need_cond(Cond::hzpm);
      need_cond(Cond::r);
      need_cond(Cond::rinv);
      need_id(Dihedral::rv);
      break;
    case FamilyId::rev_d4:
    case FamilyId::bin_d4:
      need_cond(Cond::hzpm);
      need_cond(Cond::r);
      need_cond(Cond::rinv);
      need_id(Dihedral::r);
      need_id(Dihedral::v);
      break;
  }
}

}  // namespace

std::string family_name(FamilyId id) {
  return kFamilyNames[static_cast<std::size_t>(id)];
}

std::optional<FamilyId> family_parse(std::string_view name) {
  for (std::size_t k = 0; k < 15; ++k) {
    if (name == kFamilyNames[k]) return static_cast<FamilyId>(k);
  }
  return std::nullopt;
}

TransitionKernel sigma_transport(const TransitionKernel& t,
                                 const ProbVector& p, Dihedral g) {
  require_same_n(t, p);
  require_positive_p(p, "sigma_transport");
  std::size_t n = t.n();
  std::vector<Rat> out(n * n * n * n, Rat(0));
  Tuple x;
  for (x[0] = 0; x[0] < n; ++x[0])
    for (x[1] = 0; x[1] < n; ++x[1])
      for (x[2] = 0; x[2] < n; ++x[2])
        for (x[3] = 0; x[3] < n; ++x[3]) {
          std::array<Symbol, 4> y = dihedral_apply(g, x);
          out[flat(n, {y[0], y[1], y[2], y[3]})] =
              p[y[3]] / p[x[3]] * t(x[0], x[1], x[2], x[3]);
        }
  return TransitionKernel(n, std::move(out));
}

TransitionKernel reverse_kernel(const TransitionKernel& t,
                                const ProbVector& p, Dihedral g) {
  require_same_n(t, p);
  require_positive_p(p, "reverse_kernel");
  // Each symmetry needs exactly the condition that makes the transported
  // rows stochastic; requiring more would reject the inverse transports
  // (the r-reverse of a quarter-turn member has no invariant product
  // measure, yet its r3-reverse restores the original kernel).
  if (g == Dihedral::h || g == Dihedral::r2) {
    if (!check_condition(t, p, Cond::hzpm).holds) {
      fail(Errc::not_triangular,
           "NotInTriang: p is not an invariant product measure (Cond.1)");
    }
  }
  if (g == Dihedral::r || g == Dihedral::r3v) {
    if (!check_condition(t, p, Cond::r).holds) {
      fail(Errc::precondition_failed, "PreconditionFailed(" +
                                          dihedral_name(g) +
                                          ", R): Cond.2 does not hold");
    }
  }
  if (g == Dihedral::r3 || g == Dihedral::rv) {
    if (!check_condition(t, p, Cond::rinv).holds) {
      fail(Errc::precondition_failed, "PreconditionFailed(" +
                                          dihedral_name(g) +
                                          ", RINV): Cond.3 does not hold");
    }
  }
  return sigma_transport(t, p, g);
}

bool reversal_identity_holds(const TransitionKernel& t, const ProbVector& p,
                             Dihedral g) {
  require_same_n(t, p);
  std::size_t n = t.n();
  Tuple x;
  for (x[0] = 0; x[0] < n; ++x[0])
    for (x[1] = 0; x[1] < n; ++x[1])
      for (x[2] = 0; x[2] < n; ++x[2])
        for (x[3] = 0; x[3] < n; ++x[3]) {
          std::array<Symbol, 4> y = dihedral_apply(g, x);
          if (p[x[3]] * t(y[0], y[1], y[2], y[3]) !=
              p[y[3]] * t(x[0], x[1], x[2], x[3])) {
            return false;
          }
        }
  return true;
}

bool QuasiRevReport::contains(Dihedral g) const {
  return kernel_for(g) != nullptr;
}

const TransitionKernel* QuasiRevReport::kernel_for(Dihedral g) const {
  for (const auto& [member, kernel] : members) {
    if (member == g) return &kernel;
  }
  return nullptr;
}

QuasiRevReport quasi_reversibility_report(const TransitionKernel& t,
                                          const ProbVector& p) {
  require_same_n(t, p);
  require_positive_p(p, "quasi_reversibility_report");
  if (!check_condition(t, p, Cond::hzpm).holds) {
    fail(Errc::not_triangular,
         "NotInTriang: p is not an invariant product measure (Cond.1)");
  }
  bool has_r = check_condition(t, p, Cond::r).holds;
  bool has_rinv = check_condition(t, p, Cond::rinv).holds;
  QuasiRevReport report;
  for (Dihedral g : kDihedralAll) {
    bool include = false;
    switch (g) {
      case Dihedral::id:
      case Dihedral::v:
      case Dihedral::h:
      case Dihedral::r2:
        include = true;
        break;
      case Dihedral::r:
      case Dihedral::r3v:
        include = has_r;
        break;
      case Dihedral::r3:
      case Dihedral::rv:
        include = has_rinv;
        break;
    }
    if (include) report.members.emplace_back(g, sigma_transport(t, p, g));
  }
  return report;
}

std::vector<Dihedral> reversibility_report(const TransitionKernel& t,
                                           const ProbVector& p) {
  require_same_n(t, p);
  if (!check_condition(t, p, Cond::hzpm).holds) {
    fail(Errc::not_triangular,
         "NotInTriang: p is not an invariant product measure (Cond.1)");
  }
  std::vector<Dihedral> out;
  for (Dihedral g : kDihedralAll) {
    if (reversal_identity_holds(t, p, g)) out.push_back(g);
  }
  return out;
}

long long family_dimension(FamilyId id, std::size_t n_in) {
  long long n = static_cast<long long>(n_in);
  if (n < 2) fail(Errc::invalid_argument, "alphabet needs at least 2 symbols");
  long long m = n - 1;
  switch (id) {
    case FamilyId::triang:
      return n * n * m * m;
    case FamilyId::qr_r:
    case FamilyId::qr_rinv:
      return n * m * m * m;
    case FamilyId::qr_d4:
      return m * m * m * m;
    case FamilyId::rev_v:
    case FamilyId::rev_r2:
      return poly_div(m * m * n * (n + 1), 2);
    case FamilyId::rev_h:
      return poly_div(n * n * n * m, 2);
    case FamilyId::rev_r2v:
      return poly_div(m * n * n * (n + 1), 4);
    case FamilyId::rev_r:
      return poly_div(n * m * (n * n - 3 * n + 4), 4);
    case FamilyId::rev_rv:
      return poly_div(m * m * (n * n - 2 * n + 2), 2);
    case FamilyId::rev_d4:
      return poly_div(n * m * (n * n - n + 2), 8);
    case FamilyId::bin_hzpm:
    case FamilyId::bin_r:
    case FamilyId::bin_rinv:
    case FamilyId::bin_d4: {
      if (n != 2) {
        fail(Errc::invalid_argument,
             "binary families are defined for n = 2 only");
      }
      switch (id) {
        case FamilyId::bin_hzpm:
          return 4;
        case FamilyId::bin_r:
        case FamilyId::bin_rinv:
          return 2;
        default:
          return 1;
      }
    }
  }
  fail(Errc::invalid_argument, "unknown family");
}

unsigned long long family_orbit_count(FamilyId id, std::size_t n) {
  if (n < 2) fail(Errc::invalid_argument, "alphabet needs at least 2 symbols");
  const auto& group = orbit_group(id);
  std::size_t m = n - 1;
  std::set<Tuple> seen;
  unsigned long long orbits = 0;
  Tuple x;
  for (x[0] = 0; x[0] < m; ++x[0])
    for (x[1] = 0; x[1] < m; ++x[1])
      for (x[2] = 0; x[2] < m; ++x[2])
        for (x[3] = 0; x[3] < m; ++x[3]) {
          if (seen.count(x)) continue;
          ++orbits;
          for (const auto& perm : group) seen.insert(apply_perm(perm, x));
        }
  return orbits;
}

TransitionKernel gen_member(FamilyId id, const ProbVector& p,
                            const std::vector<Rat>& params, const Rat& eps) {
  std::size_t n = p.n();
  require_positive_p(p, "gen_member");
  long long expect = family_dimension(id, n);
  if (params.size() != static_cast<std::size_t>(expect)) {
    fail(Errc::dimension_mismatch,
         "DimensionMismatch: " + family_name(id) + " over n=" +
             std::to_string(n) + " needs " + std::to_string(expect) +
             " parameters, got " + std::to_string(params.size()));
  }
  std::size_t s = n - 1;
  std::size_t cursor = 0;
  auto next_param = [&]() -> Rat { return eps * params[cursor++]; };

  std::vector<Rat> entries;

  switch (id) {
    case FamilyId::triang: {
      // Free block: a,c in S; b,d in S*; lex order of (a,b,c,d).
      std::map<Tuple, Rat> vals;
      Tuple x;
      for (x[0] = 0; x[0] < n; ++x[0])
        for (x[1] = 0; x[1] < s; ++x[1])
          for (x[2] = 0; x[2] < n; ++x[2])
            for (x[3] = 0; x[3] < s; ++x[3]) {
              vals[x] = p[x[3]] + next_param();
            }
      entries = complete_kernel(n, p, {1}, vals);
      break;
    }
    case FamilyId::qr_r: {
      // Free block: a in S; b,c,d in S*; fills c (Cond.2) then b (Cond.1).
      std::map<Tuple, Rat> vals;
      Tuple x;
      for (x[0] = 0; x[0] < n; ++x[0])
        for (x[1] = 0; x[1] < s; ++x[1])
          for (x[2] = 0; x[2] < s; ++x[2])
            for (x[3] = 0; x[3] < s; ++x[3]) {
              vals[x] = p[x[3]] + next_param();
            }
      entries = complete_kernel(n, p, {2, 1}, vals);
      break;
    }
    case FamilyId::qr_rinv: {
      // Free block: c in S; a,b,d in S*; fills a (Cond.3) then b (Cond.1).
      std::map<Tuple, Rat> vals;
      Tuple x;
      for (x[0] = 0; x[0] < s; ++x[0])
        for (x[1] = 0; x[1] < s; ++x[1])
          for (x[2] = 0; x[2] < n; ++x[2])
            for (x[3] = 0; x[3] < s; ++x[3]) {
              vals[x] = p[x[3]] + next_param();
            }
      entries = complete_kernel(n, p, {0, 1}, vals);
      break;
    }
    case FamilyId::qr_d4: {
      // Free block: (S*)^4; fills c, b, a.
      std::map<Tuple, Rat> vals;
      Tuple x;
      for (x[0] = 0; x[0] < s; ++x[0])
        for (x[1] = 0; x[1] < s; ++x[1])
          for (x[2] = 0; x[2] < s; ++x[2])
            for (x[3] = 0; x[3] < s; ++x[3]) {
              vals[x] = p[x[3]] + next_param();
            }
      entries = complete_kernel(n, p, {2, 1, 0}, vals);
      break;
    }
    case FamilyId::rev_v: {
      // One parameter per a <= c (b,d in S*), mirrored onto (c,b,a,d).
      std::map<Tuple, Rat> vals;
      Tuple x;
      for (x[0] = 0; x[0] < n; ++x[0])
        for (x[1] = 0; x[1] < s; ++x[1])
          for (x[2] = 0; x[2] < n; ++x[2])
            for (x[3] = 0; x[3] < s; ++x[3]) {
              if (x[0] <= x[2]) {
                Rat value = p[x[3]] + next_param();
                vals[x] = value;
                vals[{x[2], x[1], x[0], x[3]}] = value;
              }
            }
      entries = complete_kernel(n, p, {1}, vals);
      break;
    }
    case FamilyId::rev_r: case FamilyId::rev_rv: case FamilyId::rev_d4: {
      // Orbit parametrization on (S*)^4: the lex-smallest representative x
      // of each orbit carries T(x) = p(x3) + eps*param, transported along
      // the orbit through the conserved quantity
      //   rev_r, rev_d4: p(x0) p(x1) p(x2) T(x)
      //   rev_rv:        p(x0) T(x).
      const auto& group = orbit_group(id);
      std::map<Tuple, Rat> vals;
      Tuple x;
      for (x[0] = 0; x[0] < s; ++x[0])
        for (x[1] = 0; x[1] < s; ++x[1])
          for (x[2] = 0; x[2] < s; ++x[2])
            for (x[3] = 0; x[3] < s; ++x[3]) {
              if (vals.count(x)) continue;
              Rat rep_value = p[x[3]] + next_param();
              for (const auto& perm : group) {
                Tuple y = apply_perm(perm, x);
                if (vals.count(y)) continue;
                if (id == FamilyId::rev_rv) {
                  vals[y] = p[x[0]] * rep_value / p[y[0]];
                } else {
                  vals[y] = p[x[0]] * p[x[1]] * p[x[2]] * rep_value /
                            (p[y[0]] * p[y[1]] * p[y[2]]);
                }
              }
            }
      entries = complete_kernel(n, p, {2, 1, 0}, vals);
      break;
    }
    case FamilyId::rev_h: {
      // Independent p-symmetric block for every (a,c) in S^2.
      entries.assign(n * n * n * n, Rat(0));
      for (Symbol a = 0; a < n; ++a)
        for (Symbol c = 0; c < n; ++c) {
          std::vector<Rat> block(n * n, Rat(0));
          for (Symbol b = 0; b < n; ++b)
            for (Symbol d = b + 1; d < n; ++d) {
              block[b * n + d] = p[d] + next_param();
            }
          complete_block_msym(n, p, block);
          store_block(n, entries, a, c, block);
        }
      break;
    }
    case FamilyId::rev_r2v: {
      // p-symmetric block for every a <= c, copied onto (c,a).
      entries.assign(n * n * n * n, Rat(0));
      for (Symbol a = 0; a < n; ++a)
        for (Symbol c = a; c < n; ++c) {
          std::vector<Rat> block(n * n, Rat(0));
          for (Symbol b = 0; b < n; ++b)
            for (Symbol d = b + 1; d < n; ++d) {
              block[b * n + d] = p[d] + next_param();
            }
          complete_block_msym(n, p, block);
          store_block(n, entries, a, c, block);
          store_block(n, entries, c, a, block);
        }
      break;
    }
    case FamilyId::rev_r2: {
      // Blocks a < c: free M_S(p) block; blocks a > c follow from the
      // half-turn identity; diagonal blocks are p-symmetric.  For the
      // published parameter count the diagonal blocks still consume
      // (n-1)^2 slots: slot (b,d) with b < d drives m(b,d), slot (b,b)
      // drives m(b,s), and slots with b > d are inert (redundant
      // directions of the enclosing M_S(p) chart).
      entries.assign(n * n * n * n, Rat(0));
      for (Symbol a = 0; a < n; ++a)
        for (Symbol c = 0; c < n; ++c) {
          if (a < c) {
            std::vector<Rat> block(n * n, Rat(0));
            for (Symbol b = 0; b < s; ++b)
              for (Symbol d = 0; d < s; ++d) {
                block[b * n + d] = p[d] + next_param();
              }
            complete_block_msp(n, p, block);
            store_block(n, entries, a, c, block);
          } else if (a == c) {
            std::vector<Rat> block(n * n, Rat(0));
            for (Symbol b = 0; b < s; ++b)
              for (Symbol d = 0; d < s; ++d) {
                Rat offset = next_param();
                if (b < d) {
                  block[b * n + d] = p[d] + offset;
                } else if (b == d) {
                  block[b * n + s] = p[s] + offset;
                }  // b > d: inert slot
              }
            complete_block_msym(n, p, block);
            store_block(n, entries, a, c, block);
          } else {
            // m'(b,d) = p(d) m(d,b) / p(b) with m the (c,a) block.
            for (Symbol b = 0; b < n; ++b)
              for (Symbol d = 0; d < n; ++d) {
                entries[flat(n, {a, b, c, d})] =
                    p[d] * entries[flat(n, {c, d, a, b})] / p[b];
              }
          }
        }
      break;
    }
    case FamilyId::bin_hzpm:
    case FamilyId::bin_r:
    case FamilyId::bin_rinv:
    case FamilyId::bin_d4:
      fail(Errc::invalid_argument,
           "binary families are built with binary_family(kind, k, params)");
  }

  if (cursor != params.size()) {
    fail(Errc::internal_disagreement,
         "InternalDisagreement: parameter cursor mismatch");
  }

  // Strict admissibility of every completed entry.
  {
    Tuple x;
    for (x[0] = 0; x[0] < n; ++x[0])
      for (x[1] = 0; x[1] < n; ++x[1])
        for (x[2] = 0; x[2] < n; ++x[2])
          for (x[3] = 0; x[3] < n; ++x[3]) {
            const Rat& value = entries[flat(n, x)];
            if (!is_inner_probability(value)) {
              fail(Errc::epsilon_too_large,
                   "EpsilonTooLarge: entry at " + tuple_str(x) + " is " +
                       rat_str(value));
            }
          }
  }

  TransitionKernel kernel(n, std::move(entries));
  verify_member(id, kernel, p);
  return kernel;
}

std::pair<TransitionKernel, ProbVector> binary_family(
    FamilyId id, const Rat& k, const std::vector<Rat>& params) {
  if (k <= 0) {
    fail(Errc::param_out_of_range, "ParamOutOfRange: k must be positive");
  }
  std::size_t expect = 0;
  switch (id) {
    case FamilyId::bin_hzpm:
      expect = 4;
      break;
    case FamilyId::bin_r:
    case FamilyId::bin_rinv:
      expect = 2;
      break;
    case FamilyId::bin_d4:
      expect = 1;
      break;
    default:
      fail(Errc::invalid_argument,
           "binary_family handles BIN_HZPM/BIN_R/BIN_RINV/BIN_D4");
  }
  if (params.size() != expect) {
    fail(Errc::dimension_mismatch,
         "DimensionMismatch: " + family_name(id) + " needs " +
             std::to_string(expect) + " parameters, got " +
             std::to_string(params.size()));
  }
  for (const Rat& q : params) {
    if (!is_inner_probability(q)) {
      fail(Errc::param_out_of_range,
           "ParamOutOfRange: parameters must lie in (0,1), got " + rat_str(q));
    }
  }

  Rat kappa = Rat(1) / k;
  ProbVector p({Rat(1) / (1 + k), k / (1 + k)});

  // T(.;0) per context; the d=1 column is the complement.
  std::array<Rat, 8> t0;  // index (a*2+b)*2+c
  auto lvl = [&](const Rat& q, int depth) {
    Rat value = q;
    for (int i = 0; i < depth; ++i) value = kappa * (1 - value);
    return value;
  };
  switch (id) {
    case FamilyId::bin_hzpm:
      // params = (q00, q01, q10, q11) indexed by (a,c)
      for (Symbol a = 0; a < 2; ++a)
        for (Symbol c = 0; c < 2; ++c) {
          const Rat& q = params[a * 2 + c];
          t0[(a * 2 + 0) * 2 + c] = q;
          t0[(a * 2 + 1) * 2 + c] = kappa * (1 - q);
        }
      break;
    case FamilyId::bin_r:
      // params = (q0, q1) indexed by a; level = weight of (b,c)
      for (Symbol a = 0; a < 2; ++a)
        for (Symbol b = 0; b < 2; ++b)
          for (Symbol c = 0; c < 2; ++c) {
            t0[(a * 2 + b) * 2 + c] = lvl(params[a], static_cast<int>(b + c));
          }
      break;
    case FamilyId::bin_rinv:
      // params = (q0, q1) indexed by c; level = weight of (a,b)
      for (Symbol a = 0; a < 2; ++a)
        for (Symbol b = 0; b < 2; ++b)
          for (Symbol c = 0; c < 2; ++c) {
            t0[(a * 2 + b) * 2 + c] = lvl(params[c], static_cast<int>(a + b));
          }
      break;
    default:
      // bin_d4: single parameter; level = weight of (a,b,c)
      for (Symbol a = 0; a < 2; ++a)
        for (Symbol b = 0; b < 2; ++b)
          for (Symbol c = 0; c < 2; ++c) {
            t0[(a * 2 + b) * 2 + c] =
                lvl(params[0], static_cast<int>(a + b + c));
          }
      break;
  }

  std::vector<Rat> entries(16, Rat(0));
  for (std::size_t row = 0; row < 8; ++row) {
    if (!is_probability(t0[row])) {
      fail(Errc::param_out_of_range,
           "ParamOutOfRange: induced entry " + rat_str(t0[row]) +
               " escapes [0,1]; adjust k or the parameters");
    }
    entries[row * 2 + 0] = t0[row];
    entries[row * 2 + 1] = 1 - t0[row];
  }
  TransitionKernel kernel(2, std::move(entries));
  verify_member(id, kernel, p);
  return {std::move(kernel), std::move(p)};
}

}  // namespace pca
