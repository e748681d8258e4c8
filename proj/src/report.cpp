#include "report.hpp"

#include <iomanip>
#include <sstream>

#include "distribution.hpp"
#include "json_io.hpp"
#include "marginals.hpp"
#include "reversibility.hpp"

namespace pca {

namespace {

std::string float_str(double x) {
  std::ostringstream out;
  out << std::setprecision(12) << x;
  return out.str();
}

char symbol_char(std::uint8_t s) {
  if (s < 10) return char('0' + s);
  if (s < 36) return char('a' + (s - 10));
  return '?';
}

std::string tuple_str(const std::vector<std::uint8_t>& key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(unsigned(key[i]));
  }
  return out;
}

// Marginal of a FiniteDistribution on a subset of positions.
FiniteDistribution restrict_to(const FiniteDistribution& dist,
                               const std::vector<std::size_t>& positions) {
  FiniteDistribution out;
  out.n = dist.n;
  out.length = positions.size();
  for (const auto& [key, w] : dist.weights) {
    std::vector<std::uint8_t> sub(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
      sub[i] = key[positions[i]];
    out.add(sub, w);
  }
  return out;
}

}  // namespace

std::string provenance_header(const TransitionKernel* kernel,
                              const std::uint64_t* seed) {
  std::ostringstream out;
  out << "# version=" << kVersion << "\n";
  if (kernel) {
    out << "# kernel-hash=" << std::hex << std::setw(16)
        << std::setfill('0') << kernel_hash(*kernel) << std::dec << "\n";
  }
  if (seed) out << "# seed=" << *seed << "\n";
  return out.str();
}

std::string check_report_line(Cond cond, const CheckResult& result) {
  std::ostringstream out;
  out << "Cond." << int(cond) << ": ";
  if (result.holds) {
    out << "HOLDS";
  } else {
    out << "FAILS";
    if (result.witness) {
      out << " at (" << result.witness->tuple
          << ") lhs=" << rat_str(result.witness->lhs)
          << " rhs=" << rat_str(result.witness->rhs);
    }
  }
  return out.str();
}

std::string reversibility_report_text(const TransitionKernel& t,
                                      const ProbVector& p) {
  const QuasiRevReport quasi = quasi_reversibility_report(t, p);
  const std::vector<Dihedral> reversible = reversibility_report(t, p);
  auto is_reversible = [&](Dihedral g) {
    for (Dihedral x : reversible)
      if (x == g) return true;
    return false;
  };
  std::ostringstream out;
  out << "symmetry\tquasi-reversible\treversible\n";
  for (Dihedral g : kDihedralAll)
    out << dihedral_name(g) << "\t" << (quasi.contains(g) ? "yes" : "no")
        << "\t" << (is_reversible(g) ? "yes" : "no") << "\n";
  return out.str();
}

std::string marginals_report(const TransitionKernel& t, const ProbVector& p,
                             std::size_t m) {
  const FiniteDistribution joint = rotated_marginal(t, p, m);
  std::ostringstream out;
  out << "m\t" << m << "\n";
  out << "cells\tprobability\n";
  for (const auto& [key, w] : joint.weights)
    out << tuple_str(key) << "\t" << rat_str(w) << "\n";

  // Even positions walk the outer line, odd ones the inner line.
  std::vector<std::size_t> outer, inner;
  for (std::size_t i = 0; i < joint.length; ++i)
    (i % 2 ? inner : outer).push_back(i);
  const bool outer_product =
      restrict_to(joint, outer).weights ==
      product_distribution(p, outer.size()).weights;
  const bool inner_product =
      inner.empty() || restrict_to(joint, inner).weights ==
                           product_distribution(p, inner.size()).weights;
  out << "outer-line-marginal-is-product\t"
      << (outer_product ? "yes" : "no") << "\n";
  out << "inner-line-marginal-is-product\t"
      << (inner_product ? "yes" : "no") << "\n";

  // First pair of positions whose joint law is not the product of its
  // two marginals, if any.
  std::string dep_pair;
  for (std::size_t u = 0; u < joint.length && dep_pair.empty(); ++u)
    for (std::size_t w = u + 1; w < joint.length && dep_pair.empty(); ++w) {
      const FiniteDistribution pair = restrict_to(joint, {u, w});
      const FiniteDistribution mu = restrict_to(joint, {u});
      const FiniteDistribution mw = restrict_to(joint, {w});
      for (const auto& [key, weight] : pair.weights) {
        const Rat prod = mu.weights.at({key[0]}) * mw.weights.at({key[1]});
        if (weight != prod) {
          std::ostringstream line;
          line << "positions " << u << "," << w << " values "
               << unsigned(key[0]) << "," << unsigned(key[1])
               << " joint=" << rat_str(weight)
               << " product=" << rat_str(prod);
          dep_pair = line.str();
          break;
        }
      }
    }
  out << "dependent-pair\t" << (dep_pair.empty() ? "none" : dep_pair)
      << "\n";

  // Dependence can hide from the pair scan: a law may factorize over
  // every pair yet correlate a pair conditionally on the cell between
  // them.  Report the first consecutive triple that disagrees with the
  // Markov splice pair(u,u+1)*pair(u+1,u+2)/single(u+1).
  std::string dep_cond;
  for (std::size_t u = 0; u + 2 < joint.length && dep_cond.empty(); ++u) {
    const FiniteDistribution triple = restrict_to(joint, {u, u + 1, u + 2});
    const FiniteDistribution left = restrict_to(joint, {u, u + 1});
    const FiniteDistribution right = restrict_to(joint, {u + 1, u + 2});
    const FiniteDistribution mid = restrict_to(joint, {u + 1});
    for (const auto& [key, weight] : triple.weights) {
      const Rat lhs = weight * mid.weights.at({key[1]});
      const Rat rhs = left.weights.at({key[0], key[1]}) *
                      right.weights.at({key[1], key[2]});
      if (lhs != rhs) {
        std::ostringstream line;
        line << "positions " << u << "," << u + 2 << " given " << u + 1
             << " values " << unsigned(key[0]) << "," << unsigned(key[1])
             << "," << unsigned(key[2]) << " joint=" << rat_str(weight)
             << " markov-splice="
             << rat_str(rhs / mid.weights.at({key[1]}));
        dep_cond = line.str();
        break;
      }
    }
  }
  out << "conditional-dependent-pair\t"
      << (dep_cond.empty() ? "none" : dep_cond) << "\n";
  return out.str();
}

std::string hzmc_report(const HzmcExtraction& extraction) {
  const HzmcSpec& spec = extraction.spec;
  std::ostringstream out;
  auto matrix = [&](const char* label, const StochasticMatrix& m) {
    for (std::size_t i = 0; i < m.n(); ++i) {
      out << label << "[" << i << "]";
      for (std::size_t j = 0; j < m.n(); ++j)
        out << "\t" << rat_str(m(i, j));
      out << "\n";
    }
  };
  matrix("F", spec.f());
  matrix("B", spec.b());
  out << "rho\t" << spec.rho().str() << "\n";
  return out.str();
}

std::string ergodicity_report(const ErgodicityResult& result) {
  std::ostringstream out;
  out << "theta\t" << rat_str(result.theta) << "\t~"
      << float_str(rat_double(result.theta)) << "\n";
  out << "t\tdistance\t~distance\tbound\t~bound\n";
  for (std::size_t t = 0; t < result.distance.size(); ++t)
    out << t << "\t" << rat_str(result.distance[t]) << "\t"
        << float_str(rat_double(result.distance[t])) << "\t"
        << rat_str(result.bound[t]) << "\t"
        << float_str(rat_double(result.bound[t])) << "\n";
  return out.str();
}

std::string lines_report(const LineBatchResult& result) {
  std::ostringstream out;
  out << "alpha\t" << float_str(result.alpha) << "\n";
  out << "per-test-threshold\t" << float_str(result.bonferroni_alpha)
      << "\n";
  out << "line\tgof-stat\tgof-dof\tgof-p\tpair-stat\tpair-dof\tpair-p\t"
         "verdict\n";
  for (const LineTestOutcome& o : result.outcomes) {
    const bool pass = o.gof.p_value >= result.bonferroni_alpha &&
                      o.pairs.p_value >= result.bonferroni_alpha;
    out << o.label << "\t" << float_str(o.gof.statistic) << "\t"
        << o.gof.dof << "\t" << float_str(o.gof.p_value) << "\t"
        << float_str(o.pairs.statistic) << "\t" << o.pairs.dof << "\t"
        << float_str(o.pairs.p_value) << "\t" << (pass ? "pass" : "FAIL")
        << "\n";
  }
  out << "all-pass\t" << (result.all_pass ? "yes" : "no") << "\n";
  return out.str();
}

std::string gap_law_report(const TasepGapLaw& law) {
  std::ostringstream out;
  out << "k\tp(k)\t~p(k)\n";
  for (std::size_t k = 1; k <= law.p.size(); ++k)
    out << k << "\t" << rat_str(law.p[k - 1]) << "\t"
        << float_str(rat_double(law.p[k - 1])) << "\n";
  out << "Z\t" << rat_str(law.z) << "\t~" << float_str(rat_double(law.z))
      << "\n";
  out << "tail-mass\t" << rat_str(law.tail_mass) << "\t~"
      << float_str(rat_double(law.tail_mass)) << "\n";
  return out.str();
}

std::string tasep_sim_report(const TasepStats& stats,
                             const TasepGapLaw* reference) {
  std::ostringstream out;
  unsigned long long total = 0;
  for (unsigned long long c : stats.gap_counts) total += c;
  out << "k\tcount\tfrequency" << (reference ? "\tstationary" : "")
      << "\n";
  for (std::size_t k = 1; k <= stats.gap_counts.size(); ++k) {
    out << k << "\t" << stats.gap_counts[k - 1] << "\t"
        << float_str(total ? double(stats.gap_counts[k - 1]) / double(total)
                           : 0.0);
    if (reference)
      out << "\t"
          << (k <= reference->p.size()
                  ? float_str(rat_double(reference->p[k - 1]))
                  : std::string("~0"));
    out << "\n";
  }
  out << "gap-samples\t" << total << "\n";
  out << "speed-moves\t" << stats.speed_moves << "\t of \t"
      << stats.speed_total << "\n";
  out << "rear-displacement\t" << stats.displacement0 << "\t in \t"
      << stats.t_steps << "\tsteps\n";
  out << "clean-prefix\t" << stats.stat_particles << "\n";
  return out.str();
}

std::string density_report(const DensityEstimate& estimate) {
  std::ostringstream out;
  out << "density\t" << float_str(estimate.density) << "\n";
  out << "std-error\t" << float_str(estimate.std_error) << "\n";
  out << "samples\t" << estimate.samples << "\n";
  out << "blocks\t" << estimate.blocks << "\n";
  return out.str();
}

std::string orientation_report(const OrientationField& field) {
  std::ostringstream out;
  out << "type\tcount\n";
  for (int type = 1; type <= 8; ++type)
    out << type << "\t" << field.type_histogram[type - 1] << "\n";
  return out.str();
}

std::string window_text(const SpaceTimeWindow& window) {
  std::string out;
  out.reserve((window.width() + 1) * window.height());
  for (std::size_t t = 0; t < window.height(); ++t) {
    for (std::size_t i = 0; i < window.width(); ++i)
      out.push_back(SpaceTimeWindow::populated(i, t)
                        ? symbol_char(window.at(i, t))
                        : '.');
    out.push_back('\n');
  }
  return out;
}

}  // namespace pca
