#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace pca {

// All algebraic computations run over exact rationals backed by GMP.
using Rat = mpq_class;

// Parses "num/den", plain integers, and terminating decimals ("0.25",
// "-1.5", "2.5e-3").  Decimals convert exactly: 0.1 becomes 1/10, never a
// binary float.  Throws Error{parse} on anything else.
Rat rat_parse(std::string_view text);

// Canonical form "num/den", or just "num" when the denominator is 1.
std::string rat_str(const Rat& x);

double rat_double(const Rat& x);

// Splits a comma-separated list and parses each component.
std::vector<Rat> rat_parse_csv(std::string_view text);

inline bool is_probability(const Rat& x) { return x >= 0 && x <= 1; }
inline bool is_inner_probability(const Rat& x) { return x > 0 && x < 1; }

}  // namespace pca
