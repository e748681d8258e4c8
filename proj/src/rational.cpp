#include "rational.hpp"

#include <cctype>
#include <cstdlib>

#include "error.hpp"

namespace pca {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void parse_fail(std::string_view text) {
  fail(Errc::parse, "cannot parse rational from '" + std::string(text) + "'");
}

// Exact decimal -> rational: mantissa "i.f" with exponent e becomes
// (i*10^|f| + f) / 10^(|f|-e) up to sign.
Rat parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  size_t epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view exp_part = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      exp_neg = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) parse_fail(text);
    exponent = std::strtol(std::string(exp_part).c_str(), nullptr, 10);
    if (exp_neg) exponent = -exponent;
  }

  std::string_view int_part = s;
  std::string_view frac_part;
  size_t dot = s.find('.');
  if (dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) parse_fail(text);
  if (!int_part.empty() && !all_digits(int_part)) parse_fail(text);
  if (!frac_part.empty() && !all_digits(frac_part)) parse_fail(text);

  mpz_class mantissa(0);
  for (char c : int_part) mantissa = mantissa * 10 + (c - '0');
  for (char c : frac_part) mantissa = mantissa * 10 + (c - '0');

  long shift = static_cast<long>(frac_part.size()) - exponent;
  mpz_class num = mantissa;
  mpz_class den = 1;
  if (shift > 0) {
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(shift));
  } else if (shift < 0) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
    num *= scale;
  }
  if (negative) num = -num;

  Rat result(num, den);
  result.canonicalize();
  return result;
}

}  // namespace

Rat rat_parse(std::string_view text) {
  // Trim surrounding whitespace.
  size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) parse_fail(text);
  size_t end = text.find_last_not_of(" \t\r\n");
  std::string_view s = text.substr(begin, end - begin + 1);

  size_t slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits[0] == '+' || num_digits[0] == '-')) {
      num_digits.remove_prefix(1);
    }
    if (!all_digits(num_digits) || !all_digits(den)) parse_fail(text);
    Rat result;
    if (mpq_set_str(result.get_mpq_t(), std::string(s).c_str(), 10) != 0) {
      parse_fail(text);
    }
    if (mpz_sgn(mpq_denref(result.get_mpq_t())) == 0) parse_fail(text);
    result.canonicalize();
    return result;
  }
  if (s.find('.') != std::string_view::npos ||
      s.find('e') != std::string_view::npos ||
      s.find('E') != std::string_view::npos) {
    return parse_decimal(s);
  }
  std::string_view digits = s;
  if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) parse_fail(text);
  Rat result;
  if (mpq_set_str(result.get_mpq_t(), std::string(s).c_str(), 10) != 0) {
    parse_fail(text);
  }
  result.canonicalize();
  return result;
}

std::string rat_str(const Rat& x) { return x.get_str(); }

double rat_double(const Rat& x) { return x.get_d(); }

std::vector<Rat> rat_parse_csv(std::string_view text) {
  std::vector<Rat> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(rat_parse(text.substr(pos)));
      break;
    }
    out.push_back(rat_parse(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

}  // namespace pca
