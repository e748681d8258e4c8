#include "json_io.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"
#include "json.hpp"

namespace pca {

namespace {

using nlohmann::ordered_json;

std::string row_key(std::size_t a, std::size_t b, std::size_t c) {
  return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
}

Rat entry_from_json(const ordered_json& value, const std::string& where) {
  if (value.is_string()) {
    return rat_parse(value.get<std::string>());
  }
  if (value.is_number_integer()) {
    return rat_parse(std::to_string(value.get<long long>()));
  }
  fail(Errc::parse, "kernel entry at " + where +
                        " must be a rational string or integer");
}

}  // namespace

KernelFile kernel_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse, std::string("invalid kernel JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("T")) {
    fail(Errc::parse, "kernel JSON must be an object with 'n' and 'T'");
  }
  if (!doc["n"].is_number_integer()) {
    fail(Errc::parse, "'n' must be an integer");
  }
  long long n_signed = doc["n"].get<long long>();
  if (n_signed < 2 || n_signed > 64) {
    fail(Errc::invalid_argument, "alphabet size out of range: " +
                                     std::to_string(n_signed));
  }
  std::size_t n = static_cast<std::size_t>(n_signed);

  const ordered_json& t = doc["T"];
  if (!t.is_object()) fail(Errc::parse, "'T' must be an object");

  std::vector<Rat> entries(n * n * n * n, Rat(0));
  std::size_t rows_seen = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        std::string key = row_key(a, b, c);
        if (!t.contains(key)) {
          fail(Errc::parse, "kernel JSON misses row '" + key + "'");
        }
        const ordered_json& row = t[key];
        if (!row.is_array() || row.size() != n) {
          fail(Errc::parse, "row '" + key + "' must be an array of " +
                                std::to_string(n) + " entries");
        }
        for (std::size_t d = 0; d < n; ++d) {
          entries[((a * n + b) * n + c) * n + d] =
              entry_from_json(row[d], "(" + key + ";" + std::to_string(d) + ")");
        }
        ++rows_seen;
      }
    }
  }
  if (t.size() != rows_seen) {
    fail(Errc::parse, "kernel JSON has unexpected extra rows in 'T'");
  }

  std::optional<ProbVector> p;
  if (doc.contains("p")) {
    const ordered_json& pj = doc["p"];
    if (!pj.is_array() || pj.size() != n) {
      fail(Errc::parse, "'p' must be an array of " + std::to_string(n) +
                            " entries");
    }
    std::vector<Rat> pe;
    pe.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      pe.push_back(entry_from_json(pj[i], "p[" + std::to_string(i) + "]"));
    }
    p = ProbVector(std::move(pe));
  }

  return KernelFile{TransitionKernel(n, std::move(entries)), std::move(p)};
}

KernelFile kernel_load(const std::string& path) {
  return kernel_from_json(read_text_file(path));
}

std::string kernel_to_json(const TransitionKernel& kernel,
                           const std::optional<ProbVector>& p) {
  ordered_json doc;
  std::size_t n = kernel.n();
  doc["n"] = n;
  if (p) {
    if (p->n() != n) {
      fail(Errc::alphabet_mismatch, "AlphabetMismatch between kernel and p");
    }
    ordered_json pj = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) pj.push_back(rat_str((*p)[i]));
    doc["p"] = pj;
  }
  ordered_json t = ordered_json::object();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        ordered_json row = ordered_json::array();
        for (std::size_t d = 0; d < n; ++d) {
          row.push_back(rat_str(kernel(a, b, c, d)));
        }
        t[row_key(a, b, c)] = row;
      }
    }
  }
  doc["T"] = t;
  return doc.dump(2) + "\n";
}

void kernel_save(const std::string& path, const TransitionKernel& kernel,
                 const std::optional<ProbVector>& p) {
  write_text_file(path, kernel_to_json(kernel, p));
}

std::uint64_t kernel_hash(const TransitionKernel& kernel) {
  std::string canon = "n=" + std::to_string(kernel.n()) + ";";
  for (const Rat& x : kernel.entries()) {
    canon += rat_str(x);
    canon += ';';
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io, "IoError: cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(Errc::io, "IoError: failed reading '" + path + "'");
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io, "IoError: cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(Errc::io, "IoError: failed writing '" + path + "'");
}

}  // namespace pca
