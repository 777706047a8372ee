#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dtop/analytic_vector.hpp"
#include "dtop/symbols.hpp"
#include "dtop/toeplitz.hpp"

namespace dtop {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, const std::filesystem::path& path)
      : std::runtime_error(what + ": " + path.string()) {}
};

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline void check_finite(double v, const std::string& where) {
  if (!std::isfinite(v)) throw ParseError("non-finite number in " + where);
}

inline void read_triples(const nlohmann::json& arr, const std::string& field,
                         int min_index, bool negate,
                         HarmonicSymbol& phi) {
  if (!arr.is_array()) throw ParseError("field \"" + field + "\" must be an array");
  std::set<int> seen;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 3) {
      throw ParseError("entries of \"" + field + "\" must be [k, re, im] triples");
    }
    if (!item[0].is_number_integer()) {
      throw ParseError("index in \"" + field + "\" must be an integer");
    }
    int k = item[0].get<int>();
    if (k < min_index) {
      throw ParseError("index " + std::to_string(k) + " in \"" + field +
                       "\" must be >= " + std::to_string(min_index));
    }
    if (!seen.insert(k).second) {
      throw ParseError("duplicate index " + std::to_string(k) + " in \"" + field + "\"");
    }
    double re = item[1].get<double>();
    double im = item[2].get<double>();
    check_finite(re, field);
    check_finite(im, field);
    int key = negate ? -k : k;
    phi.set(key, phi.coefficient(key) + Complex(re, im));
  }
}

}  // namespace detail

/// Parse the JSON symbol document
///   {"pos": [[k, re, im], ...], "neg": [[k, re, im], ...]}
/// with k >= 0 in pos and k >= 1 in neg; duplicate indices rejected.
inline HarmonicSymbol parse_symbol(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("symbol document must be a JSON object");
  if (!doc.contains("pos") || !doc.contains("neg")) {
    throw ParseError("symbol document needs \"pos\" and \"neg\" fields");
  }
  HarmonicSymbol phi;
  detail::read_triples(doc["pos"], "pos", 0, false, phi);
  detail::read_triples(doc["neg"], "neg", 1, true, phi);
  return phi;
}

inline std::string serialize_symbol(const HarmonicSymbol& phi,
                                    const std::string& name = "") {
  nlohmann::json pos = nlohmann::json::array();
  nlohmann::json neg = nlohmann::json::array();
  for (const auto& [k, c] : phi.coeffs()) {
    nlohmann::json triple = {k >= 0 ? k : -k, c.real(), c.imag()};
    (k >= 0 ? pos : neg).push_back(triple);
  }
  nlohmann::json doc;
  if (!name.empty()) doc["name"] = name;
  doc["pos"] = pos;
  doc["neg"] = neg;
  return doc.dump();
}

/// {"coeffs": [[n, re, im], ...]} with n >= 1; duplicate indices rejected.
inline AnalyticVector parse_vector(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("coeffs")) {
    throw ParseError("vector document needs a \"coeffs\" field");
  }
  const auto& arr = doc["coeffs"];
  if (!arr.is_array()) throw ParseError("\"coeffs\" must be an array");
  AnalyticVector f;
  std::set<int> seen;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 3) {
      throw ParseError("entries of \"coeffs\" must be [n, re, im] triples");
    }
    int n = item[0].get<int>();
    if (n < 1) throw ParseError("vector index must be >= 1");
    if (!seen.insert(n).second) {
      throw ParseError("duplicate index " + std::to_string(n) + " in \"coeffs\"");
    }
    double re = item[1].get<double>();
    double im = item[2].get<double>();
    detail::check_finite(re, "coeffs");
    detail::check_finite(im, "coeffs");
    f.set(n, Complex(re, im));
  }
  return f;
}

inline std::string serialize_vector(const AnalyticVector& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [n, a] : f.coeffs()) arr.push_back({n, a.real(), a.imag()});
  nlohmann::json doc;
  doc["coeffs"] = arr;
  return doc.dump();
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing", path);
  out << content;
  if (!out) throw IoError("write failed", path);
}

inline HarmonicSymbol load_symbol(const std::filesystem::path& path) {
  return parse_symbol(read_file(path));
}

inline AnalyticVector load_vector(const std::filesystem::path& path) {
  return parse_vector(read_file(path));
}

/// Row-major CSV of re,im pairs with header "# re,im pairs, N=<n>".
/// Shortest round-trip decimal formatting, so re-reads are bit-exact.
inline void write_matrix_csv(const TruncatedOperator& a,
                             const std::filesystem::path& path) {
  const int n = a.dim();
  std::ostringstream out;
  out << "# re,im pairs, N=" << n << "\n";
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      Complex v = a.entry(i, j);
      if (j > 1) out << ",";
      out << detail::format_double(v.real()) << "," << detail::format_double(v.imag());
    }
    out << "\n";
  }
  write_file(path, out.str());
}

inline TruncatedOperator read_matrix_csv(const std::filesystem::path& path) {
  std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# re,im pairs, N=", 0) != 0) {
    throw ParseError("matrix CSV: missing header in " + path.string());
  }
  int n = 0;
  try {
    n = std::stoi(line.substr(std::string("# re,im pairs, N=").size()));
  } catch (const std::exception&) {
    throw ParseError("matrix CSV: bad dimension in header of " + path.string());
  }
  if (n < 1) throw ParseError("matrix CSV: dimension must be >= 1");
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ParseError("matrix CSV: missing row");
    std::vector<double> cells;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) throw ParseError("matrix CSV: bad number in row");
      cells.push_back(v);
      p = next;
      if (p < end) {
        if (*p != ',') throw ParseError("matrix CSV: expected comma");
        ++p;
      }
    }
    if (static_cast<int>(cells.size()) != 2 * n) {
      throw ParseError("matrix CSV: wrong cell count in row");
    }
    for (int j = 0; j < n; ++j) m(i, j) = Complex(cells[2 * j], cells[2 * j + 1]);
  }
  return TruncatedOperator(m);
}

/// Series CSV: header "x,value", then one "x,value" row per pair.
inline void write_series_csv(const std::vector<std::pair<double, double>>& pairs,
                             const std::filesystem::path& path) {
  std::ostringstream out;
  out << "x,value\n";
  for (const auto& [x, v] : pairs) {
    out << detail::format_double(x) << "," << detail::format_double(v) << "\n";
  }
  write_file(path, out.str());
}

/// Seeded, reproducible generator for test symbols and disk points.
/// Coefficients are dyadic (multiples of 1/16 in [-2, 2]) so downstream
/// coefficient arithmetic is exact in doubles.
class SymbolFixtures {
 public:
  explicit SymbolFixtures(std::uint64_t seed) : rng_(seed) {}

  /// Trig polynomial with support in [-max_degree, max_degree]; roughly half
  /// the slots populated, never identically zero.
  HarmonicSymbol random_symbol(int max_degree) {
    HarmonicSymbol phi;
    for (int k = -max_degree; k <= max_degree; ++k) {
      if (rng_() % 2 == 0) continue;
      phi.set(k, dyadic());
    }
    if (phi.is_zero()) phi.set(1, Complex(1.0));
    return phi;
  }

  /// Holomorphic variant (k >= 0 only).
  HarmonicSymbol random_holomorphic(int max_degree) {
    HarmonicSymbol phi;
    for (int k = 0; k <= max_degree; ++k) {
      if (rng_() % 2 == 0) continue;
      phi.set(k, dyadic());
    }
    if (phi.is_zero()) phi.set(1, Complex(1.0));
    return phi;
  }

  HarmonicSymbol random_antiholomorphic(int max_degree) {
    HarmonicSymbol phi;
    for (int k = 1; k <= max_degree; ++k) {
      if (rng_() % 2 == 0) continue;
      phi.set(-k, dyadic());
    }
    if (phi.is_zero()) phi.set(-1, Complex(1.0));
    return phi;
  }

  /// Point with min_radius <= |w| <= max_radius < 1.
  Point random_point(double max_radius, double min_radius = 0.0) {
    for (;;) {
      double re = uniform(-max_radius, max_radius);
      double im = uniform(-max_radius, max_radius);
      Complex w(re, im);
      double r = std::abs(w);
      if (r <= max_radius && r >= min_radius) return Point(w);
    }
  }

  double uniform(double lo, double hi) {
    double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

 private:
  /// Nonzero dyadic complex value, components m/16 with |m| in [1, 32].
  Complex dyadic() {
    auto part = [this]() {
      int m = static_cast<int>(rng_() % 32) + 1;
      double sign = (rng_() % 2 == 0) ? 1.0 : -1.0;
      return sign * m / 16.0;
    };
    return Complex(part(), part());
  }

  std::mt19937_64 rng_;
};

}  // namespace dtop
