#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "dtop/point.hpp"

namespace dtop {

/// Harmonic trigonometric polynomial
///   phi(z) = sum_{k>=0} c_k z^k + sum_{k>=1} c_{-k} conj(z)^k,
/// stored as a single finitely supported map k -> c_k over the integers.
/// Negative indices carry the antiholomorphic part.
class HarmonicSymbol {
 public:
  HarmonicSymbol() = default;

  explicit HarmonicSymbol(std::map<int, Complex> coeffs) {
    for (const auto& [k, c] : coeffs) {
      if (c != Complex(0.0)) coeffs_.emplace(k, c);
    }
  }

  /// z^k for k >= 0, conj(z)^{-k} for k < 0.
  static HarmonicSymbol monomial(int k, Complex c = Complex(1.0)) {
    return HarmonicSymbol({{k, c}});
  }

  static HarmonicSymbol constant(Complex c) { return monomial(0, c); }

  const std::map<int, Complex>& coeffs() const { return coeffs_; }

  Complex coefficient(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
  }

  void set(int k, Complex c) {
    if (c == Complex(0.0)) {
      coeffs_.erase(k);
    } else {
      coeffs_[k] = c;
    }
  }

  bool is_zero() const { return coeffs_.empty(); }

  /// Largest |k| in the support.
  int degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs_) d = std::max(d, std::abs(k));
    return d;
  }

  /// Largest k >= 0 in the support (0 if none).
  int analytic_degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs_) d = std::max(d, k);
    return d;
  }

  /// Largest j >= 1 with c_{-j} != 0 (0 if none).
  int antianalytic_degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs_) d = std::max(d, -k);
    return d;
  }

  Complex eval(const Point& z) const {
    Complex zv = z.value();
    Complex zb = std::conj(zv);
    Complex s(0.0);
    for (const auto& [k, c] : coeffs_) {
      s += c * (k >= 0 ? std::pow(zv, k) : std::pow(zb, -k));
    }
    return s;
  }

  /// Boundary value at e^{i theta}, identifying conj(z)^k with e^{-ik theta}.
  Complex eval_boundary(double theta) const {
    Complex s(0.0);
    for (const auto& [k, c] : coeffs_) {
      s += c * std::polar(1.0, k * theta);
    }
    return s;
  }

  HarmonicSymbol& operator+=(const HarmonicSymbol& g) {
    for (const auto& [k, c] : g.coeffs_) set(k, coefficient(k) + c);
    return *this;
  }

  friend HarmonicSymbol operator+(HarmonicSymbol f, const HarmonicSymbol& g) {
    f += g;
    return f;
  }

  friend HarmonicSymbol operator*(Complex a, const HarmonicSymbol& f) {
    HarmonicSymbol out;
    if (a == Complex(0.0)) return out;
    for (const auto& [k, c] : f.coeffs_) out.coeffs_.emplace(k, a * c);
    return out;
  }

  friend bool operator==(const HarmonicSymbol& f, const HarmonicSymbol& g) {
    return f.coeffs_ == g.coeffs_;
  }

 private:
  std::map<int, Complex> coeffs_;
};

/// Constants count as both holomorphic and antiholomorphic.
inline bool is_holomorphic(const HarmonicSymbol& phi) {
  return phi.antianalytic_degree() == 0;
}

inline bool is_antiholomorphic(const HarmonicSymbol& phi) {
  return phi.analytic_degree() == 0;
}

/// Split phi into its holomorphic part (constant included) and its
/// antiholomorphic part; the two add back to phi exactly.
inline std::pair<HarmonicSymbol, HarmonicSymbol> decompose(const HarmonicSymbol& phi) {
  HarmonicSymbol pos, neg;
  for (const auto& [k, c] : phi.coeffs()) {
    (k >= 0 ? pos : neg).set(k, c);
  }
  return {pos, neg};
}

/// Cesaro (Fejer) sum: coefficient c_k scaled by (1 - |k|/(N+1)), support
/// truncated to |k| <= N.
inline HarmonicSymbol cesaro(const HarmonicSymbol& phi, int order) {
  if (order < 0) throw std::invalid_argument("cesaro: order must be >= 0");
  HarmonicSymbol out;
  for (const auto& [k, c] : phi.coeffs()) {
    if (std::abs(k) > order) continue;
    double factor = 1.0 - static_cast<double>(std::abs(k)) / (order + 1);
    out.set(k, factor * c);
  }
  return out;
}

/// Plain truncation to |k| <= N (Cesaro sum with the factors removed).
inline HarmonicSymbol truncate(const HarmonicSymbol& phi, int order) {
  HarmonicSymbol out;
  for (const auto& [k, c] : phi.coeffs()) {
    if (std::abs(k) <= order) out.set(k, c);
  }
  return out;
}

/// Fourier-coefficient convolution of the boundary restrictions: the
/// symbol of (psi phi)|_T, i.e. the harmonic extension of the boundary product.
inline HarmonicSymbol boundary_product(const HarmonicSymbol& psi,
                                       const HarmonicSymbol& phi) {
  HarmonicSymbol out;
  for (const auto& [k1, c1] : psi.coeffs()) {
    for (const auto& [k2, c2] : phi.coeffs()) {
      int k = k1 + k2;
      out.set(k, out.coefficient(k) + c1 * c2);
    }
  }
  return out;
}

/// Max of |phi| over sample_count equispaced boundary points; a lower bound
/// of the sup norm for symbols continuous up to the boundary.
inline double sup_norm(const HarmonicSymbol& phi, int sample_count) {
  if (sample_count < 1) throw std::invalid_argument("sup_norm: sample count must be >= 1");
  double best = 0.0;
  for (int m = 0; m < sample_count; ++m) {
    double theta = 2.0 * std::numbers::pi * m / sample_count;
    best = std::max(best, std::abs(phi.eval_boundary(theta)));
  }
  return best;
}

}  // namespace dtop
