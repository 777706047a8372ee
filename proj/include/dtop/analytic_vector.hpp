#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "dtop/point.hpp"

namespace dtop {

/// Finitely supported coefficient sequence (a_n)_{n>=1} representing
/// f = sum a_n z^n with the weighted norm ||f||^2 = sum n |a_n|^2.
class AnalyticVector {
 public:
  AnalyticVector() = default;

  explicit AnalyticVector(std::map<int, Complex> coeffs) {
    for (const auto& [n, a] : coeffs) {
      if (n < 1) throw std::invalid_argument("AnalyticVector: indices must be >= 1");
      if (a != Complex(0.0)) coeffs_.emplace(n, a);
    }
  }

  static AnalyticVector monomial(int n, Complex a = Complex(1.0)) {
    return AnalyticVector({{n, a}});
  }

  const std::map<int, Complex>& coeffs() const { return coeffs_; }

  Complex coefficient(int n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
  }

  void set(int n, Complex a) {
    if (n < 1) throw std::invalid_argument("AnalyticVector: indices must be >= 1");
    if (a == Complex(0.0)) {
      coeffs_.erase(n);
    } else {
      coeffs_[n] = a;
    }
  }

  bool is_zero() const { return coeffs_.empty(); }

  int degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& [n, a] : coeffs_) s += n * std::norm(a);
    return s;
  }

  double norm() const { return std::sqrt(norm_sq()); }

  Complex eval(const Point& z) const {
    Complex s(0.0);
    Complex zv = z.value();
    for (const auto& [n, a] : coeffs_) s += a * std::pow(zv, n);
    return s;
  }

  AnalyticVector& operator+=(const AnalyticVector& g) {
    for (const auto& [n, a] : g.coeffs_) set(n, coefficient(n) + a);
    return *this;
  }

  friend AnalyticVector operator+(AnalyticVector f, const AnalyticVector& g) {
    f += g;
    return f;
  }

  friend AnalyticVector operator*(Complex c, const AnalyticVector& f) {
    AnalyticVector out;
    if (c == Complex(0.0)) return out;
    for (const auto& [n, a] : f.coeffs_) out.coeffs_.emplace(n, c * a);
    return out;
  }

  friend bool operator==(const AnalyticVector& f, const AnalyticVector& g) {
    return f.coeffs_ == g.coeffs_;
  }

 private:
  std::map<int, Complex> coeffs_;
};

/// Weighted inner product <f, g> = sum n a_n conj(b_n), so <z^n, z^m> = n delta_nm.
inline Complex inner(const AnalyticVector& f, const AnalyticVector& g) {
  Complex s(0.0);
  for (const auto& [n, a] : f.coeffs()) {
    s += static_cast<double>(n) * a * std::conj(g.coefficient(n));
  }
  return s;
}

}  // namespace dtop
