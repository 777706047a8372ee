#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dtop/analytic_vector.hpp"
#include "dtop/point.hpp"

namespace dtop {

/// Dirichlet reproducing kernel R_w(z) = sum_{k>=1} z^k conj(w)^k / k
/// = log(1/(1 - z conj(w))), principal branch.
inline Complex eval_dirichlet_kernel(const Point& w, const Point& z) {
  return -std::log(1.0 - z.value() * std::conj(w.value()));
}

/// Bergman reproducing kernel K^B_w(z) = 1/(1 - conj(w) z)^2.
inline Complex eval_bergman_kernel(const Point& w, const Point& z) {
  Complex d = 1.0 - std::conj(w.value()) * z.value();
  return 1.0 / (d * d);
}

/// Central finite difference, in w with real step h, of
/// w |-> conj(d R_w / d z) = w/(1 - w conj(z)), compared against the
/// closed form 1/(1 - w conj(z))^2 = conj(K^B_w(z)). Residual is O(h^2).
inline double kernel_derivative_identity_residual(const Point& w, const Point& z,
                                                  double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step h must be positive");
  Complex zb = std::conj(z.value());
  auto g = [zb](Complex u) { return u / (1.0 - u * zb); };
  Complex wp = w.value() + h;
  Complex wm = w.value() - h;
  if (std::abs(wp) >= 1.0 || std::abs(wm) >= 1.0) {
    throw std::invalid_argument("w +/- h must stay inside the disk");
  }
  Complex fd = (g(wp) - g(wm)) / (2.0 * h);
  Complex d = 1.0 - w.value() * zb;
  Complex exact = 1.0 / (d * d);
  return std::abs(fd - exact);
}

/// Truncation of E_w(z) = z/(1 - conj(w) z) = sum_{j>=0} conj(w)^j z^{j+1}
/// to its first N terms. The full norm satisfies ||E_w||^2 = 1/(1-|w|^2)^2.
inline AnalyticVector e_vector(const Point& w, int order) {
  if (order < 1) throw std::invalid_argument("e_vector: order must be >= 1");
  AnalyticVector out;
  Complex wb = std::conj(w.value());
  Complex p(1.0);
  for (int j = 0; j < order; ++j) {
    out.set(j + 1, p);
    p *= wb;
  }
  return out;
}

/// Exact squared norm of the untruncated E_w.
inline double e_vector_norm_sq(const Point& w) {
  double d = 1.0 - w.abs2();
  return 1.0 / (d * d);
}

/// Orthogonal projection of z^a conj(z)^b onto D_0: z^{a-b} when a > b,
/// zero otherwise.
inline AnalyticVector project_monomial(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("project_monomial: a, b must be >= 0");
  if (a > b) return AnalyticVector::monomial(a - b);
  return AnalyticVector{};
}

}  // namespace dtop
