#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dtop/analytic_vector.hpp"
#include "dtop/kernels.hpp"
#include "dtop/point.hpp"
#include "dtop/symbols.hpp"
#include "dtop/toeplitz.hpp"

namespace dtop {

namespace detail {

/// Gauss-Legendre nodes/weights on [0, 1], exact for polynomials of degree
/// 2n - 1. Newton iteration on the Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = 0.5 * (t + 1.0);
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

struct KahanComplexSum {
  KahanSum re, im;
  void add(Complex v) {
    re.add(v.real());
    im.add(v.imag());
  }
  Complex value() const { return {re.s, im.s}; }
};

}  // namespace detail

struct QuadratureNode {
  Complex z;
  double weight;
};

class QuadratureValidationError : public std::runtime_error {
 public:
  QuadratureValidationError(int a, int b, double err)
      : std::runtime_error("disk quadrature fails monomial identity at (a, b) = (" +
                           std::to_string(a) + ", " + std::to_string(b) +
                           "), error " + std::to_string(err)),
        a(a),
        b(b),
        error(err) {}
  int a, b;
  double error;
};

/// Nodes and weights for the normalized area measure dA = (1/pi) dx dy on the
/// unit disk. Product rule: Gauss-Legendre in r^2 on [0,1] times uniform
/// angles, so sum w z^a conj(z)^b = delta_ab / (a+1) for 0 <= a, b <= degree.
class DiskQuadrature {
 public:
  const std::vector<QuadratureNode>& nodes() const { return nodes_; }
  int degree() const { return degree_; }

  template <typename F>
  Complex integrate(F&& f) const {
    detail::KahanComplexSum acc;
    for (const auto& node : nodes_) acc.add(node.weight * f(node.z));
    return acc.value();
  }

  Complex monomial_moment(int a, int b) const {
    return integrate([a, b](Complex z) {
      return std::pow(z, a) * std::pow(std::conj(z), b);
    });
  }

  friend DiskQuadrature make_quadrature(int radial_points, int angular_points);

 private:
  std::vector<QuadratureNode> nodes_;
  int degree_ = 0;
};

inline DiskQuadrature make_quadrature(int radial_points, int angular_points) {
  if (radial_points < 1 || angular_points < 2) {
    throw std::invalid_argument("make_quadrature: need radial >= 1, angular >= 2");
  }
  DiskQuadrature q;
  auto [t, wt] = detail::gauss_legendre_01(radial_points);
  q.nodes_.reserve(static_cast<size_t>(radial_points) * angular_points);
  for (int i = 0; i < radial_points; ++i) {
    double r = std::sqrt(t[i]);
    double w = wt[i] / angular_points;
    for (int a = 0; a < angular_points; ++a) {
      double theta = 2.0 * std::numbers::pi * a / angular_points;
      q.nodes_.push_back({std::polar(r, theta), w});
    }
  }
  // Radial rule is exact for t^p up to p = 2R-1; the angular grid kills every
  // frequency a - b with 0 < |a - b| < angular_points.
  q.degree_ = std::min(2 * radial_points - 1, angular_points - 1);

  // Validate the monomial identity: full diagonal, off-diagonal up to a cap.
  const int cap = std::min(q.degree_, 12);
  const double tol = 1e-12;
  for (int a = 0; a <= q.degree_; ++a) {
    detail::KahanSum acc;
    for (const auto& node : q.nodes_) {
      acc.add(node.weight * std::pow(std::norm(node.z), a));
    }
    double err = std::abs(acc.s - 1.0 / (a + 1.0));
    if (err > tol) throw QuadratureValidationError(a, a, err);
  }
  for (int a = 0; a <= cap; ++a) {
    for (int b = 0; b <= cap; ++b) {
      if (a == b) continue;
      double err = std::abs(q.monomial_moment(a, b));
      if (err > tol) throw QuadratureValidationError(a, b, err);
    }
  }
  return q;
}

/// Smallest truncation order N such that the discarded tail of the normalized
/// vector E~_w has norm at most tail_norm_tol. The tail norm satisfies
/// ||tail||^2 = rho^N ((N+1) - N rho) with rho = |w|^2.
inline int berezin_truncation_order(const Point& w, double tail_norm_tol = 1e-10) {
  double rho = w.abs2();
  if (rho == 0.0) return 1;
  double target = tail_norm_tol * tail_norm_tol;
  double log_rho = std::log(rho);
  for (int n = 1;; ++n) {
    double tail = std::exp(n * log_rho) * ((n + 1.0) - n * rho);
    if (tail <= target) return n;
    if (n > 100000) throw std::runtime_error("berezin_truncation_order: no convergence");
  }
}

/// Quadratic form <T_phi E~_w, E~_w> by exact coefficient arithmetic on the
/// order-N truncation of E~_w = (1 - |w|^2) z / (1 - conj(w) z).
inline Complex berezin_form(const HarmonicSymbol& phi, const Point& w, int order) {
  double scale = 1.0 - w.abs2();
  AnalyticVector e = Complex(scale) * e_vector(w, order);
  return inner(apply(phi, e), e);
}

/// Closed form w (1 - |w|^2) phi_1'(w) + phi(w), where phi_1 is the
/// holomorphic part of phi.
inline Complex berezin_closed_form(const HarmonicSymbol& phi, const Point& w) {
  Complex wv = w.value();
  Complex dphi1(0.0);
  for (const auto& [k, c] : phi.coeffs()) {
    if (k >= 1) dphi1 += c * static_cast<double>(k) * std::pow(wv, k - 1);
  }
  return wv * (1.0 - w.abs2()) * dphi1 + phi.eval(w);
}

/// Normalized Bergman kernel k~_w(z) = (1 - |w|^2) / (1 - conj(w) z)^2,
/// which has unit L^2(dA) norm.
inline Complex normalized_bergman_kernel(const Point& w, Complex z) {
  Complex d = 1.0 - std::conj(w.value()) * z;
  return (1.0 - w.abs2()) / (d * d);
}

/// Bergman-space Berezin transform of the product psi * phi at w:
/// integral of psi(z) phi(z) |k~_w(z)|^2 dA(z) by quadrature.
inline Complex bergman_berezin(const HarmonicSymbol& psi, const HarmonicSymbol& phi,
                               const Point& w, const DiskQuadrature& q) {
  if (q.degree() < psi.degree() + phi.degree() + 6) {
    throw std::invalid_argument("bergman_berezin: quadrature degree insufficient");
  }
  return q.integrate([&](Complex z) {
    Point p(z);
    return psi.eval(p) * phi.eval(p) * std::norm(normalized_bergman_kernel(w, z));
  });
}

/// |B(psi phi)(r) - tau(r)| along the positive real radius; decay toward 0 is
/// the numerical signature of T_psi T_phi - T_tau being compact.
inline std::vector<double> compact_product_decay(const HarmonicSymbol& psi,
                                                 const HarmonicSymbol& phi,
                                                 const HarmonicSymbol& tau,
                                                 const std::vector<double>& radii,
                                                 const DiskQuadrature& q) {
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    Point w(r, 0.0);
    out.push_back(std::abs(bergman_berezin(psi, phi, w, q) - tau.eval(w)));
  }
  return out;
}

struct CarlesonEstimate {
  double lower_bound = 0.0;
  std::string family_description;
  std::vector<std::pair<std::string, double>> ratios;
};

/// Derivative of the holomorphic part, evaluated at z.
inline Complex analytic_derivative(const HarmonicSymbol& phi, Complex z) {
  Complex s(0.0);
  for (const auto& [k, c] : phi.coeffs()) {
    if (k >= 1) s += c * static_cast<double>(k) * std::pow(z, k - 1);
  }
  return s;
}

/// Lower bound for the optimal Carleson constant of |d phi / dz|^2 dA:
/// max over the family of integral(|f|^2 |phi_1'|^2 dA) / ||f||^2.
inline CarlesonEstimate carleson_lower_bound(const HarmonicSymbol& phi,
                                             const std::vector<AnalyticVector>& family,
                                             const DiskQuadrature& q,
                                             std::string family_description = "") {
  if (family.empty()) {
    throw std::invalid_argument("carleson_lower_bound: family must be nonempty");
  }
  CarlesonEstimate est;
  est.family_description = std::move(family_description);
  int id = 0;
  for (const auto& f : family) {
    ++id;
    double nsq = f.norm_sq();
    if (nsq == 0.0) {
      throw std::invalid_argument("carleson_lower_bound: zero-norm test function");
    }
    if (q.degree() < 2 * (f.degree() + phi.degree())) {
      throw std::invalid_argument("carleson_lower_bound: quadrature degree insufficient");
    }
    detail::KahanSum acc;
    for (const auto& node : q.nodes()) {
      Point p(node.z);
      acc.add(node.weight * std::norm(f.eval(p)) *
              std::norm(analytic_derivative(phi, node.z)));
    }
    double ratio = acc.s / nsq;
    est.ratios.emplace_back("f" + std::to_string(id), ratio);
    est.lower_bound = std::max(est.lower_bound, ratio);
  }
  return est;
}

/// (1 - r^2) |phi_1'(r)| along the real radius; tends to 0 for polynomial
/// phi_1 (little Bloch behaviour).
inline std::vector<double> bloch_decay(const HarmonicSymbol& phi1,
                                       const std::vector<double>& radii) {
  if (!is_holomorphic(phi1)) {
    throw std::invalid_argument("bloch_decay: symbol must be holomorphic");
  }
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    out.push_back((1.0 - r * r) * std::abs(analytic_derivative(phi1, Complex(r, 0.0))));
  }
  return out;
}

}  // namespace dtop
