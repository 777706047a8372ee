#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dtop/analytic_vector.hpp"
#include "dtop/symbols.hpp"

namespace dtop {

enum class Basis { orthogonal, orthonormal };

/// Truncation of an operator on D_0 to span{z^1, ..., z^N}.
/// In the orthogonal basis, entry (i, j) is the coefficient of z^i in T z^j.
/// In the orthonormal basis {z^n / sqrt(n)} the same operator has entries
/// scaled by sqrt(i/j), and the adjoint is the conjugate transpose.
class TruncatedOperator {
 public:
  TruncatedOperator(Eigen::MatrixXcd entries, Basis basis = Basis::orthogonal)
      : m_(std::move(entries)), basis_(basis) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw std::invalid_argument("TruncatedOperator: matrix must be square, N >= 1");
    }
  }

  static TruncatedOperator zero(int n, Basis basis = Basis::orthogonal) {
    return TruncatedOperator(Eigen::MatrixXcd::Zero(n, n), basis);
  }

  static TruncatedOperator identity(int n, Basis basis = Basis::orthogonal) {
    return TruncatedOperator(Eigen::MatrixXcd::Identity(n, n), basis);
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  Basis basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  /// 1-based entry access.
  Complex entry(int i, int j) const { return m_(i - 1, j - 1); }

  TruncatedOperator in_basis(Basis target) const {
    if (target == basis_) return *this;
    Eigen::MatrixXcd out = m_;
    const int n = dim();
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        double s = std::sqrt(static_cast<double>(i) / j);
        out(i - 1, j - 1) *= (target == Basis::orthonormal) ? s : 1.0 / s;
      }
    }
    return TruncatedOperator(out, target);
  }

  friend TruncatedOperator operator*(const TruncatedOperator& a,
                                     const TruncatedOperator& b) {
    require_compatible(a, b);
    return TruncatedOperator(a.m_ * b.m_, a.basis_);
  }

  friend TruncatedOperator operator+(const TruncatedOperator& a,
                                     const TruncatedOperator& b) {
    require_compatible(a, b);
    return TruncatedOperator(a.m_ + b.m_, a.basis_);
  }

  friend TruncatedOperator operator-(const TruncatedOperator& a,
                                     const TruncatedOperator& b) {
    require_compatible(a, b);
    return TruncatedOperator(a.m_ - b.m_, a.basis_);
  }

 private:
  static void require_compatible(const TruncatedOperator& a,
                                 const TruncatedOperator& b) {
    if (a.dim() != b.dim() || a.basis_ != b.basis_) {
      throw std::invalid_argument("TruncatedOperator: dimension/basis mismatch");
    }
  }

  Eigen::MatrixXcd m_;
  Basis basis_;
};

inline double max_abs_diff(const TruncatedOperator& a, const TruncatedOperator& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

/// Max entry difference restricted to rows/cols 1..last.
inline double window_max_abs_diff(const TruncatedOperator& a,
                                  const TruncatedOperator& b, int last) {
  if (last < 1) throw std::invalid_argument("window_max_abs_diff: empty window");
  return (a.matrix().topLeftCorner(last, last) - b.matrix().topLeftCorner(last, last))
      .cwiseAbs()
      .maxCoeff();
}

/// N x N matrix of T_phi in the orthogonal basis: entry (i, j) = phi_hat(i - j).
inline TruncatedOperator toeplitz_matrix(const HarmonicSymbol& phi, int n) {
  if (n < 1) throw std::invalid_argument("toeplitz_matrix: N must be >= 1");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      m(i - 1, j - 1) = phi.coefficient(i - j);
    }
  }
  return TruncatedOperator(m);
}

/// Exact action of T_phi on a finitely supported vector:
/// output coefficient at i is sum_j phi_hat(i - j) a_j.
inline AnalyticVector apply(const HarmonicSymbol& phi, const AnalyticVector& f) {
  AnalyticVector out;
  for (const auto& [j, a] : f.coeffs()) {
    for (const auto& [k, c] : phi.coeffs()) {
      int i = j + k;
      if (i >= 1) out.set(i, out.coefficient(i) + c * a);
    }
  }
  return out;
}

/// Exact action of the adjoint T_phi^* in the weighted inner product:
/// output coefficient at i is sum_j conj(phi_hat(j - i)) (j / i) a_j.
inline AnalyticVector adjoint_apply(const HarmonicSymbol& phi, const AnalyticVector& f) {
  AnalyticVector out;
  for (const auto& [j, a] : f.coeffs()) {
    for (const auto& [k, c] : phi.coeffs()) {
      int i = j - k;
      if (i >= 1) {
        out.set(i, out.coefficient(i) +
                       std::conj(c) * a * (static_cast<double>(j) / i));
      }
    }
  }
  return out;
}

/// Weighted-inner-product adjoint: [A*]_{i,j} = (j/i) conj([A]_{j,i}) in the
/// orthogonal basis; conjugate transpose in the orthonormal basis.
inline TruncatedOperator adjoint(const TruncatedOperator& a) {
  if (a.basis() == Basis::orthonormal) {
    return TruncatedOperator(a.matrix().adjoint(), Basis::orthonormal);
  }
  const int n = a.dim();
  Eigen::MatrixXcd out(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      out(i - 1, j - 1) =
          (static_cast<double>(j) / i) * std::conj(a.entry(j, i));
    }
  }
  return TruncatedOperator(out);
}

struct BrownHalmosReport {
  double residual = 0.0;
  int worst_i = 1;
  int worst_j = 1;
};

/// Max over i, j < N of |[A]_{i,j} - [A]_{i+1,j+1}|, with the worst pair.
inline BrownHalmosReport brown_halmos_report(const TruncatedOperator& a) {
  if (a.basis() != Basis::orthogonal) {
    throw std::invalid_argument("brown_halmos: orthogonal basis required");
  }
  BrownHalmosReport rep;
  const int n = a.dim();
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) {
      double d = std::abs(a.entry(i, j) - a.entry(i + 1, j + 1));
      if (d > rep.residual) rep = {d, i, j};
    }
  }
  return rep;
}

inline double brown_halmos_residual(const TruncatedOperator& a) {
  return brown_halmos_report(a).residual;
}

/// Entry function abstracting a bounded operator:
/// entry(i, j) = <T z^j, z^i> / ||z^i||^2, together with a norm bound.
struct ToeplitzOracle {
  std::function<Complex(int, int)> entry;
  double norm_bound = 0.0;
};

/// Oracle backed by a truncated matrix; entries outside the truncation are 0.
inline ToeplitzOracle make_oracle(TruncatedOperator a, double norm_bound) {
  auto m = a.in_basis(Basis::orthogonal);
  return ToeplitzOracle{
      [m](int i, int j) -> Complex {
        if (i < 1 || j < 1 || i > m.dim() || j > m.dim()) return Complex(0.0);
        return m.entry(i, j);
      },
      norm_bound};
}

class NotToeplitzError : public std::runtime_error {
 public:
  NotToeplitzError(double residual, int i, int j)
      : std::runtime_error("operator is not Toeplitz: residual " +
                           std::to_string(residual) + " at (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")"),
        residual(residual),
        worst_i(i),
        worst_j(j) {}
  double residual;
  int worst_i;
  int worst_j;
};

class BoundViolationError : public std::runtime_error {
 public:
  BoundViolationError(int k, double value, double bound)
      : std::runtime_error("recovered coefficient c_" + std::to_string(k) +
                           " = " + std::to_string(value) +
                           " violates norm bound " + std::to_string(bound)),
        index(k) {}
  int index;
};

/// Read the symbol back off the first column and row of the oracle:
/// c_k = entry(k+1, 1), c_{-k} = entry(1, k+1), 0 <= k <= K.
/// Checks the Brown-Halmos residual of the (K+1)-truncation first, then the
/// Cauchy-Schwarz coefficient bounds |c_k| <= B/sqrt(k+1) and
/// |c_{-k}| <= sqrt(k+1) B.
inline HarmonicSymbol recover_symbol(const ToeplitzOracle& oracle, int max_degree,
                                     double tol = 1e-12) {
  if (max_degree < 0) throw std::invalid_argument("recover_symbol: K must be >= 0");
  const int n = max_degree + 1;
  Eigen::MatrixXcd m(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      m(i - 1, j - 1) = oracle.entry(i, j);
    }
  }
  auto rep = brown_halmos_report(TruncatedOperator(m));
  if (rep.residual > tol) {
    throw NotToeplitzError(rep.residual, rep.worst_i, rep.worst_j);
  }
  HarmonicSymbol phi;
  for (int k = 0; k <= max_degree; ++k) {
    Complex ck = m(k, 0);
    double bound = oracle.norm_bound / std::sqrt(k + 1.0);
    if (std::abs(ck) > bound + tol) throw BoundViolationError(k, std::abs(ck), bound);
    phi.set(k, ck);
    if (k >= 1) {
      Complex cmk = m(0, k);
      double nbound = std::sqrt(k + 1.0) * oracle.norm_bound;
      if (std::abs(cmk) > nbound + tol) {
        throw BoundViolationError(-k, std::abs(cmk), nbound);
      }
      phi.set(-k, cmk);
    }
  }
  return phi;
}

/// Rotation average (1/M) sum_m e^{-ik 2pi m/M} R_{-m} A R_m over M-th roots of
/// unity, where R_m scales z^n by e^{-in 2pi m/M}. Equals extraction of the
/// k-th diagonal once M > 2N.
inline TruncatedOperator homogeneous_part(const TruncatedOperator& a, int k,
                                          int root_count) {
  if (a.basis() != Basis::orthogonal) {
    throw std::invalid_argument("homogeneous_part: orthogonal basis required");
  }
  const int n = a.dim();
  if (root_count <= 2 * n) {
    throw std::invalid_argument("homogeneous_part: need M > 2N");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int m = 0; m < root_count; ++m) {
    double theta = 2.0 * std::numbers::pi * m / root_count;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        // (R_{-m} A R_m)_{i,j} = A_{i,j} e^{i (i-j) theta}
        out(i - 1, j - 1) += a.entry(i, j) * std::polar(1.0, (i - j - k) * theta);
      }
    }
  }
  return TruncatedOperator(out / static_cast<double>(root_count));
}

/// Matrix of the rank-one operator (u (x) v) f = <f, v> u in the orthogonal
/// basis: entry (i, j) = u_i conj(v_j) j.
inline TruncatedOperator outer_product(const AnalyticVector& u,
                                       const AnalyticVector& v, int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [i, ui] : u.coeffs()) {
    if (i > n) continue;
    for (const auto& [j, vj] : v.coeffs()) {
      if (j > n) continue;
      m(i - 1, j - 1) = ui * std::conj(vj) * static_cast<double>(j);
    }
  }
  return TruncatedOperator(m);
}

struct RankOneDefect {
  TruncatedOperator lhs;  // T_zbar T_psi T_phi T_z - T_psi T_phi
  TruncatedOperator rhs;  // (T_zbar T_psi z) (x) (T_z^* T_phi^* z)
  double residual;        // max entry difference on the interior window
  int window;             // rows/cols 1..window were compared
};

/// Both sides of the defect identity
///   T_zbar T_psi T_phi T_z = T_psi T_phi + (T_zbar T_psi z) (x) (T_z^* T_phi^* z)
/// on the N-truncation. Truncation corrupts the trailing band, so the residual
/// is taken over rows/cols 1..N - (deg psi + deg phi + 2).
inline RankOneDefect rank_one_defect(const HarmonicSymbol& psi,
                                     const HarmonicSymbol& phi, int n) {
  const int d = psi.degree() + phi.degree();
  const int window = n - d - 2;
  if (window < 1) {
    throw std::invalid_argument("rank_one_defect: N too small, window empty");
  }
  const HarmonicSymbol z = HarmonicSymbol::monomial(1);
  const HarmonicSymbol zbar = HarmonicSymbol::monomial(-1);
  auto t_z = toeplitz_matrix(z, n);
  auto t_zbar = toeplitz_matrix(zbar, n);
  auto t_psi = toeplitz_matrix(psi, n);
  auto t_phi = toeplitz_matrix(phi, n);
  auto product = t_psi * t_phi;
  auto lhs = t_zbar * product * t_z - product;

  const AnalyticVector zvec = AnalyticVector::monomial(1);
  AnalyticVector u = apply(zbar, apply(psi, zvec));
  AnalyticVector v = adjoint_apply(z, adjoint_apply(phi, zvec));
  auto rhs = outer_product(u, v, n);

  double residual = window_max_abs_diff(lhs, rhs, window);
  return RankOneDefect{lhs, rhs, residual, window};
}

struct ProductToeplitzResult {
  bool is_toeplitz = false;
  std::optional<HarmonicSymbol> tau;
};

/// T_psi T_phi is a Toeplitz operator iff psi is antiholomorphic or phi is
/// holomorphic; in that case the symbol is the boundary product.
inline ProductToeplitzResult product_is_toeplitz(const HarmonicSymbol& psi,
                                                 const HarmonicSymbol& phi) {
  if (is_antiholomorphic(psi) || is_holomorphic(phi)) {
    return {true, boundary_product(psi, phi)};
  }
  return {false, std::nullopt};
}

/// First (m, n) with psi_hat(m) phi_hat(-n) != phi_hat(m) psi_hat(-n), if any.
/// Vanishing of these 2x2 determinants for all m, n >= 1 is equivalent to:
/// both symbols holomorphic, both antiholomorphic, or some nontrivial linear
/// combination of them constant.
inline std::optional<std::pair<int, int>> commute_witness(const HarmonicSymbol& psi,
                                                          const HarmonicSymbol& phi,
                                                          double tol = 0.0) {
  int mmax = std::max(psi.analytic_degree(), phi.analytic_degree());
  int nmax = std::max(psi.antianalytic_degree(), phi.antianalytic_degree());
  for (int m = 1; m <= mmax; ++m) {
    for (int n = 1; n <= nmax; ++n) {
      Complex lhs = psi.coefficient(m) * phi.coefficient(-n);
      Complex rhs = phi.coefficient(m) * psi.coefficient(-n);
      if (std::abs(lhs - rhs) > tol) return std::make_pair(m, n);
    }
  }
  return std::nullopt;
}

/// T_psi and T_phi commute iff psi_hat(m) phi_hat(-n) = phi_hat(m) psi_hat(-n)
/// for all m, n >= 1.
inline bool commute_check(const HarmonicSymbol& psi, const HarmonicSymbol& phi,
                          double tol = 0.0) {
  return !commute_witness(psi, phi, tol).has_value();
}

/// Exact values ||T_phi^* e_m|| for m = 1..m_max, with e_m = z^m / sqrt(m).
/// ||T_phi^* e_m||^2 = m sum_{i>=1} |phi_hat(m - i)|^2 / i.
inline std::vector<double> compactness_witness(const HarmonicSymbol& phi, int m_max) {
  if (m_max < 1) throw std::invalid_argument("compactness_witness: m_max must be >= 1");
  std::vector<double> out;
  out.reserve(m_max);
  for (int m = 1; m <= m_max; ++m) {
    double s = 0.0;
    for (const auto& [k, c] : phi.coeffs()) {
      int i = m - k;
      if (i >= 1) s += std::norm(c) / i;
    }
    out.push_back(std::sqrt(m * s));
  }
  return out;
}

struct PowerIterationResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Largest singular value by power iteration on A^H A in the orthonormal basis.
inline PowerIterationResult operator_norm_report(const TruncatedOperator& a,
                                                 int iters = 10000,
                                                 double tol = 1e-9) {
  const Eigen::MatrixXcd m = a.in_basis(Basis::orthonormal).matrix();
  const Eigen::MatrixXcd b = m.adjoint() * m;
  const int n = a.dim();
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n);
  // Deterministic perturbation so v is not orthogonal to the top eigenspace.
  for (int i = 0; i < n; ++i) v(i) += Complex(0.0, 1.0 / (i + 2.0));
  v.normalize();
  PowerIterationResult res;
  double prev = -1.0;
  for (int it = 1; it <= iters; ++it) {
    Eigen::VectorXcd w = b * v;
    double lambda = w.norm();
    res.iterations = it;
    if (lambda == 0.0) {
      res.value = 0.0;
      res.converged = true;
      return res;
    }
    v = w / lambda;
    res.value = std::sqrt(lambda);
    if (prev >= 0.0 && std::abs(res.value - prev) <= tol * std::max(1.0, res.value)) {
      res.converged = true;
      return res;
    }
    prev = res.value;
  }
  return res;
}

inline double operator_norm(const TruncatedOperator& a, int iters = 10000,
                            double tol = 1e-9) {
  return operator_norm_report(a, iters, tol).value;
}

}  // namespace dtop
