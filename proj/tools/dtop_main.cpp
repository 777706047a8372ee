// Command-line front end for the Dirichlet-space Toeplitz calculus:
// build truncated matrices, verify the Brown-Halmos identity, recover
// symbols, and run Berezin / Carleson / decay sweeps emitting CSV.

#include <CLI11.hpp>

#include <complex>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dtop/dtop.hpp"

namespace {

double comparison_tolerance() {
  if (const char* env = std::getenv("DTOP_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw dtop::ParseError("DTOP_TOL is not a number");
    }
  }
  return 1e-12;
}

struct WGrid {
  std::vector<dtop::Point> points;
};

// Grid SPEC: "r0:r1:steps@angles" -> steps radii equispaced in [r0, r1],
// each crossed with `angles` equispaced arguments.
WGrid parse_grid(const std::string& spec) {
  auto at = spec.find('@');
  if (at == std::string::npos) {
    throw dtop::ParseError("grid spec must be r0:r1:steps@angles");
  }
  std::string radial = spec.substr(0, at);
  int angles = 0;
  double r0 = 0.0, r1 = 0.0;
  int steps = 0;
  char colon1 = 0, colon2 = 0;
  std::istringstream rin(radial);
  if (!(rin >> r0 >> colon1 >> r1 >> colon2 >> steps) || colon1 != ':' ||
      colon2 != ':') {
    throw dtop::ParseError("bad radial part in grid spec: " + radial);
  }
  try {
    angles = std::stoi(spec.substr(at + 1));
  } catch (const std::exception&) {
    throw dtop::ParseError("bad angle count in grid spec");
  }
  if (steps < 1 || angles < 1 || r0 < 0.0 || r1 >= 1.0 || r1 < r0) {
    throw dtop::ParseError("grid spec out of range (need 0 <= r0 <= r1 < 1)");
  }
  WGrid grid;
  for (int i = 0; i < steps; ++i) {
    double r = (steps == 1) ? r0 : r0 + (r1 - r0) * i / (steps - 1);
    for (int a = 0; a < angles; ++a) {
      double theta = 2.0 * std::numbers::pi * a / angles;
      grid.points.emplace_back(std::polar(r, theta));
    }
  }
  return grid;
}

std::vector<double> parse_radii(const std::string& spec) {
  std::vector<double> out;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    double r = std::stod(tok);
    if (r < 0.0 || r >= 1.0) throw dtop::ParseError("radius out of [0, 1): " + tok);
    out.push_back(r);
  }
  if (out.empty()) throw dtop::ParseError("empty radii spec");
  return out;
}

// Family SPEC: "monomials:K" -> {z, ..., z^K};
// "evectors:r0:r1:steps" -> truncated normalized E_w on a real radius grid.
std::vector<dtop::AnalyticVector> parse_family(const std::string& spec) {
  std::vector<dtop::AnalyticVector> family;
  if (spec.rfind("monomials:", 0) == 0) {
    int k = std::stoi(spec.substr(10));
    if (k < 1) throw dtop::ParseError("monomials family needs K >= 1");
    for (int n = 1; n <= k; ++n) family.push_back(dtop::AnalyticVector::monomial(n));
    return family;
  }
  if (spec.rfind("evectors:", 0) == 0) {
    double r0 = 0.0, r1 = 0.0;
    int steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec.substr(9));
    if (!(in >> r0 >> c1 >> r1 >> c2 >> steps) || c1 != ':' || c2 != ':' ||
        steps < 1 || r0 < 0.0 || r1 >= 1.0) {
      throw dtop::ParseError("evectors family needs r0:r1:steps with 0 <= r < 1");
    }
    for (int i = 0; i < steps; ++i) {
      double r = (steps == 1) ? r0 : r0 + (r1 - r0) * i / (steps - 1);
      dtop::Point w(r, 0.0);
      family.push_back(dtop::e_vector(w, 40));
    }
    return family;
  }
  throw dtop::ParseError("family spec must be monomials:K or evectors:r0:r1:steps");
}

int run(int argc, char** argv) {
  CLI::App app{
      "dtop - Toeplitz operators on the Dirichlet space D0.\n"
      "Truncated matrices use the orthogonal basis {z^1..z^N}; entry (i,j) is\n"
      "the coefficient of z^i in T z^j, so T_phi has entries phi_hat(i-j)."};
  app.require_subcommand(1);
  const double tol = comparison_tolerance();

  std::string symbol_path, symbol_a, symbol_b, symbol_tau, vector_path;
  std::string matrix_path, out_path, grid_spec, family_spec, radii_spec, mode;
  int n = 16, k = 8, m_max = 16;
  double norm_bound = 0.0;

  auto* matrix = app.add_subcommand(
      "matrix", "Write the N x N matrix of T_phi (Toeplitz by construction) as CSV");
  matrix->add_option("--symbol", symbol_path, "symbol JSON file")->required();
  matrix->add_option("--n", n, "truncation dimension")->required();
  matrix->add_option("--out", out_path, "output CSV path")->required();

  auto* applyc = app.add_subcommand(
      "apply", "Apply T_phi exactly to a finitely supported vector");
  applyc->add_option("--symbol", symbol_path)->required();
  applyc->add_option("--vector", vector_path, "vector JSON file")->required();
  applyc->add_option("--out", out_path, "output vector JSON path")->required();

  auto* checkbh = app.add_subcommand(
      "check-bh",
      "Brown-Halmos check: residual of the constant-diagonal identity "
      "T_zbar A T_z = A, i.e. max |A(i,j) - A(i+1,j+1)|");
  checkbh->add_option("--matrix", matrix_path, "matrix CSV");
  checkbh->add_option("--symbol", symbol_path, "symbol JSON (with --n)");
  checkbh->add_option("--n", n, "truncation dimension for --symbol");

  auto* recover = app.add_subcommand(
      "recover",
      "Recover the harmonic symbol from a Toeplitz-form matrix: c_k from the "
      "first column, c_{-k} from the first row, with Cauchy-Schwarz coefficient "
      "bound checks");
  recover->add_option("--matrix", matrix_path)->required();
  recover->add_option("--k", k, "max recovered degree")->required();
  recover->add_option("--norm-bound", norm_bound, "operator norm bound")->required();
  recover->add_option("--out", out_path, "output symbol JSON")->required();

  auto* berezin = app.add_subcommand(
      "berezin",
      "Residual of the Berezin quadratic form <T_phi E~_w, E~_w> against the "
      "closed form w(1-|w|^2) phi_1'(w) + phi(w) over a w-grid");
  berezin->add_option("--symbol", symbol_path)->required();
  berezin->add_option("--grid", grid_spec, "w-grid spec r0:r1:steps@angles")->required();
  berezin->add_option("--out", out_path, "output CSV (index, residual)")->required();

  auto* commute = app.add_subcommand(
      "commute",
      "Commutation test: T_psi T_phi = T_phi T_psi iff "
      "psi_hat(m) phi_hat(-n) = phi_hat(m) psi_hat(-n) for all m, n >= 1");
  commute->add_option("--symbol-a", symbol_a)->required();
  commute->add_option("--symbol-b", symbol_b)->required();

  auto* product = app.add_subcommand(
      "product",
      "Product test: T_psi T_phi is Toeplitz iff psi is antiholomorphic or phi "
      "is holomorphic; the product symbol is the boundary Fourier convolution");
  product->add_option("--symbol-a", symbol_a)->required();
  product->add_option("--symbol-b", symbol_b)->required();
  product->add_option("--out", out_path, "output tau JSON (written when Toeplitz)");

  auto* witness = app.add_subcommand(
      "compact-witness",
      "Non-compactness witnesses ||T_phi^* (z^m/||z^m||)|| for m = 1..m-max; "
      "bounded away from 0 for phi != 0");
  witness->add_option("--symbol", symbol_path)->required();
  witness->add_option("--m-max", m_max)->required();
  witness->add_option("--out", out_path, "optional CSV (m, value)");

  auto* carleson = app.add_subcommand(
      "carleson",
      "Lower bound for the Carleson constant of |d phi/dz|^2 dA from a family "
      "of test functions");
  carleson->add_option("--symbol", symbol_path)->required();
  carleson->add_option("--family", family_spec,
                       "monomials:K or evectors:r0:r1:steps")->required();
  carleson->add_option("--out", out_path, "output CSV (index, ratio)")->required();

  auto* decay = app.add_subcommand(
      "decay",
      "Radial decay series: bloch emits (1-r^2)|phi_1'(r)|; compact-product "
      "emits |B(psi phi)(r) - tau(r)| (Berezin criterion for compactness of "
      "T_psi T_phi - T_tau)");
  decay->add_option("--mode", mode, "bloch or compact-product")->required();
  decay->add_option("--radii", radii_spec, "comma list, e.g. 0.5,0.9,0.99")->required();
  decay->add_option("--symbol", symbol_path, "symbol for bloch mode");
  decay->add_option("--symbol-a", symbol_a, "psi for compact-product");
  decay->add_option("--symbol-b", symbol_b, "phi for compact-product");
  decay->add_option("--symbol-tau", symbol_tau, "tau for compact-product");
  decay->add_option("--out", out_path, "output CSV (r, value)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (matrix->parsed()) {
    auto phi = dtop::load_symbol(symbol_path);
    dtop::write_matrix_csv(dtop::toeplitz_matrix(phi, n), out_path);
    std::cout << "wrote " << n << "x" << n << " matrix to " << out_path << "\n";
  } else if (applyc->parsed()) {
    auto phi = dtop::load_symbol(symbol_path);
    auto f = dtop::load_vector(vector_path);
    dtop::write_file(out_path, dtop::serialize_vector(dtop::apply(phi, f)) + "\n");
    std::cout << "wrote result vector to " << out_path << "\n";
  } else if (checkbh->parsed()) {
    std::optional<dtop::TruncatedOperator> a;
    if (!matrix_path.empty()) {
      a = dtop::read_matrix_csv(matrix_path);
    } else if (!symbol_path.empty()) {
      a = dtop::toeplitz_matrix(dtop::load_symbol(symbol_path), n);
    } else {
      std::cerr << "check-bh: need --matrix or --symbol\n";
      return 2;
    }
    auto rep = dtop::brown_halmos_report(*a);
    std::cout << "residual = " << rep.residual << " (tol = " << tol << ")\n";
    if (rep.residual > tol) {
      std::cout << "worst pair: (" << rep.worst_i << ", " << rep.worst_j << ")\n";
    }
  } else if (recover->parsed()) {
    auto a = dtop::read_matrix_csv(matrix_path);
    auto oracle = dtop::make_oracle(a, norm_bound);
    auto phi = dtop::recover_symbol(oracle, k, tol);
    dtop::write_file(out_path, dtop::serialize_symbol(phi) + "\n");
    std::cout << "recovered symbol (degree <= " << k << ", tol = " << tol
              << ") to " << out_path << "\n";
  } else if (berezin->parsed()) {
    auto phi = dtop::load_symbol(symbol_path);
    auto grid = parse_grid(grid_spec);
    std::vector<std::pair<double, double>> series;
    double worst = 0.0;
    for (size_t i = 0; i < grid.points.size(); ++i) {
      const auto& w = grid.points[i];
      int order = std::max(dtop::berezin_truncation_order(w), phi.degree() + 1);
      double res =
          std::abs(dtop::berezin_form(phi, w, order) - dtop::berezin_closed_form(phi, w));
      worst = std::max(worst, res);
      series.emplace_back(static_cast<double>(i), res);
    }
    dtop::write_series_csv(series, out_path);
    std::cout << "max residual = " << worst << " over " << grid.points.size()
              << " grid points (tol = " << tol << ")\n";
  } else if (commute->parsed()) {
    auto psi = dtop::load_symbol(symbol_a);
    auto phi = dtop::load_symbol(symbol_b);
    auto w = dtop::commute_witness(psi, phi, tol);
    if (!w) {
      std::cout << "verdict: commute (tol = " << tol << ")\n";
    } else {
      std::cout << "verdict: do not commute (tol = " << tol << "), witness m="
                << w->first << ", n=" << w->second << "\n";
    }
  } else if (product->parsed()) {
    auto psi = dtop::load_symbol(symbol_a);
    auto phi = dtop::load_symbol(symbol_b);
    auto res = dtop::product_is_toeplitz(psi, phi);
    if (res.is_toeplitz) {
      std::cout << "verdict: T_psi T_phi is Toeplitz\n";
      if (!out_path.empty()) {
        dtop::write_file(out_path, dtop::serialize_symbol(*res.tau) + "\n");
        std::cout << "wrote tau to " << out_path << "\n";
      }
    } else {
      std::cout << "verdict: T_psi T_phi is not Toeplitz (psi not "
                   "antiholomorphic and phi not holomorphic)\n";
    }
  } else if (witness->parsed()) {
    auto phi = dtop::load_symbol(symbol_path);
    auto values = dtop::compactness_witness(phi, m_max);
    std::vector<std::pair<double, double>> series;
    for (int m = 1; m <= m_max; ++m) {
      std::cout << "m=" << m << " value=" << values[m - 1] << "\n";
      series.emplace_back(static_cast<double>(m), values[m - 1]);
    }
    if (!out_path.empty()) dtop::write_series_csv(series, out_path);
  } else if (carleson->parsed()) {
    auto phi = dtop::load_symbol(symbol_path);
    auto family = parse_family(family_spec);
    int degree_needed = 0;
    for (const auto& f : family) {
      degree_needed = std::max(degree_needed, 2 * (f.degree() + phi.degree()));
    }
    auto q = dtop::make_quadrature(degree_needed / 2 + 4, 2 * degree_needed + 8);
    auto est = dtop::carleson_lower_bound(phi, family, q, family_spec);
    std::vector<std::pair<double, double>> series;
    for (size_t i = 0; i < est.ratios.size(); ++i) {
      series.emplace_back(static_cast<double>(i + 1), est.ratios[i].second);
    }
    dtop::write_series_csv(series, out_path);
    std::cout << "carleson lower bound = " << est.lower_bound << " over "
              << family.size() << " test functions (tol = " << tol << ")\n";
  } else if (decay->parsed()) {
    auto radii = parse_radii(radii_spec);
    std::vector<std::pair<double, double>> series;
    if (mode == "bloch") {
      if (symbol_path.empty()) {
        std::cerr << "decay --mode bloch needs --symbol\n";
        return 2;
      }
      auto phi = dtop::load_symbol(symbol_path);
      auto [phi1, phi2] = dtop::decompose(phi);
      auto values = dtop::bloch_decay(phi1, radii);
      for (size_t i = 0; i < radii.size(); ++i) series.emplace_back(radii[i], values[i]);
    } else if (mode == "compact-product") {
      if (symbol_a.empty() || symbol_b.empty() || symbol_tau.empty()) {
        std::cerr << "decay --mode compact-product needs --symbol-a/-b/-tau\n";
        return 2;
      }
      auto psi = dtop::load_symbol(symbol_a);
      auto phi = dtop::load_symbol(symbol_b);
      auto tau = dtop::load_symbol(symbol_tau);
      auto q = dtop::make_quadrature(128, 1024);
      auto values = dtop::compact_product_decay(psi, phi, tau, radii, q);
      for (size_t i = 0; i < radii.size(); ++i) series.emplace_back(radii[i], values[i]);
    } else {
      std::cerr << "decay: unknown mode " << mode << "\n";
      return 2;
    }
    dtop::write_series_csv(series, out_path);
    std::cout << "wrote " << series.size() << " rows to " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dtop::NotToeplitzError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const dtop::BoundViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const dtop::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dtop::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
