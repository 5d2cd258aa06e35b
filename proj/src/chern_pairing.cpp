#include "levlab/chern_pairing.hpp"

#include <array>
#include <cmath>

#include "levlab/aharonov_bohm.hpp"
#include "levlab/error.hpp"

namespace levlab::chern {

using boundary::QuadrantBoundary;

SphereManifold make_sphere(Complex lambda1, Complex lambda2) {
  if (std::abs(std::abs(lambda1) - 1.0) > 1e-12 || std::abs(std::abs(lambda2) - 1.0) > 1e-12) {
    throw InvalidInput("sphere manifold: eigenvalues must be unimodular");
  }
  if (!(lambda1.imag() < 0.0 && lambda2.imag() > 0.0)) {
    throw InvalidInput("sphere manifold: requires Im lambda1 < 0 < Im lambda2");
  }
  return {lambda1, lambda2};
}

CMatrix u_of(double rho, double phi, const SphereManifold& X) {
  const double r2 = rho * rho;
  const double off = rho * std::sqrt(std::max(0.0, 1.0 - r2));
  const Complex d = X.lambda1 - X.lambda2;
  CMatrix u(2, 2);
  u(0, 0) = r2 * X.lambda1 + (1.0 - r2) * X.lambda2;
  u(0, 1) = off * std::exp(kI * phi) * d;
  u(1, 0) = off * std::exp(-kI * phi) * d;
  u(1, 1) = (1.0 - r2) * X.lambda1 + r2 * X.lambda2;
  return u;
}

QuadrantBoundary gamma_of(double rho, double phi, double alpha, const SphereManifold& X) {
  const Mat2 u = u_of(rho, phi, X);
  return aharonov_bohm::gamma_boundary(aharonov_bohm::from_unitary(u), alpha);
}

namespace {

CMatrix eval_traversal(const QuadrantBoundary& qb, double xi) {
  if (!(xi >= 0.0 && xi <= 4.0)) throw DomainError("gmap: xi must lie in [0, 4]");
  const int k = std::min(3, static_cast<int>(std::floor(xi)));
  const boundary::Segment* seg = qb.traversal()[k];
  return seg->eval_chart(seg->chart_of_traversal(xi - k));
}

// Contribution of one (rho, phi) cell summed over every xi midpoint.
Complex cell_kernel(const Family& family, const GridSpec3D& grid, int ir, int ip,
                    bool swap_chart) {
  const double d_rho = 1.0 / grid.n_rho;
  const double d_phi = 2.0 * kPi / grid.n_phi;
  const double d_t = 1.0 / grid.n_xi;
  const double f = grid.fd_step;
  const double rho = (ir + 0.5) * d_rho;
  const double phi = (ip + 0.5) * d_phi;
  const double h_rho = f * d_rho, h_phi = f * d_phi, h_t = f * d_t;

  const QuadrantBoundary center = family(rho, phi);
  const QuadrantBoundary rp = family(rho + h_rho, phi);
  const QuadrantBoundary rm = family(rho - h_rho, phi);
  const QuadrantBoundary pp = family(rho, phi + h_phi);
  const QuadrantBoundary pm = family(rho, phi - h_phi);
  const auto tc = center.traversal();
  const auto trp = rp.traversal(), trm = rm.traversal(), tpp = pp.traversal(), tpm = pm.traversal();

  static constexpr std::array<std::array<int, 3>, 6> kPerm = {
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  static constexpr std::array<double, 6> kSign = {1, 1, 1, -1, -1, -1};

  Complex acc = 0.0;
  for (int k = 0; k < 4; ++k) {
    const boundary::Segment& seg = *tc[k];
    for (int j = 0; j < grid.n_xi; ++j) {
      const double t = (j + 0.5) * d_t;
      const double s = seg.chart_of_traversal(t);
      const CMatrix g = seg.eval_chart(s);
      std::array<CMatrix, 3> dg;
      const CMatrix d_rho_g = (trp[k]->eval_chart(s) - trm[k]->eval_chart(s)) / (2.0 * h_rho);
      const CMatrix d_phi_g = (tpp[k]->eval_chart(s) - tpm[k]->eval_chart(s)) / (2.0 * h_phi);
      dg[swap_chart ? 1 : 0] = d_rho_g;
      dg[swap_chart ? 0 : 1] = d_phi_g;
      dg[2] = (seg.eval_chart(seg.chart_of_traversal(t + h_t)) -
               seg.eval_chart(seg.chart_of_traversal(t - h_t))) /
              (2.0 * h_t);
      if (dg[0].isZero(0.0) && dg[1].isZero(0.0)) continue;
      const CMatrix gs = g.adjoint();
      Complex local = 0.0;
      for (int p = 0; p < 6; ++p) {
        const auto& o = kPerm[p];
        local += kSign[p] * (gs * dg[o[0]] * dg[o[1]].adjoint() * dg[o[2]]).trace();
      }
      acc += local;
    }
  }
  return acc * d_rho * d_phi * d_t;
}

void validate(const GridSpec3D& grid) {
  if (grid.n_rho < 4 || grid.n_phi < 4 || grid.n_xi < 4) {
    throw InvalidInput("three_form_integral: grid sizes must be >= 4");
  }
  if (!(grid.fd_step > 0.0 && grid.fd_step <= 0.5)) {
    throw InvalidInput("three_form_integral: fd_step must lie in (0, 1/2]");
  }
}

ThreeFormResult finish(const std::vector<Complex>& cells) {
  Complex total = 0.0;
  for (const Complex& c : cells) total += c;  // fixed order
  const double pref = 1.0 / (24.0 * kPi * kPi);
  ThreeFormResult out;
  out.value = pref * total.real();
  out.imag_part = pref * total.imag();
  out.cells = static_cast<long>(cells.size());
  return out;
}

}  // namespace

CMatrix gmap(double rho, double phi, double xi, double alpha, const SphereManifold& X) {
  return eval_traversal(gamma_of(rho, phi, alpha, X), xi);
}

Complex connes_constant(int n) {
  if (n < 0) throw InvalidInput("connes_constant: n must be >= 0");
  const Complex two_pi_i = 2.0 * kPi * kI;
  const int k = n / 2;
  if (n % 2 == 0) {
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    return 1.0 / (std::pow(two_pi_i, k) * fact);
  }
  double prod = 1.0;  // (k + 1/2)(k - 1/2)...(1/2)
  for (int j = 0; j <= k; ++j) prod *= (j + 0.5);
  return 1.0 / std::pow(two_pi_i, k + 1) / std::pow(2.0, 2 * k + 1) / prod;
}

ThreeFormResult three_form_integral_serial(const Family& family, const GridSpec3D& grid,
                                           bool swap_chart) {
  validate(grid);
  std::vector<Complex> cells(static_cast<std::size_t>(grid.n_rho) * grid.n_phi);
  for (int ir = 0; ir < grid.n_rho; ++ir) {
    for (int ip = 0; ip < grid.n_phi; ++ip) {
      cells[static_cast<std::size_t>(ir) * grid.n_phi + ip] =
          cell_kernel(family, grid, ir, ip, swap_chart);
    }
  }
  return finish(cells);
}

ThreeFormResult three_form_integral(const Family& family, const GridSpec3D& grid,
                                    bool swap_chart) {
  validate(grid);
  const int n = grid.n_rho * grid.n_phi;
  std::vector<Complex> cells(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < n; ++c) {
    cells[static_cast<std::size_t>(c)] =
        cell_kernel(family, grid, c / grid.n_phi, c % grid.n_phi, swap_chart);
  }
  return finish(cells);
}

ThreeFormResult three_form_integral(const SphereManifold& X, double alpha,
                                    const GridSpec3D& grid, bool swap_chart) {
  Family fam = [X, alpha](double rho, double phi) { return gamma_of(rho, phi, alpha, X); };
  return three_form_integral(fam, grid, swap_chart);
}

ConvergenceLadder convergence_ladder(const SphereManifold& X, double alpha, GridSpec3D start,
                                     int levels, double tol, bool require_convergence) {
  if (levels < 1) throw InvalidInput("convergence_ladder: levels must be >= 1");
  ConvergenceLadder out;
  GridSpec3D g = start;
  for (int l = 0; l < levels; ++l) {
    LadderStep step;
    step.grid = g;
    step.value = three_form_integral(X, alpha, g).value;
    if (!out.steps.empty()) step.delta = std::abs(step.value - out.steps.back().value);
    out.steps.push_back(step);
    g.n_rho *= 2;
    g.n_phi *= 2;
    g.n_xi *= 2;
  }
  out.final_value = out.steps.back().value;
  out.converged = out.steps.size() >= 2 && out.steps.back().delta < tol;
  if (require_convergence && !out.converged) {
    throw NonConvergence("three_form_integral: grid doubling did not stabilize within tolerance");
  }
  return out;
}

double eta1_pairing(const winding::UnitaryLoop& loop, const quadrature::Spec& spec) {
  // c_1 int tr[u* u'] = (1/2 pi i) int tr[u* u'] = -(1/2 pi) int tr[i u* u'].
  const auto w = winding::wind_analytic(loop, spec);
  const Complex c1 = connes_constant(1);
  const Complex raw = Complex(w.value, w.imag_part) * 2.0 * kPi / kI;  // int tr[u* u']
  return (c1 * raw).real();
}

}  // namespace levlab::chern
