#pragma once

#include <functional>
#include <vector>

#include "levlab/boundary.hpp"
#include "levlab/types.hpp"
#include "levlab/winding.hpp"

namespace levlab::chern {

/// Unitaries conjugate to diag(lambda1, lambda2), charted by (rho, phi).
struct SphereManifold {
  Complex lambda1;  ///< |lambda1| = 1, Im < 0
  Complex lambda2;  ///< |lambda2| = 1, Im > 0
};

/// Throws InvalidInput unless the eigenvalues are unimodular with Im l1 < 0 < Im l2.
SphereManifold make_sphere(Complex lambda1, Complex lambda2);

struct GridSpec3D {
  int n_rho = 16;
  int n_phi = 16;
  int n_xi = 16;         ///< midpoints per boundary segment
  double fd_step = 0.125;  ///< central-difference step as a fraction of the local spacing
};

CMatrix u_of(double rho, double phi, const SphereManifold& X);

/// Boundary quadruple Gamma^{U(rho,phi), alpha}.
boundary::QuadrantBoundary gamma_of(double rho, double phi, double alpha, const SphereManifold& X);

/// G(rho, phi, xi) with xi in [0, 4] the traversal coordinate along the
/// boundary (one unit per segment, uniform in each segment's chart).
CMatrix gmap(double rho, double phi, double xi, double alpha, const SphereManifold& X);

/// c_n of the Connes pairing.
Complex connes_constant(int n);

/// Family of boundary quadruples over the (rho, phi) chart.
using Family = std::function<boundary::QuadrantBoundary(double rho, double phi)>;

struct ThreeFormResult {
  double value = 0.0;
  double imag_part = 0.0;  ///< diagnostic, should vanish
  long cells = 0;
};

/// (1/24 pi^2) int tr[G* dG ^ dG* ^ dG] over [0,1] x [0,2pi) x boundary with
/// right-handed (rho, phi, xi). swap_chart exchanges rho and phi in the
/// orientation, which must negate the result.
ThreeFormResult three_form_integral(const Family& family, const GridSpec3D& grid,
                                    bool swap_chart = false);
/// Same sum evaluated on one thread; kept as the reference for the parallel kernel.
ThreeFormResult three_form_integral_serial(const Family& family, const GridSpec3D& grid,
                                           bool swap_chart = false);

ThreeFormResult three_form_integral(const SphereManifold& X, double alpha,
                                    const GridSpec3D& grid, bool swap_chart = false);

struct LadderStep {
  GridSpec3D grid;
  double value = 0.0;
  double delta = 0.0;  ///< |value - previous value|, 0 for the first step
};

struct ConvergenceLadder {
  std::vector<LadderStep> steps;
  double final_value = 0.0;
  bool converged = false;
};

/// Doubles every grid dimension `levels - 1` times. Throws NonConvergence when
/// require_convergence is set and the last two values differ by more than tol.
ConvergenceLadder convergence_ladder(const SphereManifold& X, double alpha, GridSpec3D start,
                                     int levels, double tol, bool require_convergence = false);

/// c_1 int tr[u* u'] dt, which equals -Wind(u).
double eta1_pairing(const winding::UnitaryLoop& loop, const quadrature::Spec& spec = {});

}  // namespace levlab::chern
