#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include "levlab/boundary.hpp"
#include "levlab/quadrature.hpp"
#include "levlab/types.hpp"

namespace levlab::winding {

struct WindingReport {
  double total = 0.0;
  std::array<double, 4> per_segment{};  ///< indexed by edge B1..B4
  int regularization_order = 0;
  double integerness_residual = 0.0;
  long samples_used = 0;
};

/// Unitary loop on [t0, t1] with value(t0) == value(t1). The derivative is
/// optional; when absent a central difference is used.
struct UnitaryLoop {
  int dim = 1;
  double t0 = 0.0;
  double t1 = 2.0 * kPi;
  std::function<CMatrix(double)> value;
  std::function<CMatrix(double)> derivative;
  /// Points in [t0, t1] where the loop is not differentiable.
  std::vector<double> singular_points;
};

struct LoopIntegral {
  double value = 0.0;
  double imag_part = 0.0;  ///< should vanish; kept as a diagnostic
  double error_estimate = 0.0;
  long evaluations = 0;
  bool integrability_warning = false;
};

struct PhaseOptions {
  int n0 = 64;
  int max_depth = 20;
  double corner_tol = 1e-6;
};

/// One phase-unwrapped point of a closed path.
struct PhaseSample {
  boundary::EdgeId edge;
  double parameter;
  double unwrapped_phase;  ///< cumulative arg det, starting at 0
};

WindingReport wind_phase(const boundary::QuadrantBoundary& qb, const PhaseOptions& opt = {});

/// Same walk as wind_phase, returning the sampled trace as well.
WindingReport wind_phase_trace(const boundary::QuadrantBoundary& qb, const PhaseOptions& opt,
                               std::vector<PhaseSample>& trace);

void write_phase_csv(std::ostream& out, const std::vector<PhaseSample>& trace);

/// The loop placed on B1 (uniform in the chart), with constant corners elsewhere.
boundary::QuadrantBoundary loop_as_boundary(const UnitaryLoop& loop);

/// (1/2pi) int tr[i u* u'] dt, normalized so that zeta_m gives m.
LoopIntegral wind_analytic(const UnitaryLoop& loop, const quadrature::Spec& spec = {});

/// (1/2pi) int tr[i (1 - u)^p u* u'] dt.
LoopIntegral wind_regularized(const UnitaryLoop& loop, int p, const quadrature::Spec& spec = {});

/// Regularized determinant from the eigenvalues of a unitary matrix.
Complex det_p(const CMatrix& gamma, int p);

/// det(Gamma exp(sum_{k<p} (-1)^k (Gamma - 1)^k / k)) via a matrix exponential.
Complex det_p_direct(const CMatrix& gamma, int p);

/// zeta_m(theta) = exp(-i m theta) on [0, 2pi].
UnitaryLoop zeta_loop(int m);

/// Gamma_{a,b}(x) = exp(-2 pi i phi_{a,b}(x / 2pi)) on [0, 2pi],
/// phi_{a,b}(x) = x^a sin(pi x^{-b} / 2).
UnitaryLoop phi_ab_loop(double a, double b);

double phi_ab(double a, double b, double x);
double phi_ab_prime(double a, double b, double x);

/// Smallest p >= 0 with (p + 1) a > b.
int minimal_p(double a, double b);

}  // namespace levlab::winding
