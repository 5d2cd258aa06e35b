#pragma once

#include <functional>

#include "levlab/types.hpp"

namespace levlab::quadrature {

struct Spec {
  double tol = 1e-4;      ///< absolute tolerance on successive Richardson estimates
  int n0 = 64;            ///< initial panel count
  int max_doublings = 18;
};

struct Result {
  Complex value;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Integrand f(t, h): h is the local sample spacing, for callers that
/// differentiate numerically.
using Integrand = std::function<Complex(double t, double h)>;

/// Composite midpoint with grid doubling and one Richardson step. Converged
/// once two consecutive extrapolated values agree within spec.tol.
Result midpoint_richardson(const Integrand& f, double a, double b, const Spec& spec);

/// Improper integral with a non-integrable-looking (but integrable) endpoint.
/// The interval is cut into dyadic shells towards the singular end; shells are
/// added until two in a row contribute less than spec.tol / 10.
Result improper(const Integrand& f, double a, double b, bool singular_at_a, bool singular_at_b,
                const Spec& spec);

}  // namespace levlab::quadrature
