#pragma once

#include "levlab/types.hpp"

namespace levlab::specialfn {

/// Analytic log-Gamma: the branch of log Gamma(z) that is continuous on
/// C \ (-inf, 0] and real on the positive axis. exp(lngamma(z)) == Gamma(z).
/// Throws DomainError at the poles z = 0, -1, -2, ...
Complex lngamma(Complex z);

/// Digamma on the positive half-line. Throws DomainError for x <= 0.
double digamma(double x);

/// Scalar profiles that multiply [S - 1] in the explicit wave-operator formulas.
enum class ThresholdFunctionKind {
  PlusTanhMinusISech,  ///< (1 + tanh(pi y) - i sech(pi y)) / 2
  PlusTanhPlusISech,   ///< (1 + tanh(pi y) + i sech(pi y)) / 2
  MinusTanhPlusISech,  ///< (1 - tanh(pi y) + i sech(pi y)) / 2
  HalfAngleTanh,       ///< (1 + tanh(pi y / 2)) / 2
};

/// Accepts y = +-inf and returns the limit there.
Complex threshold_fn(ThresholdFunctionKind kind, double y);

/// Aharonov-Bohm channel function phi_m^-(x), including the limits
/// phi(-inf) = 1 and phi(+inf) = exp(2 i delta_m).
Complex ab_phi_minus(int m, double alpha, double x);

/// delta_m^alpha = pi (|m| - |m + alpha|) / 2.
double ab_delta(int m, double alpha);

/// phi~_m(x) for m in {0, -1}; limits 0 at -inf and 1 at +inf.
Complex ab_phi_tilde(int m, double alpha, double x);

}  // namespace levlab::specialfn
