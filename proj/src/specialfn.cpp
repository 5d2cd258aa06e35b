#include "levlab/specialfn.hpp"

#include <array>
#include <cmath>
#include <string>

#include "levlab/error.hpp"

namespace levlab::specialfn {
namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

// Valid for Re z >= 0.5.
Complex lngamma_right(Complex z) {
  z -= 1.0;
  Complex series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    series += kLanczos[k] / (z + static_cast<double>(k));
  }
  const Complex t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("flux alpha must lie in (0,1), got " + std::to_string(alpha));
  }
}

}  // namespace

Complex lngamma(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw DomainError("lngamma: pole of Gamma at " + std::to_string(z.real()));
  }
  if (z.real() >= 0.5) return lngamma_right(z);
  // Upward recurrence keeps the branch continuous off the negative axis.
  const int shift = static_cast<int>(std::ceil(0.5 - z.real()));
  Complex acc = 0.0;
  for (int k = 0; k < shift; ++k) acc += std::log(z + static_cast<double>(k));
  return lngamma_right(z + static_cast<double>(shift)) - acc;
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli tail: sum B_2k / (2k x^2k)
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760))))));
  return acc + std::log(x) - 0.5 * inv - tail;
}

Complex threshold_fn(ThresholdFunctionKind kind, double y) {
  if (std::isinf(y)) {
    const bool plus = y > 0;
    switch (kind) {
      case ThresholdFunctionKind::PlusTanhMinusISech:
      case ThresholdFunctionKind::PlusTanhPlusISech:
      case ThresholdFunctionKind::HalfAngleTanh:
        return plus ? 1.0 : 0.0;
      case ThresholdFunctionKind::MinusTanhPlusISech:
        return plus ? 0.0 : 1.0;
    }
  }
  const double th = std::tanh(kPi * y);
  const double sech = 1.0 / std::cosh(kPi * y);
  switch (kind) {
    case ThresholdFunctionKind::PlusTanhMinusISech:
      return 0.5 * Complex(1.0 + th, -sech);
    case ThresholdFunctionKind::PlusTanhPlusISech:
      return 0.5 * Complex(1.0 + th, sech);
    case ThresholdFunctionKind::MinusTanhPlusISech:
      return 0.5 * Complex(1.0 - th, sech);
    case ThresholdFunctionKind::HalfAngleTanh:
      return 0.5 * (1.0 + std::tanh(0.5 * kPi * y));
  }
  return 0.0;
}

double ab_delta(int m, double alpha) {
  return 0.5 * kPi * (std::abs(m) - std::abs(m + alpha));
}

Complex ab_phi_minus(int m, double alpha, double x) {
  check_alpha(alpha);
  const double delta = ab_delta(m, alpha);
  if (x == kNegInf) return 1.0;
  if (x == kPosInf) return std::polar(1.0, 2.0 * delta);
  const double a = 0.5 * (std::abs(m) + 1.0);
  const double b = 0.5 * (std::abs(m + alpha) + 1.0);
  const double h = 0.5 * x;
  // Each ratio Gamma(s+ih)/Gamma(s-ih) is exp(2i Im lnGamma(s+ih)).
  const double phase =
      delta + 2.0 * lngamma({a, h}).imag() - 2.0 * lngamma({b, h}).imag();
  return std::polar(1.0, phase);
}

Complex ab_phi_tilde(int m, double alpha, double x) {
  check_alpha(alpha);
  if (m != 0 && m != -1) throw DomainError("ab_phi_tilde: m must be 0 or -1");
  if (x == kNegInf) return 0.0;
  if (x == kPosInf) return 1.0;
  const double am = std::abs(m);
  const double beta = std::abs(m + alpha);
  const double h = 0.5 * x;
  const Complex log_value = -std::log(2.0 * kPi) + Complex(0.5 * kPi * x, -0.5 * kPi * am) +
                            2.0 * kI * lngamma({0.5 * (am + 1.0), h}).imag() +
                            lngamma({0.5 * (1.0 + beta), -h}) +
                            lngamma({0.5 * (1.0 - beta), -h});
  return std::exp(log_value);
}

}  // namespace levlab::specialfn
