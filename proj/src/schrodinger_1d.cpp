#include <algorithm>
#include <cmath>

#include "levlab/error.hpp"
#include "levlab/schrodinger.hpp"
#include "levlab/specialfn.hpp"

namespace levlab::schrodinger {
namespace {

using specialfn::ThresholdFunctionKind;

// State (Re psi, Im psi, Re psi', Im psi') of -psi'' + V psi = k^2 psi.
ode::Rhs line_rhs(const Potential1D& v, double k) {
  return [&v, k2 = k * k](const ode::State& y, ode::State& dy, double x) {
    const double w = v.v(x) - k2;
    dy[0] = y[2];
    dy[1] = y[3];
    dy[2] = w * y[0];
    dy[3] = w * y[1];
  };
}

struct Wave {
  Complex psi;
  Complex dpsi;
};

Wave shoot(const Potential1D& v, double k, double from, double to, Wave start, const ode::Options& opt) {
  ode::State y{start.psi.real(), start.psi.imag(), start.dpsi.real(), start.dpsi.imag()};
  ode::integrate_piecewise(line_rhs(v, k), y, from, to, v.breakpoints, opt);
  return {{y[0], y[1]}, {y[2], y[3]}};
}

void check_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("jost_smatrix_1d: k must be positive and finite");
}

// Zero-energy solution equal to 1 at -R with zero slope.
ode::State zero_energy_run(const Potential1D& v, const ode::Options& opt, int* sign_changes) {
  const double r = v.cutoff;
  ode::State y{1.0, 0.0};
  double last = 1.0;
  int count = 0;
  auto rhs = [&v](const ode::State& s, ode::State& ds, double x) {
    ds[0] = s[1];
    ds[1] = v.v(x) * s[0];
  };
  auto obs = [&](const ode::State& s, double) {
    if (s[0] != 0.0 && (s[0] < 0.0) != (last < 0.0)) {
      ++count;
      last = s[0];
    }
  };
  ode::integrate_piecewise(rhs, y, -r, r, v.breakpoints, opt, obs);
  if (sign_changes) *sign_changes = count;
  return y;
}

Mat2 lerp_to_zero(const Mat2& a, double ka, const Mat2& b, double kb) {
  // Straight line through (ka, a) and (kb, b), evaluated at k = 0.
  return (ka * b - kb * a) / (ka - kb);
}

}  // namespace

const char* to_string(S0Class c) { return c == S0Class::Generic ? "generic" : "exceptional"; }

Jost1D jost_data_1d(const Potential1D& v, double k, const ode::Options& opt) {
  check_k(k);
  const double r = v.cutoff;
  const Complex ik = kI * k;

  // Incidence from the left: psi = exp(ikx) beyond +R.
  const Complex e_r = std::exp(ik * r);
  const Wave l = shoot(v, k, r, -r, {e_r, ik * e_r}, opt);
  const Complex a = 0.5 * (l.psi + l.dpsi / ik) * std::exp(ik * r);    // times exp(ikx) at x = -R
  const Complex b = 0.5 * (l.psi - l.dpsi / ik) * std::exp(-ik * r);   // times exp(-ikx)

  // Incidence from the right: psi = exp(-ikx) beyond -R.
  const Wave rr = shoot(v, k, -r, r, {e_r, -ik * e_r}, opt);
  const Complex a2 = 0.5 * (rr.psi - rr.dpsi / ik) * std::exp(ik * r);
  const Complex b2 = 0.5 * (rr.psi + rr.dpsi / ik) * std::exp(-ik * r);

  if (std::abs(a) == 0.0 || std::abs(a2) == 0.0) {
    throw StiffIntegration("jost_smatrix_1d: vanishing incoming amplitude");
  }
  return {1.0 / a, 1.0 / a2, b / a, b2 / a2};
}

Mat2 jost_smatrix_1d(const Potential1D& v, double k, const ode::Options& opt) {
  const Jost1D j = jost_data_1d(v, k, opt);
  const Complex t = 0.5 * (j.t + j.t_right);
  const Complex rs = 0.5 * (j.r_left + j.r_right);
  const Complex rd = 0.5 * (j.r_left - j.r_right);
  Mat2 s;
  s << t + rs, rd, -rd, t - rs;
  return s;
}

S0Estimate s0_classify(const Potential1D& v, const ode::Options& opt) {
  const double k1 = 1e-2, k2 = 1e-3;
  const Mat2 s1 = jost_smatrix_1d(v, k1, opt);
  const Mat2 s2 = jost_smatrix_1d(v, k2, opt);
  const Mat2 s_coarse = jost_smatrix_1d(v, 1e-1, opt);
  S0Estimate out;
  out.s0_extrapolated = lerp_to_zero(s1, k1, s2, k2);
  out.det_extrapolated =
      (k1 * s2.determinant() - k2 * s1.determinant()) / (k1 - k2);
  // The coarse point only guards against a trend that is not yet linear.
  const Complex det_coarse =
      (1e-1 * s2.determinant() - k2 * s_coarse.determinant()) / (1e-1 - k2);
  const Complex d = out.det_extrapolated;
  const bool near_minus = std::abs(d + 1.0) < 0.1 && std::abs(det_coarse + 1.0) < 0.5;
  const bool near_plus = std::abs(d - 1.0) < 0.1 && std::abs(det_coarse - 1.0) < 0.5;
  if (near_minus == near_plus) {
    throw AmbiguousClassification("s0_classify: extrapolated det S(0) = " + std::to_string(d.real()) +
                                  (d.imag() < 0 ? " - " : " + ") + std::to_string(std::abs(d.imag())) +
                                  "i is not within 0.1 of +-1");
  }
  const Mat2& e = out.s0_extrapolated;
  if (near_minus) {
    out.cls = S0Class::Generic;
    const double sign = (e(1, 1) - e(0, 0)).real() >= 0.0 ? 1.0 : -1.0;
    out.s0 << -sign, 0.0, 0.0, sign;
  } else {
    out.cls = S0Class::Exceptional;
    // Closest matrix of the form [[a, b], [-conj b, a]] with |a|^2 + |b|^2 = 1.
    Complex a = 0.5 * (e(0, 0) + e(1, 1));
    Complex b = 0.5 * (e(0, 1) - std::conj(e(1, 0)));
    a = a.real();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    out.s0 << a, b, -std::conj(b), a;
  }
  return out;
}

int bound_count_1d(const Potential1D& v, const ode::Options& opt) {
  int count = 0;
  const ode::State y = zero_energy_run(v, opt, &count);
  // Beyond R the solution continues as a straight line.
  if (y[1] != 0.0) {
    const double reach = -y[0] / y[1];
    if (reach > 0.0 && reach < 1e6) ++count;
  }
  return count;
}

double zero_energy_slope(const Potential1D& v, const ode::Options& opt) {
  return zero_energy_run(v, opt, nullptr)[1];
}

boundary::QuadrantBoundary gamma_boundary_1d(const Potential1D& v, const S0Estimate& s0,
                                             const ode::Options& opt) {
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix s0m = s0.s0;
  auto g1 = [id, s0m](double y) -> CMatrix {
    CMatrix th = CMatrix::Zero(2, 2);
    th(0, 0) = specialfn::threshold_fn(ThresholdFunctionKind::PlusTanhPlusISech, y);
    th(1, 1) = specialfn::threshold_fn(ThresholdFunctionKind::PlusTanhMinusISech, y);
    return id + th * (s0m - id);
  };
  auto g2 = [v, opt](double lambda) -> CMatrix { return jost_smatrix_1d(v, std::sqrt(lambda), opt); };
  auto one = [id](double) { return id; };
  auto qb = boundary::QuadrantBoundary::make(2, g1, id, s0m, g2, s0m, id, one, id, id, one, id, id);
  // Uniform in k rather than in lambda.
  return qb.with_chart(boundary::EdgeId::B2, [](double s) {
    const double k = std::tan(0.5 * kPi * s);
    return k * k;
  });
}

Levinson1DReport levinson_1d(const Potential1D& v, double tol, const ode::Options& opt,
                             const winding::PhaseOptions& popt) {
  Levinson1DReport out;
  out.s0 = s0_classify(v, opt);
  out.winding = winding::wind_phase(gamma_boundary_1d(v, out.s0, opt), popt);
  out.gamma1_part = out.winding.per_segment[0];
  out.wind_s = out.winding.per_segment[1];
  out.bound_states = bound_count_1d(v, opt);
  out.expected_wind_s = out.bound_states - (out.s0.cls == S0Class::Generic ? 0.5 : 0.0);
  out.residual = std::max(std::abs(out.wind_s - out.expected_wind_s),
                          std::abs(out.winding.total - out.bound_states));
  out.passed = out.residual < tol;
  return out;
}

}  // namespace levlab::schrodinger
