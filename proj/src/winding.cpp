#include "levlab/winding.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "levlab/error.hpp"

namespace levlab::winding {

using boundary::EdgeId;
using boundary::QuadrantBoundary;
using boundary::Segment;

namespace {

Complex unit_det(const CMatrix& m) {
  const Complex d = m.determinant();
  const double r = std::abs(d);
  if (!(r > 0.0)) throw NonUnitaryInput("wind_phase: singular matrix on the boundary");
  return d / r;
}

struct Walker {
  const Segment& seg;
  int max_depth;
  long evals = 0;
  std::vector<PhaseSample>* trace;
  double cumulative;

  Complex at(double t) {
    ++evals;
    return unit_det(seg.eval_chart(seg.chart_of_traversal(t)));
  }

  void record(double t) {
    if (trace == nullptr) return;
    const double s = seg.chart_of_traversal(t);
    trace->push_back({seg.edge, seg.param_of_chart(s), cumulative});
  }

  // Phase change from ta to tb, bisecting until every jump is below pi/2.
  double unwrap(double ta, Complex fa, double tb, Complex fb, int depth) {
    const double jump = std::arg(fb / fa);
    if (std::abs(jump) < 0.5 * kPi) {
      cumulative += jump;
      record(tb);
      return jump;
    }
    if (depth >= max_depth) {
      throw NonConvergence("wind_phase: phase jump >= pi/2 persists on " +
                           boundary::to_string(seg.edge) + " near chart t=" + std::to_string(ta) +
                           " (discontinuity or undersampling)");
    }
    const double tm = 0.5 * (ta + tb);
    const Complex fm = at(tm);
    return unwrap(ta, fa, tm, fm, depth + 1) + unwrap(tm, fm, tb, fb, depth + 1);
  }
};

void finish(WindingReport& rep) {
  rep.total = 0.0;
  for (double w : rep.per_segment) rep.total += w;
  rep.integerness_residual = std::abs(rep.total - std::round(rep.total));
}

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

}  // namespace

WindingReport wind_phase_trace(const QuadrantBoundary& qb, const PhaseOptions& opt,
                               std::vector<PhaseSample>& trace) {
  const double mismatch = boundary::corner_mismatch(qb);
  if (mismatch > opt.corner_tol) {
    throw CornerMismatch("wind_phase: corner mismatch " + std::to_string(mismatch) +
                         " exceeds tolerance");
  }
  if (opt.n0 < 1) throw InvalidInput("wind_phase: n0 must be positive");
  WindingReport rep;
  double cumulative = 0.0;
  for (const Segment* seg : qb.traversal()) {
    Walker w{*seg, opt.max_depth, 0, &trace, cumulative};
    double change = 0.0;
    double ta = 0.0;
    Complex fa = w.at(ta);
    w.record(ta);
    for (int i = 1; i <= opt.n0; ++i) {
      const double tb = static_cast<double>(i) / opt.n0;
      const Complex fb = w.at(tb);
      change += w.unwrap(ta, fa, tb, fb, 0);
      ta = tb;
      fa = fb;
    }
    cumulative = w.cumulative;
    rep.per_segment[static_cast<int>(seg->edge)] = -change / (2.0 * kPi);
    rep.samples_used += w.evals;
  }
  finish(rep);
  return rep;
}

WindingReport wind_phase(const QuadrantBoundary& qb, const PhaseOptions& opt) {
  std::vector<PhaseSample> trace;
  return wind_phase_trace(qb, opt, trace);
}

void write_phase_csv(std::ostream& out, const std::vector<PhaseSample>& trace) {
  out << "segment,parameter,unwrapped_phase\n";
  out.precision(17);
  for (const auto& s : trace) {
    out << boundary::to_string(s.edge) << ',' << s.parameter << ',' << s.unwrapped_phase << '\n';
  }
}

QuadrantBoundary loop_as_boundary(const UnitaryLoop& loop) {
  const CMatrix start = loop.value(loop.t0);
  const CMatrix end = loop.value(loop.t1);
  auto g1 = [loop](double x) -> CMatrix {
    const double s = boundary::param_to_chart(boundary::ParamDomain::FullLine, x);
    return loop.value(loop.t0 + (loop.t1 - loop.t0) * s);
  };
  auto c = [start](double) { return start; };
  return QuadrantBoundary::make(loop.dim, g1, start, end, c, start, start, c, start, start, c,
                                start, start);
}

LoopIntegral wind_regularized(const UnitaryLoop& loop, int p, const quadrature::Spec& spec) {
  if (p < 0) throw InvalidInput("wind_regularized: p must be >= 0");
  const CMatrix id = identity(loop.dim);
  quadrature::Integrand f = [&](double t, double h) -> Complex {
    const CMatrix u = loop.value(t);
    CMatrix du;
    if (loop.derivative) {
      du = loop.derivative(t);
    } else {
      const double d = h / 8.0;
      du = (loop.value(t + d) - loop.value(t - d)) / (2.0 * d);
    }
    CMatrix weight = id;
    for (int k = 0; k < p; ++k) weight = weight * (id - u);
    return kI * (weight * u.adjoint() * du).trace() / (2.0 * kPi);
  };

  std::vector<double> cuts{loop.t0, loop.t1};
  for (double s : loop.singular_points) {
    if (s >= loop.t0 && s <= loop.t1) cuts.push_back(s);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto singular = [&](double t) {
    return std::find(loop.singular_points.begin(), loop.singular_points.end(), t) !=
           loop.singular_points.end();
  };

  LoopIntegral out;
  Complex acc = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto r = quadrature::improper(f, cuts[i], cuts[i + 1], singular(cuts[i]),
                                        singular(cuts[i + 1]), spec);
    acc += r.value;
    out.error_estimate += r.error_estimate;
    out.evaluations += r.evaluations;
    ok = ok && r.converged;
  }
  out.value = acc.real();
  out.imag_part = acc.imag();
  out.integrability_warning = !ok;
  return out;
}

LoopIntegral wind_analytic(const UnitaryLoop& loop, const quadrature::Spec& spec) {
  return wind_regularized(loop, 0, spec);
}

Complex det_p(const CMatrix& gamma, int p) {
  if (p < 1) throw InvalidInput("det_p: p must be >= 1");
  Eigen::ComplexEigenSolver<CMatrix> es(gamma, false);
  Complex out = 1.0;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
    const Complex z = es.eigenvalues()(j);
    Complex sum = 0.0;
    Complex power = 1.0;
    for (int k = 1; k < p; ++k) {
      power *= (z - 1.0);
      sum += (k % 2 == 0 ? 1.0 : -1.0) * power / static_cast<double>(k);
    }
    out *= z * std::exp(sum);
  }
  return out;
}

Complex det_p_direct(const CMatrix& gamma, int p) {
  if (p < 1) throw InvalidInput("det_p: p must be >= 1");
  const CMatrix t = gamma - identity(static_cast<int>(gamma.rows()));
  CMatrix sum = CMatrix::Zero(gamma.rows(), gamma.cols());
  CMatrix power = identity(static_cast<int>(gamma.rows()));
  for (int k = 1; k < p; ++k) {
    power = power * t;
    sum += (k % 2 == 0 ? 1.0 : -1.0) * power / static_cast<double>(k);
  }
  const CMatrix e = sum.exp();
  return (gamma * e).determinant();
}

UnitaryLoop zeta_loop(int m) {
  UnitaryLoop loop;
  loop.value = [m](double t) {
    CMatrix out(1, 1);
    out(0, 0) = std::exp(-kI * static_cast<double>(m) * t);
    return out;
  };
  loop.derivative = [m](double t) {
    CMatrix out(1, 1);
    out(0, 0) = -kI * static_cast<double>(m) * std::exp(-kI * static_cast<double>(m) * t);
    return out;
  };
  return loop;
}

double phi_ab(double a, double b, double x) {
  if (x == 0.0) return 0.0;
  return std::pow(x, a) * std::sin(0.5 * kPi * std::pow(x, -b));
}

double phi_ab_prime(double a, double b, double x) {
  const double arg = 0.5 * kPi * std::pow(x, -b);
  return a * std::pow(x, a - 1.0) * std::sin(arg) -
         0.5 * b * kPi * std::pow(x, a - b - 1.0) * std::cos(arg);
}

UnitaryLoop phi_ab_loop(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidInput("phi_ab_loop: requires a > 0 and b > 0");
  UnitaryLoop loop;
  loop.value = [a, b](double x) {
    CMatrix out(1, 1);
    out(0, 0) = std::exp(-2.0 * kPi * kI * phi_ab(a, b, x / (2.0 * kPi)));
    return out;
  };
  loop.derivative = [a, b](double x) {
    CMatrix out(1, 1);
    if (x == 0.0) {
      out(0, 0) = 0.0;
      return out;
    }
    const double y = x / (2.0 * kPi);
    out(0, 0) = -kI * phi_ab_prime(a, b, y) * std::exp(-2.0 * kPi * kI * phi_ab(a, b, y));
    return out;
  };
  loop.singular_points = {0.0};
  return loop;
}

int minimal_p(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidInput("minimal_p: requires a > 0 and b > 0");
  int p = 0;
  while (!((p + 1) * a > b)) ++p;
  return p;
}

}  // namespace levlab::winding
