#include "levlab/point_models.hpp"

#include <cmath>

#include "levlab/error.hpp"
#include "levlab/specialfn.hpp"

namespace levlab::point_models {

using specialfn::ThresholdFunctionKind;

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::BabyHalfLine: return "baby";
    case ModelKind::Delta1D: return "delta";
    case ModelKind::DeltaPrime1D: return "delta-prime";
    case ModelKind::Point2D: return "point2d";
    case ModelKind::Point3D: return "point3d";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& name) {
  for (ModelKind k : {ModelKind::BabyHalfLine, ModelKind::Delta1D, ModelKind::DeltaPrime1D,
                      ModelKind::Point2D, ModelKind::Point3D}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidInput("unknown point model '" + name +
                     "' (expected baby, delta, delta-prime, point2d or point3d)");
}

int matrix_dim(ModelKind kind) {
  return (kind == ModelKind::Delta1D || kind == ModelKind::DeltaPrime1D) ? 2 : 1;
}

namespace {

void check(const PointModel& m) {
  if (!std::isfinite(m.coupling)) throw InvalidInput("point model coupling must be finite");
}

double point2d_shift(double alpha) {
  return 2.0 * kPi * alpha - specialfn::digamma(1.0) - std::log(2.0);
}

ThresholdFunctionKind profile(ModelKind kind) {
  switch (kind) {
    case ModelKind::Delta1D: return ThresholdFunctionKind::PlusTanhPlusISech;
    case ModelKind::Point2D: return ThresholdFunctionKind::HalfAngleTanh;
    default: return ThresholdFunctionKind::PlusTanhMinusISech;
  }
}

}  // namespace

Complex s_value(const PointModel& model, double lambda) {
  check(model);
  if (lambda < 0.0) throw DomainError("smatrix: energy must be >= 0");
  const double a = model.coupling;
  const bool at_zero = lambda == 0.0;
  const bool at_inf = lambda == kPosInf;
  const double k = std::sqrt(lambda);
  switch (model.kind) {
    case ModelKind::BabyHalfLine:
      if (at_inf) return -1.0;
      if (at_zero) return a == 0.0 ? -1.0 : 1.0;
      return (a + kI * k) / (a - kI * k);
    case ModelKind::Delta1D:
      if (at_inf) return 1.0;
      if (at_zero) return a == 0.0 ? 1.0 : -1.0;
      return (2.0 * k - kI * a) / (2.0 * k + kI * a);
    case ModelKind::DeltaPrime1D:
      if (at_zero) return 1.0;
      if (at_inf) return a == 0.0 ? 1.0 : -1.0;
      return (2.0 + kI * a * k) / (2.0 - kI * a * k);
    case ModelKind::Point2D: {
      if (at_zero || at_inf) return 1.0;
      const double re = point2d_shift(a) + std::log(k);
      return (re + 0.5 * kI * kPi) / (re - 0.5 * kI * kPi);
    }
    case ModelKind::Point3D:
      if (at_inf) return -1.0;
      if (at_zero) return a == 0.0 ? -1.0 : 1.0;
      return (4.0 * kPi * a + kI * k) / (4.0 * kPi * a - kI * k);
  }
  return 1.0;
}

CMatrix smatrix(const PointModel& model, double lambda) {
  const Complex s = s_value(model, lambda);
  const int n = matrix_dim(model.kind);
  CMatrix out = CMatrix::Identity(n, n);
  if (model.kind == ModelKind::DeltaPrime1D) {
    out(1, 1) = s;
  } else {
    out(0, 0) = s;
  }
  return out;
}

double point2d_critical_energy(double alpha) {
  return std::exp(2.0 * (specialfn::digamma(1.0) + std::log(2.0) - 2.0 * kPi * alpha));
}

boundary::QuadrantBoundary gamma_boundary(const PointModel& model) {
  check(model);
  const int n = matrix_dim(model.kind);
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix s0 = smatrix(model, 0.0);
  const CMatrix sinf = smatrix(model, kPosInf);
  const ThresholdFunctionKind kind = profile(model.kind);

  // Threshold sides interpolate from 1 (y = -inf) to the S limit (y = +inf).
  auto threshold_side = [id, kind](const CMatrix& limit) {
    return [id, kind, limit](double y) -> CMatrix {
      return id + specialfn::threshold_fn(kind, y) * (limit - id);
    };
  };
  auto g2 = [model](double lambda) { return smatrix(model, lambda); };
  auto g4 = [id](double) { return id; };
  auto qb = boundary::QuadrantBoundary::make(n, threshold_side(s0), id, s0, g2, s0, sinf,
                                             threshold_side(sinf), id, sinf, g4, id, id);
  if (model.kind == ModelKind::Point2D) {
    // The full turn of s happens within a few e-folds of lambda*, which can be
    // anywhere between 1e-300 and 1e300; center a log chart on it.
    const double ln_star = std::log(point2d_critical_energy(model.coupling));
    qb = qb.with_chart(boundary::EdgeId::B2, [ln_star](double s) {
      return std::exp(ln_star + 2.0 * std::tan(kPi * (s - 0.5)));
    });
  }
  return qb;
}

int bound_state_count(const PointModel& model) {
  check(model);
  if (model.kind == ModelKind::Point2D) return 1;
  return model.coupling < 0.0 ? 1 : 0;
}

LevinsonCheck levinson_verify(const PointModel& model, double tol,
                              const winding::PhaseOptions& opt) {
  LevinsonCheck out;
  out.winding = winding::wind_phase(gamma_boundary(model), opt);
  out.bound_states = bound_state_count(model);
  out.residual = std::abs(out.winding.total - out.bound_states);
  out.passed = out.residual < tol;
  return out;
}

}  // namespace levlab::point_models
