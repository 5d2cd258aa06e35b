#pragma once

#include <string>

#include "levlab/boundary.hpp"
#include "levlab/types.hpp"
#include "levlab/winding.hpp"

namespace levlab::point_models {

enum class ModelKind { BabyHalfLine, Delta1D, DeltaPrime1D, Point2D, Point3D };

/// coupling is alpha, except for DeltaPrime1D where it is beta.
struct PointModel {
  ModelKind kind = ModelKind::BabyHalfLine;
  double coupling = 0.0;
};

struct LevinsonCheck {
  winding::WindingReport winding;
  int bound_states = 0;
  double residual = 0.0;
  bool passed = false;
};

/// CLI names: baby, delta, delta-prime, point2d, point3d.
std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// 1 for the scalar models, 2 for the 1D models (even/odd embedding).
int matrix_dim(ModelKind kind);

/// Scalar scattering function s(lambda), with its limits at 0 and +inf.
Complex s_value(const PointModel& model, double lambda);

/// s(lambda) embedded as diag(s, 1) (Delta1D), diag(1, s) (DeltaPrime1D) or 1x1.
CMatrix smatrix(const PointModel& model, double lambda);

/// Energy at which the two-dimensional s equals -1.
double point2d_critical_energy(double alpha);

boundary::QuadrantBoundary gamma_boundary(const PointModel& model);

int bound_state_count(const PointModel& model);

LevinsonCheck levinson_verify(const PointModel& model, double tol,
                              const winding::PhaseOptions& opt = {});

}  // namespace levlab::point_models
