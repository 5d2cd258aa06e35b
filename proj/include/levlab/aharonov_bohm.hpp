#pragma once

#include "levlab/boundary.hpp"
#include "levlab/types.hpp"

namespace levlab::aharonov_bohm {

/// Boundary-condition matrices (C, D) of a self-adjoint extension.
struct AdmissiblePair {
  Mat2 C = Mat2::Identity();
  Mat2 D = Mat2::Zero();
};

/// Throws NotAdmissible unless CD* is self-adjoint and det(CC* + DD*) != 0.
AdmissiblePair make_admissible_pair(const Mat2& C, const Mat2& D);

/// Largest violation among the two admissibility conditions (0 when admissible).
double admissibility_defect(const AdmissiblePair& pair);

/// C = (1 - U)/2, D = i(1 + U)/2.
AdmissiblePair from_unitary(const Mat2& U);

/// S~(lambda) evaluated literally from the product formula. Throws
/// NearSingularBracket when the bracket's condition number exceeds 1e12.
Mat2 stilde(const AdmissiblePair& pair, double alpha, double lambda);

/// Same function from its expansion as a ratio of generalized polynomials in
/// lambda; stable for every lambda in [0, +inf].
Mat2 stilde_stable(const AdmissiblePair& pair, double alpha, double lambda);

/// diag(e^{-i pi alpha}, e^{i pi alpha}) + S~(lambda).
Mat2 smatrix(const AdmissiblePair& pair, double alpha, double lambda);

struct Limits {
  Mat2 s0;
  Mat2 sinf;
  Mat2 stilde0;
  Mat2 stildeinf;
  /// Distance between the exact leading-order limits and the ladder extrapolation.
  double error_bound = 0.0;
};

/// S(0) and S(+inf) from the leading terms of the expansion, cross-checked
/// against Aitken extrapolation on lambda = 10^{-k} and 10^{k}, k = 4..8.
Limits smatrix_limits(const AdmissiblePair& pair, double alpha);

/// Ladder-only estimate; throws ExtrapolationUnstable if the ladder diverges.
Limits smatrix_limits_extrapolated(const AdmissiblePair& pair, double alpha);

boundary::QuadrantBoundary gamma_boundary(const AdmissiblePair& pair, double alpha);

struct BoundStateCount {
  int count = 0;
  bool near_zero_flag = false;  ///< an eigenvalue of CD* lies within 1e-12 of 0
};

/// Strictly negative eigenvalues of CD*.
BoundStateCount bound_state_count(const AdmissiblePair& pair);

}  // namespace levlab::aharonov_bohm
