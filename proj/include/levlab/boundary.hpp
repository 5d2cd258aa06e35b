#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "levlab/types.hpp"

namespace levlab::boundary {

/// Edges of the boundary of [0,+inf] x [-inf,+inf]:
/// B1 = {0} x [-inf,+inf], B2 = [0,+inf] x {+inf},
/// B3 = {+inf} x [-inf,+inf], B4 = [0,+inf] x {-inf}.
enum class EdgeId { B1 = 0, B2 = 1, B3 = 2, B4 = 3 };

enum class ParamDomain { FullLine, HalfLine };

enum class Orientation { Forward, Reverse };

std::string to_string(EdgeId edge);

/// Chart s in [0,1] -> compactified parameter.
/// FullLine: x = tan(pi (s - 1/2)); HalfLine: lambda = tan(pi s / 2).
/// s = 0 and s = 1 map to the infinite / zero endpoints exactly.
double chart_to_param(ParamDomain domain, double s);
double param_to_chart(ParamDomain domain, double param);

using MatrixFunction = std::function<CMatrix(double)>;

/// One edge of the quadrant boundary. The value function is only ever called
/// on the open interval; the endpoint matrices are the declared limits.
struct Segment {
  EdgeId edge = EdgeId::B1;
  ParamDomain domain = ParamDomain::FullLine;
  Orientation orientation = Orientation::Forward;
  MatrixFunction value;
  CMatrix at_lower;  ///< limit at -inf (FullLine) or 0 (HalfLine)
  CMatrix at_upper;  ///< limit at +inf
  /// Optional reparametrization s -> parameter replacing the default chart,
  /// for segments whose features sit far out on a log scale.
  std::function<double(double)> chart;

  double lower_param() const;
  double param_of_chart(double s) const;
  CMatrix eval(double param) const;
  CMatrix eval_chart(double s) const;
  /// Chart coordinate of the point reached after traversing a fraction t of the edge.
  double chart_of_traversal(double t) const;
};

struct Sample {
  EdgeId edge;
  double parameter;
  CMatrix value;
};

/// (Gamma_1, ..., Gamma_4) on B1..B4, traversed clockwise from the
/// left-down corner: B1 upwards, B2 rightwards, B3 from +inf to -inf,
/// B4 from +inf to 0.
class QuadrantBoundary {
 public:
  /// Builds a quadruple with the standard orientations. Each side is given as
  /// (value on the open interval, limit at the lower end, limit at the upper end).
  static QuadrantBoundary make(int dim, MatrixFunction g1, CMatrix g1_lo, CMatrix g1_hi,
                               MatrixFunction g2, CMatrix g2_lo, CMatrix g2_hi,
                               MatrixFunction g3, CMatrix g3_lo, CMatrix g3_hi,
                               MatrixFunction g4, CMatrix g4_lo, CMatrix g4_hi);

  /// Constant matrix on every edge.
  static QuadrantBoundary constant(const CMatrix& value);

  int dim() const { return dim_; }
  const Segment& segment(EdgeId edge) const { return segments_[static_cast<int>(edge)]; }
  /// Segments in traversal order.
  std::array<const Segment*, 4> traversal() const;
  bool is_reversed() const { return reversed_; }

  /// Same quadruple traversed in the opposite direction.
  QuadrantBoundary reversed() const;
  /// V Gamma(.) V^* on every segment.
  QuadrantBoundary conjugated(const CMatrix& v) const;
  /// Replace one segment's value (used to build deliberately broken data).
  QuadrantBoundary with_segment(EdgeId edge, MatrixFunction value, CMatrix lo, CMatrix hi) const;
  /// Install a custom chart on one segment (monotone, 0 and 1 map to the endpoints).
  QuadrantBoundary with_chart(EdgeId edge, std::function<double(double)> chart) const;

 private:
  QuadrantBoundary() = default;
  std::array<Segment, 4> segments_;
  int dim_ = 1;
  bool reversed_ = false;
};

/// Largest operator-norm discrepancy among the four corner identities.
double corner_mismatch(const QuadrantBoundary& qb);

/// Largest ||G^* G - 1|| over a uniform chart grid (endpoints included).
double unitarity_defect(const QuadrantBoundary& qb, int n_per_segment);

/// n_per_segment samples per edge in traversal order, each edge contributing
/// its starting endpoint and n-1 interior points (uniform in the chart).
std::vector<Sample> sample_closed_path(const QuadrantBoundary& qb, int n_per_segment);

/// Pointwise determinant as a 1x1 quadruple.
QuadrantBoundary pointwise_det(const QuadrantBoundary& qb);

/// CSV with columns segment,parameter,re_ij,im_ij,... (row-major entries).
void write_samples_csv(std::ostream& out, const std::vector<Sample>& samples);

/// Spectral norm.
double op_norm(const CMatrix& m);

}  // namespace levlab::boundary
