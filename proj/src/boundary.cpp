#include "levlab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include "levlab/error.hpp"

namespace levlab::boundary {

std::string to_string(EdgeId edge) {
  switch (edge) {
    case EdgeId::B1: return "B1";
    case EdgeId::B2: return "B2";
    case EdgeId::B3: return "B3";
    case EdgeId::B4: return "B4";
  }
  return "?";
}

double chart_to_param(ParamDomain domain, double s) {
  if (domain == ParamDomain::FullLine) {
    if (s <= 0.0) return kNegInf;
    if (s >= 1.0) return kPosInf;
    return std::tan(kPi * (s - 0.5));
  }
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return kPosInf;
  return std::tan(0.5 * kPi * s);
}

double param_to_chart(ParamDomain domain, double param) {
  if (domain == ParamDomain::FullLine) {
    if (param == kNegInf) return 0.0;
    if (param == kPosInf) return 1.0;
    return std::atan(param) / kPi + 0.5;
  }
  if (param <= 0.0) return 0.0;
  if (param == kPosInf) return 1.0;
  return 2.0 * std::atan(param) / kPi;
}

double Segment::lower_param() const {
  return domain == ParamDomain::FullLine ? kNegInf : 0.0;
}

CMatrix Segment::eval(double param) const {
  if (param == kPosInf) return at_upper;
  if (param == lower_param()) return at_lower;
  return value(param);
}

double Segment::param_of_chart(double s) const {
  if (s <= 0.0) return lower_param();
  if (s >= 1.0) return kPosInf;
  return chart ? chart(s) : chart_to_param(domain, s);
}

CMatrix Segment::eval_chart(double s) const {
  if (s <= 0.0) return at_lower;
  if (s >= 1.0) return at_upper;
  return eval(param_of_chart(s));
}

double Segment::chart_of_traversal(double t) const {
  return orientation == Orientation::Forward ? t : 1.0 - t;
}

namespace {

Orientation flip(Orientation o) {
  return o == Orientation::Forward ? Orientation::Reverse : Orientation::Forward;
}

Segment make_segment(EdgeId edge, ParamDomain domain, Orientation orientation, MatrixFunction fn,
                     CMatrix lo, CMatrix hi) {
  Segment seg;
  seg.edge = edge;
  seg.domain = domain;
  seg.orientation = orientation;
  seg.value = std::move(fn);
  seg.at_lower = std::move(lo);
  seg.at_upper = std::move(hi);
  return seg;
}

}  // namespace

QuadrantBoundary QuadrantBoundary::make(int dim, MatrixFunction g1, CMatrix g1_lo, CMatrix g1_hi,
                                        MatrixFunction g2, CMatrix g2_lo, CMatrix g2_hi,
                                        MatrixFunction g3, CMatrix g3_lo, CMatrix g3_hi,
                                        MatrixFunction g4, CMatrix g4_lo, CMatrix g4_hi) {
  QuadrantBoundary qb;
  qb.dim_ = dim;
  qb.segments_[0] = make_segment(EdgeId::B1, ParamDomain::FullLine, Orientation::Forward,
                                 std::move(g1), std::move(g1_lo), std::move(g1_hi));
  qb.segments_[1] = make_segment(EdgeId::B2, ParamDomain::HalfLine, Orientation::Forward,
                                 std::move(g2), std::move(g2_lo), std::move(g2_hi));
  qb.segments_[2] = make_segment(EdgeId::B3, ParamDomain::FullLine, Orientation::Reverse,
                                 std::move(g3), std::move(g3_lo), std::move(g3_hi));
  qb.segments_[3] = make_segment(EdgeId::B4, ParamDomain::HalfLine, Orientation::Reverse,
                                 std::move(g4), std::move(g4_lo), std::move(g4_hi));
  for (const auto& seg : qb.segments_) {
    if (seg.at_lower.rows() != dim || seg.at_lower.cols() != dim || seg.at_upper.rows() != dim ||
        seg.at_upper.cols() != dim) {
      throw InvalidInput("QuadrantBoundary: endpoint matrix has wrong size on " +
                         to_string(seg.edge));
    }
  }
  return qb;
}

QuadrantBoundary QuadrantBoundary::constant(const CMatrix& value) {
  auto fn = [value](double) { return value; };
  return make(static_cast<int>(value.rows()), fn, value, value, fn, value, value, fn, value, value,
              fn, value, value);
}

std::array<const Segment*, 4> QuadrantBoundary::traversal() const {
  if (!reversed_) return {&segments_[0], &segments_[1], &segments_[2], &segments_[3]};
  return {&segments_[3], &segments_[2], &segments_[1], &segments_[0]};
}

QuadrantBoundary QuadrantBoundary::reversed() const {
  QuadrantBoundary out = *this;
  out.reversed_ = !reversed_;
  for (auto& seg : out.segments_) seg.orientation = flip(seg.orientation);
  return out;
}

QuadrantBoundary QuadrantBoundary::conjugated(const CMatrix& v) const {
  QuadrantBoundary out = *this;
  const CMatrix vs = v.adjoint();
  for (auto& seg : out.segments_) {
    auto inner = seg.value;
    seg.value = [inner, v, vs](double p) -> CMatrix { return v * inner(p) * vs; };
    seg.at_lower = v * seg.at_lower * vs;
    seg.at_upper = v * seg.at_upper * vs;
  }
  return out;
}

QuadrantBoundary QuadrantBoundary::with_chart(EdgeId edge,
                                              std::function<double(double)> chart) const {
  QuadrantBoundary out = *this;
  out.segments_[static_cast<int>(edge)].chart = std::move(chart);
  return out;
}

QuadrantBoundary QuadrantBoundary::with_segment(EdgeId edge, MatrixFunction value, CMatrix lo,
                                                CMatrix hi) const {
  QuadrantBoundary out = *this;
  auto& seg = out.segments_[static_cast<int>(edge)];
  seg.value = std::move(value);
  seg.at_lower = std::move(lo);
  seg.at_upper = std::move(hi);
  return out;
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.size() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double corner_mismatch(const QuadrantBoundary& qb) {
  const auto& g1 = qb.segment(EdgeId::B1);
  const auto& g2 = qb.segment(EdgeId::B2);
  const auto& g3 = qb.segment(EdgeId::B3);
  const auto& g4 = qb.segment(EdgeId::B4);
  const double c1 = op_norm(g1.at_upper - g2.at_lower);
  const double c2 = op_norm(g2.at_upper - g3.at_upper);
  const double c3 = op_norm(g3.at_lower - g4.at_upper);
  const double c4 = op_norm(g4.at_lower - g1.at_lower);
  return std::max({c1, c2, c3, c4});
}

double unitarity_defect(const QuadrantBoundary& qb, int n_per_segment) {
  const CMatrix id = CMatrix::Identity(qb.dim(), qb.dim());
  double worst = 0.0;
  for (const Segment* seg : qb.traversal()) {
    for (int i = 0; i <= n_per_segment; ++i) {
      const CMatrix g = seg->eval_chart(static_cast<double>(i) / n_per_segment);
      worst = std::max(worst, op_norm(g.adjoint() * g - id));
    }
  }
  return worst;
}

std::vector<Sample> sample_closed_path(const QuadrantBoundary& qb, int n_per_segment) {
  if (n_per_segment < 2) throw InvalidInput("sample_closed_path: n_per_segment must be >= 2");
  std::vector<Sample> out;
  out.reserve(4 * static_cast<std::size_t>(n_per_segment));
  for (const Segment* seg : qb.traversal()) {
    for (int i = 0; i < n_per_segment; ++i) {
      const double s = seg->chart_of_traversal(static_cast<double>(i) / n_per_segment);
      out.push_back({seg->edge, seg->param_of_chart(s), seg->eval_chart(s)});
    }
  }
  return out;
}

QuadrantBoundary pointwise_det(const QuadrantBoundary& qb) {
  auto wrap = [](const Segment& seg) {
    MatrixFunction inner = seg.value;
    return MatrixFunction([inner](double p) -> CMatrix {
      CMatrix out(1, 1);
      out(0, 0) = inner(p).determinant();
      return out;
    });
  };
  auto det1 = [](const CMatrix& m) {
    CMatrix out(1, 1);
    out(0, 0) = m.determinant();
    return out;
  };
  const auto& s1 = qb.segment(EdgeId::B1);
  const auto& s2 = qb.segment(EdgeId::B2);
  const auto& s3 = qb.segment(EdgeId::B3);
  const auto& s4 = qb.segment(EdgeId::B4);
  QuadrantBoundary out =
      QuadrantBoundary::make(1, wrap(s1), det1(s1.at_lower), det1(s1.at_upper), wrap(s2),
                             det1(s2.at_lower), det1(s2.at_upper), wrap(s3), det1(s3.at_lower),
                             det1(s3.at_upper), wrap(s4), det1(s4.at_lower), det1(s4.at_upper));
  for (EdgeId e : {EdgeId::B1, EdgeId::B2, EdgeId::B3, EdgeId::B4}) {
    if (qb.segment(e).chart) out = out.with_chart(e, qb.segment(e).chart);
  }
  return qb.is_reversed() ? out.reversed() : out;
}

void write_samples_csv(std::ostream& out, const std::vector<Sample>& samples) {
  const int dim = samples.empty() ? 0 : static_cast<int>(samples.front().value.rows());
  out << "segment,parameter";
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) out << ",re_" << i << j << ",im_" << i << j;
  }
  out << '\n';
  out.precision(17);
  for (const auto& s : samples) {
    out << to_string(s.edge) << ',' << s.parameter;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) out << ',' << s.value(i, j).real() << ',' << s.value(i, j).imag();
    }
    out << '\n';
  }
}

}  // namespace levlab::boundary
