#include "levlab/ab_tables.hpp"

#include <cmath>
#include <sstream>

#include "levlab/error.hpp"

namespace levlab::aharonov_bohm {
namespace {

constexpr double kZero = 1e-12;
constexpr double kAmbiguous = 1e-10;

// -1, 0 or +1; quantities between the two thresholds are ambiguous.
int sign_of(double q, double scale, const std::string& what) {
  const double r = std::abs(q) / scale;
  if (r <= kZero) return 0;
  if (r <= kAmbiguous) {
    throw DegenerateClassification("classify_case: " + what + " = " + std::to_string(q) +
                                   " is within 1e-10 of a row boundary");
  }
  return q > 0.0 ? 1 : -1;
}

bool is_zero(std::complex<double> z, const std::string& what) {
  return sign_of(std::abs(z), 1.0, what) == 0;
}

std::vector<TableRow> build_rows() {
  const Affine zero{0, 0}, one{1, 0}, minus_one{-1, 0}, half{0.5, 0}, minus_half{-0.5, 0};
  const Affine a{0, 1}, minus_a{0, -1}, a_minus_1{-1, 1}, one_minus_a{1, -1};
  const Affine two_a_minus_1{-1, 2}, one_minus_two_a{1, -2};
  std::vector<TableRow> r;
  auto add = [&](int t, int i, std::string cond, int n, Affine w1, Affine w2, Affine w3) {
    r.push_back({t, i, std::move(cond), n, {w1, w2, w3}});
  };
  add(1, 1, "D=0", 0, zero, zero, zero);
  add(1, 2, "C=0", 0, minus_one, zero, one);

  add(2, 1, "e11*e22>=0, tr(E)>0, det(E)>0", 0, zero, minus_one, one);
  add(2, 2, "e11*e22>=0, tr(E)>0, det(E)<0", 1, zero, zero, one);
  add(2, 3, "e11*e22>=0, tr(E)<0, det(E)>0", 2, zero, one, one);
  add(2, 4, "e11*e22>=0, tr(E)<0, det(E)<0", 1, zero, zero, one);
  add(2, 5, "e11=e22=0, det(E)<0", 1, zero, zero, one);
  add(2, 6, "e11*e22<0", 1, zero, zero, one);

  add(3, 1, "e11=0, tr(E)>0", 0, minus_a, a_minus_1, one);
  add(3, 2, "e11*e22!=0, tr(E)>0, alpha<1/2", 0, minus_a, a_minus_1, one);
  add(3, 3, "e11=0, tr(E)<0", 1, minus_a, a, one);
  add(3, 4, "e11*e22!=0, tr(E)<0, alpha<1/2", 1, minus_a, a, one);
  add(3, 5, "e22=0, tr(E)>0", 0, a_minus_1, minus_a, one);
  add(3, 6, "e11*e22!=0, tr(E)>0, alpha>1/2", 0, a_minus_1, minus_a, one);
  add(3, 7, "e22=0, tr(E)<0", 1, a_minus_1, one_minus_a, one);
  add(3, 8, "e11*e22!=0, tr(E)<0, alpha>1/2", 1, a_minus_1, one_minus_a, one);
  add(3, 9, "e11*e22!=0, tr(E)>0, alpha=1/2", 0, minus_half, minus_half, one);
  add(3, 10, "e11*e22!=0, tr(E)<0, alpha=1/2", 1, minus_half, half, one);

  add(4, 1, "l>0", 0, zero, minus_half, half);
  add(4, 2, "l=0", 0, minus_half, zero, half);
  add(4, 3, "l<0", 1, zero, half, half);

  add(5, 1, "l<0, p1!=0", 1, zero, a, one_minus_a);
  add(5, 2, "l<0, p1=0", 1, zero, one_minus_a, a);
  add(5, 3, "l>0, p1!=0", 0, zero, a_minus_1, one_minus_a);
  add(5, 4, "l>0, p1=0", 0, zero, minus_a, a);
  add(5, 5, "l=0, p1*p2!=0", 0, minus_a, two_a_minus_1, one_minus_a);
  add(5, 6, "l=0, p1=0", 0, minus_a, zero, a);
  add(5, 7, "l=0, p2=0", 0, a_minus_1, zero, one_minus_a);

  add(6, 1, "l<0, p2!=0", 1, zero, one_minus_a, a);
  add(6, 2, "l<0, p2=0", 1, zero, a, one_minus_a);
  add(6, 3, "l>0, p2!=0", 0, zero, minus_a, a);
  add(6, 4, "l>0, p2=0", 0, zero, a_minus_1, one_minus_a);
  add(6, 5, "l=0, p1*p2!=0", 0, a_minus_1, one_minus_two_a, a);
  add(6, 6, "l=0, p1=0", 0, minus_a, zero, a);
  add(6, 7, "l=0, p2=0", 0, a_minus_1, zero, one_minus_a);
  return r;
}

Mat2 fixed_d() {
  Mat2 d;
  d << Complex(1.0, 0.0), Complex(0.0, 0.5), Complex(0.25, 0.0), Complex(1.0, 0.0);
  return d;
}

}  // namespace

std::string to_string(const Affine& a) {
  auto num = [](double x) {
    if (x == 0.5) return std::string("1/2");
    if (x == -0.5) return std::string("-1/2");
    std::ostringstream s;
    s << x;
    return s.str();
  };
  if (a.c1 == 0.0) return num(a.c0);
  std::string lin = a.c1 == 1.0 ? "a" : a.c1 == -1.0 ? "-a" : num(a.c1) + "a";
  if (a.c0 == 0.0) return lin;
  if (a.c1 < 0.0) return num(a.c0) + lin;
  return lin + (a.c0 > 0.0 ? "+" : "") + num(a.c0);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::D_zero: return "D_zero";
    case Family::C_zero: return "C_zero";
    case Family::E_full_rank: return "E_full_rank";
    case Family::E_det_zero: return "E_det_zero";
    case Family::KerD_dim1: return "KerD_dim1";
  }
  return "?";
}

std::string to_string(AlphaRegime r) {
  switch (r) {
    case AlphaRegime::Below: return "alpha<1/2";
    case AlphaRegime::Half: return "alpha=1/2";
    case AlphaRegime::Above: return "alpha>1/2";
  }
  return "?";
}

AlphaRegime regime_of(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("flux alpha must lie in (0,1)");
  if (std::abs(alpha - 0.5) <= kZero) return AlphaRegime::Half;
  return alpha < 0.5 ? AlphaRegime::Below : AlphaRegime::Above;
}

const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = build_rows();
  return rows;
}

const TableRow& table_row(int table, int row) {
  for (const auto& r : table_rows()) {
    if (r.table == table && r.row == row) return r;
  }
  throw InvalidInput("no table row T" + std::to_string(table) + "." + std::to_string(row));
}

CaseDescriptor classify_case(const AdmissiblePair& pair, double alpha) {
  CaseDescriptor out;
  out.regime = regime_of(alpha);
  const double scale = std::max(pair.C.norm(), pair.D.norm());
  Eigen::JacobiSVD<Mat2> svd(pair.D, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  const int d_max = sign_of(sv(0), scale, "largest singular value of D");
  const int d_min = sign_of(sv(1), scale, "smallest singular value of D");

  if (d_max == 0) {
    out.family = Family::D_zero;
    out.row = &table_row(1, 1);
    return out;
  }
  if (sign_of(pair.C.norm(), scale, "norm of C") == 0) {
    out.family = Family::C_zero;
    out.row = &table_row(1, 2);
    return out;
  }

  if (d_min != 0) {
    const Mat2 E = pair.D.partialPivLu().solve(pair.C);
    const double escale = std::max(1.0, E.norm());
    out.e11 = E(0, 0).real();
    out.e22 = E(1, 1).real();
    out.trace_e = E.trace().real();
    out.det_e = E.determinant().real();
    const int s11 = sign_of(*out.e11, escale, "e11");
    const int s22 = sign_of(*out.e22, escale, "e22");
    const int str = sign_of(*out.trace_e, escale, "tr(E)");
    const int sdet = sign_of(*out.det_e, escale * escale, "det(E)");
    if (sdet != 0) {
      out.family = Family::E_full_rank;
      if (s11 * s22 < 0) {
        out.row = &table_row(2, 6);
      } else if (s11 == 0 && s22 == 0) {
        if (sdet > 0) throw DegenerateClassification("classify_case: e11=e22=0 with det(E)>0");
        out.row = &table_row(2, 5);
      } else {
        if (str == 0) throw DegenerateClassification("classify_case: tr(E)=0 with e11*e22>=0");
        const int idx = (str > 0 ? 1 : 3) + (sdet > 0 ? 0 : 1);
        out.row = &table_row(2, idx);
      }
      return out;
    }
    out.family = Family::E_det_zero;
    if (str == 0) throw DegenerateClassification("classify_case: tr(E)=0 with det(E)=0");
    const bool pos = str > 0;
    if (s11 == 0) {
      out.row = &table_row(3, pos ? 1 : 3);
    } else if (s22 == 0) {
      out.row = &table_row(3, pos ? 5 : 7);
    } else {
      switch (out.regime) {
        case AlphaRegime::Below: out.row = &table_row(3, pos ? 2 : 4); break;
        case AlphaRegime::Above: out.row = &table_row(3, pos ? 6 : 8); break;
        case AlphaRegime::Half: out.row = &table_row(3, pos ? 9 : 10); break;
      }
    }
    return out;
  }

  out.family = Family::KerD_dim1;
  const Eigen::Vector2cd q = svd.matrixV().col(0);
  const Eigen::Vector2cd p = svd.matrixV().col(1);
  const Eigen::Vector2cd dq = pair.D * q;
  const Eigen::Vector2cd cq = pair.C * q;
  const Complex ell = dq.dot(cq) / dq.squaredNorm();
  out.ell = ell.real();
  out.p1 = p(0);
  out.p2 = p(1);
  const int sl = sign_of(*out.ell, 1.0, "ell");
  const bool p1z = is_zero(p(0), "p1");
  const bool p2z = is_zero(p(1), "p2");
  if (out.regime == AlphaRegime::Half) {
    out.row = &table_row(4, sl > 0 ? 1 : sl == 0 ? 2 : 3);
    return out;
  }
  const int t = out.regime == AlphaRegime::Below ? 5 : 6;
  // Table 5 splits the l != 0 rows on p1, table 6 on p2.
  const bool split_zero = t == 5 ? p1z : p2z;
  if (sl < 0) {
    out.row = &table_row(t, split_zero ? 2 : 1);
  } else if (sl > 0) {
    out.row = &table_row(t, split_zero ? 4 : 3);
  } else {
    out.row = &table_row(t, p1z ? 6 : p2z ? 7 : 5);
  }
  return out;
}

ABLevinsonRow levinson_verify(const AdmissiblePair& pair, double alpha, double tol,
                              const winding::PhaseOptions& opt) {
  ABLevinsonRow out;
  out.alpha = alpha;
  out.row = classify_case(pair, alpha).row;
  out.computed = winding::wind_phase(gamma_boundary(pair, alpha), opt);
  out.bound_states = bound_state_count(pair).count;
  for (int i = 0; i < 3; ++i) {
    out.w_residual =
        std::max(out.w_residual, std::abs(out.computed.per_segment[i] - out.row->w[i].at(alpha)));
  }
  out.w_residual = std::max(out.w_residual, std::abs(out.computed.per_segment[3]));
  out.total_residual = std::abs(out.computed.total - out.bound_states);
  out.passed = out.w_residual < tol && out.total_residual < tol && out.bound_states == out.row->count;
  return out;
}

AdmissiblePair kernel_pair(double ell, double p1, double p2) {
  const double n = std::hypot(p1, p2);
  if (!(n > 0.0)) throw InvalidInput("kernel_pair: kernel vector must be nonzero");
  Eigen::Vector2cd p(p1 / n, p2 / n);
  Eigen::Vector2cd q(-p2 / n, p1 / n);
  const Mat2 qq = q * q.adjoint();
  const Mat2 pp = p * p.adjoint();
  return make_admissible_pair(ell * qq + pp, qq);
}

AdmissiblePair pair_from_e(const Mat2& E) {
  const Mat2 d = fixed_d();
  return make_admissible_pair(d * E, d);
}

std::vector<RowWitness> representative_pairs() {
  const std::vector<double> all{0.3, 0.5, 0.7}, below{0.3}, half{0.5}, above{0.7};
  auto real2 = [](double a, double b, double c, double d) {
    Mat2 m;
    m << a, b, c, d;
    return m;
  };
  const double c = std::cos(0.6), s = std::sin(0.6);
  std::vector<RowWitness> w;
  auto add = [&](int t, int r, AdmissiblePair p, std::vector<double> alphas) {
    w.push_back({&table_row(t, r), p, std::move(alphas)});
  };
  add(1, 1, from_unitary(-Mat2::Identity()), all);
  add(1, 2, from_unitary(Mat2::Identity()), all);

  add(2, 1, pair_from_e(real2(1, 0, 0, 2)), all);
  add(2, 2, pair_from_e(real2(1, 2, 2, 1)), all);
  add(2, 3, pair_from_e(real2(-1, 0, 0, -2)), all);
  add(2, 4, pair_from_e(real2(-1, 2, 2, -1)), all);
  add(2, 5, pair_from_e(real2(0, 1, 1, 0)), all);
  add(2, 6, pair_from_e(real2(1, 0, 0, -2)), all);

  add(3, 1, pair_from_e(real2(0, 0, 0, 1)), all);
  add(3, 2, pair_from_e(real2(1, 1, 1, 1)), below);
  add(3, 3, pair_from_e(real2(0, 0, 0, -1)), all);
  add(3, 4, pair_from_e(real2(-1, -1, -1, -1)), below);
  add(3, 5, pair_from_e(real2(1, 0, 0, 0)), all);
  add(3, 6, pair_from_e(real2(1, 1, 1, 1)), above);
  add(3, 7, pair_from_e(real2(-1, 0, 0, 0)), all);
  add(3, 8, pair_from_e(real2(-1, -1, -1, -1)), above);
  add(3, 9, pair_from_e(real2(1, 1, 1, 1)), half);
  add(3, 10, pair_from_e(real2(-1, -1, -1, -1)), half);

  add(4, 1, kernel_pair(1.0, c, s), half);
  add(4, 2, kernel_pair(0.0, c, s), half);
  add(4, 3, kernel_pair(-1.0, c, s), half);

  add(5, 1, kernel_pair(-1.0, c, s), below);
  add(5, 2, kernel_pair(-1.0, 0.0, 1.0), below);
  add(5, 3, kernel_pair(1.0, c, s), below);
  add(5, 4, kernel_pair(1.0, 0.0, 1.0), below);
  add(5, 5, kernel_pair(0.0, c, s), below);
  add(5, 6, kernel_pair(0.0, 0.0, 1.0), below);
  add(5, 7, kernel_pair(0.0, 1.0, 0.0), below);

  add(6, 1, kernel_pair(-1.0, c, s), above);
  add(6, 2, kernel_pair(-1.0, 1.0, 0.0), above);
  add(6, 3, kernel_pair(1.0, c, s), above);
  add(6, 4, kernel_pair(1.0, 1.0, 0.0), above);
  add(6, 5, kernel_pair(0.0, c, s), above);
  add(6, 6, kernel_pair(0.0, 0.0, 1.0), above);
  add(6, 7, kernel_pair(0.0, 1.0, 0.0), above);
  return w;
}

}  // namespace levlab::aharonov_bohm
