#include "levlab/aharonov_bohm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "levlab/error.hpp"
#include "levlab/specialfn.hpp"

namespace levlab::aharonov_bohm {
namespace {

constexpr double kExponentMerge = 1e-12;
constexpr double kCoeffZero = 1e-12;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("flux alpha must lie in (0,1)");
}

// Sum of c * lambda^e. Each term also carries the sum of absolute values of
// the products it came from, so cancellations to rounding level can be
// recognized as exact zeros.
struct Term {
  double e;
  Complex c;
  double mag;
};

struct GenPoly {
  std::vector<Term> terms;

  static GenPoly constant(Complex c) { return {{{0.0, c, std::abs(c)}}}; }
  static GenPoly monomial(double e, Complex c) { return {{{e, c, std::abs(c)}}}; }

  GenPoly& normalize() {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
    std::vector<Term> out;
    for (const Term& t : terms) {
      if (!out.empty() && std::abs(out.back().e - t.e) < kExponentMerge) {
        out.back().c += t.c;
        out.back().mag += t.mag;
      } else {
        out.push_back(t);
      }
    }
    terms.clear();
    for (const Term& t : out) {
      if (std::abs(t.c) > kCoeffZero * t.mag) terms.push_back(t);
    }
    return *this;
  }

  friend GenPoly operator+(const GenPoly& a, const GenPoly& b) {
    GenPoly out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out.normalize();
  }
  friend GenPoly operator-(const GenPoly& a, const GenPoly& b) { return a + b * Complex(-1.0); }
  friend GenPoly operator*(const GenPoly& a, Complex s) {
    GenPoly out = a;
    for (Term& t : out.terms) {
      t.c *= s;
      t.mag *= std::abs(s);
    }
    return out.normalize();
  }
  friend GenPoly operator*(const GenPoly& a, const GenPoly& b) {
    GenPoly out;
    for (const Term& x : a.terms) {
      for (const Term& y : b.terms) out.terms.push_back({x.e + y.e, x.c * y.c, x.mag * y.mag});
    }
    return out.normalize();
  }

  // Value times lambda^{-shift_exponent}, computed in log space.
  Complex eval_scaled(double log_lambda, double log_shift) const {
    Complex acc = 0.0;
    for (const Term& t : terms) acc += t.c * std::exp(t.e * log_lambda - log_shift);
    return acc;
  }
};

struct Expansion {
  std::array<std::array<GenPoly, 2>, 2> num;  // prefactor included
  GenPoly den;
};

struct Constants {
  Complex a;
  Complex b;
  double kappa;
  Complex prefactor;
};

Constants constants(double alpha) {
  Constants k;
  k.a = std::exp(specialfn::lngamma(1.0 - alpha) - kI * kPi * alpha / 2.0 -
                 alpha * std::log(2.0));
  k.b = std::exp(specialfn::lngamma(alpha) - kI * kPi * (1.0 - alpha) / 2.0 -
                 (1.0 - alpha) * std::log(2.0));
  k.kappa = kPi / (2.0 * std::sin(kPi * alpha));
  k.prefactor = 2.0 * kI * std::sin(kPi * alpha);
  return k;
}

Expansion expand(const AdmissiblePair& pair, double alpha) {
  check_alpha(alpha);
  const Constants k = constants(alpha);
  const Mat2& C = pair.C;
  const Mat2& D = pair.D;
  const GenPoly u = GenPoly::monomial(2.0 * alpha, k.a * k.a);
  const GenPoly v = GenPoly::monomial(2.0 - 2.0 * alpha, k.b * k.b);
  auto c = [&](int i, int j) { return GenPoly::constant(k.kappa * C(i, j)); };
  // Bracket X = D diag(u, v) + kappa C.
  const GenPoly x11 = u * D(0, 0) + c(0, 0);
  const GenPoly x12 = v * D(0, 1) + c(0, 1);
  const GenPoly x21 = u * D(1, 0) + c(1, 0);
  const GenPoly x22 = v * D(1, 1) + c(1, 1);
  Expansion ex;
  ex.den = x11 * x22 - x12 * x21;
  const std::array<std::array<GenPoly, 2>, 2> adj = {
      {{x22, x12 * Complex(-1.0)}, {x21 * Complex(-1.0), x11}}};
  const GenPoly l1l2 = GenPoly::monomial(1.0, k.a * k.b);
  const std::array<std::array<GenPoly, 2>, 2> outer = {{{u, l1l2}, {l1l2, v}}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const GenPoly n = adj[i][0] * D(0, j) + adj[i][1] * D(1, j);
      const double sign = j == 0 ? 1.0 : -1.0;
      ex.num[i][j] = outer[i][j] * n * (k.prefactor * sign);
    }
  }
  return ex;
}

Mat2 evaluate(const Expansion& ex, double lambda) {
  Mat2 out = Mat2::Zero();
  if (ex.den.terms.empty()) {
    throw NotAdmissible("S~ expansion: the bracket determinant vanishes identically");
  }
  const double ll = std::log(lambda);
  double shift = -std::numeric_limits<double>::infinity();
  for (const Term& t : ex.den.terms) shift = std::max(shift, t.e * ll + std::log(t.mag));
  const Complex den = ex.den.eval_scaled(ll, shift);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out(i, j) = ex.num[i][j].eval_scaled(ll, shift) / den;
  }
  return out;
}

// Leading coefficient ratio as lambda -> 0 (toward_zero) or +inf.
Mat2 leading_limit(const Expansion& ex, bool toward_zero) {
  if (ex.den.terms.empty()) {
    throw NotAdmissible("S~ expansion: the bracket determinant vanishes identically");
  }
  const Term& lead = toward_zero ? ex.den.terms.front() : ex.den.terms.back();
  Mat2 out = Mat2::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (const Term& t : ex.num[i][j].terms) {
        const double gap = toward_zero ? lead.e - t.e : t.e - lead.e;
        if (gap > kExponentMerge) {
          throw ExtrapolationUnstable("S~ expansion: numerator dominates the bracket determinant");
        }
        if (std::abs(gap) <= kExponentMerge) out(i, j) += t.c / lead.c;
      }
    }
  }
  return out;
}

Mat2 free_part(double alpha) {
  Mat2 out = Mat2::Zero();
  out(0, 0) = std::exp(-kI * kPi * alpha);
  out(1, 1) = std::exp(kI * kPi * alpha);
  return out;
}

// Aitken on the last three entries of a geometric ladder, entrywise.
Mat2 aitken(const std::vector<Mat2>& seq) {
  const std::size_t n = seq.size();
  Mat2 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex x0 = seq[n - 3](i, j), x1 = seq[n - 2](i, j), x2 = seq[n - 1](i, j);
      const Complex d2 = x2 - 2.0 * x1 + x0;
      out(i, j) = std::abs(d2) < 1e-300 ? x2 : x2 - (x2 - x1) * (x2 - x1) / d2;
    }
  }
  return out;
}

Mat2 ladder_limit(const AdmissiblePair& pair, double alpha, bool toward_zero) {
  const Expansion ex = expand(pair, alpha);
  std::vector<Mat2> seq;
  for (int k = 4; k <= 8; ++k) {
    const double lambda = toward_zero ? std::pow(10.0, -k) : std::pow(10.0, k);
    seq.push_back(evaluate(ex, lambda));
  }
  double prev_step = -1.0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const double step = (seq[i] - seq[i - 1]).norm();
    if (prev_step > 1e-14 && step > 10.0 * prev_step) {
      throw ExtrapolationUnstable("smatrix_limits: ladder differences grow");
    }
    prev_step = step;
  }
  std::vector<Mat2> early(seq.begin(), seq.end() - 1);
  const Mat2 last = aitken(seq);
  const Mat2 before = aitken(early);
  if ((last - before).norm() > 10.0 * (seq[3] - seq[2]).norm() + 1e-12) {
    throw ExtrapolationUnstable("smatrix_limits: successive Aitken estimates diverge");
  }
  return last;
}

}  // namespace

double admissibility_defect(const AdmissiblePair& pair) {
  const Mat2 cd = pair.C * pair.D.adjoint();
  const double scale = std::max(1.0, pair.C.norm() * pair.D.norm());
  const double herm = (cd - cd.adjoint()).norm() / scale;
  const Mat2 g = pair.C * pair.C.adjoint() + pair.D * pair.D.adjoint();
  const double gscale = std::max(1e-300, g.norm() * g.norm());
  const double det = std::abs(g.determinant()) / gscale;
  return std::max(herm, det > 1e-10 ? 0.0 : 1e-10 - det);
}

AdmissiblePair make_admissible_pair(const Mat2& C, const Mat2& D) {
  AdmissiblePair p{C, D};
  const Mat2 cd = C * D.adjoint();
  const double scale = std::max(1.0, C.norm() * D.norm());
  if ((cd - cd.adjoint()).norm() > 1e-10 * scale) {
    throw NotAdmissible("admissible pair: CD* is not self-adjoint");
  }
  const Mat2 g = C * C.adjoint() + D * D.adjoint();
  if (!(std::abs(g.determinant()) > 1e-10)) {
    throw NotAdmissible("admissible pair: det(CC* + DD*) vanishes");
  }
  return p;
}

AdmissiblePair from_unitary(const Mat2& U) {
  if ((U.adjoint() * U - Mat2::Identity()).norm() > 1e-10) {
    throw NonUnitaryInput("from_unitary: U is not unitary");
  }
  AdmissiblePair p;
  p.C = 0.5 * (Mat2::Identity() - U);
  p.D = 0.5 * kI * (Mat2::Identity() + U);
  return p;
}

Mat2 stilde(const AdmissiblePair& pair, double alpha, double lambda) {
  check_alpha(alpha);
  if (!(lambda > 0.0 && std::isfinite(lambda))) throw DomainError("stilde: requires 0 < lambda < inf");
  const Constants k = constants(alpha);
  const Complex l1 = k.a * std::pow(lambda, alpha);
  const Complex l2 = k.b * std::pow(lambda, 1.0 - alpha);
  Mat2 L = Mat2::Zero();
  L(0, 0) = l1;
  L(1, 1) = l2;
  Mat2 LJ = L;
  LJ(1, 1) = -l2;
  const Mat2 bracket = pair.D * L * L + k.kappa * pair.C;
  Eigen::JacobiSVD<Mat2> svd(bracket);
  const auto sv = svd.singularValues();
  if (!(sv(1) > 0.0) || sv(0) / sv(1) > 1e12) {
    throw NearSingularBracket("stilde: bracket condition number exceeds 1e12 at lambda=" +
                              std::to_string(lambda));
  }
  return k.prefactor * L * bracket.partialPivLu().solve(pair.D * LJ);
}

Mat2 stilde_stable(const AdmissiblePair& pair, double alpha, double lambda) {
  const Expansion ex = expand(pair, alpha);
  if (lambda == 0.0) return leading_limit(ex, true);
  if (lambda == kPosInf) return leading_limit(ex, false);
  if (!(lambda > 0.0)) throw DomainError("stilde: requires lambda >= 0");
  return evaluate(ex, lambda);
}

Mat2 smatrix(const AdmissiblePair& pair, double alpha, double lambda) {
  return free_part(alpha) + stilde_stable(pair, alpha, lambda);
}

Limits smatrix_limits(const AdmissiblePair& pair, double alpha) {
  const Expansion ex = expand(pair, alpha);
  Limits out;
  out.stilde0 = leading_limit(ex, true);
  out.stildeinf = leading_limit(ex, false);
  out.s0 = free_part(alpha) + out.stilde0;
  out.sinf = free_part(alpha) + out.stildeinf;
  try {
    const Limits ladder = smatrix_limits_extrapolated(pair, alpha);
    out.error_bound = std::max((ladder.s0 - out.s0).norm(), (ladder.sinf - out.sinf).norm());
  } catch (const ExtrapolationUnstable&) {
    out.error_bound = std::max((evaluate(ex, 1e-8) - out.stilde0).norm(),
                               (evaluate(ex, 1e8) - out.stildeinf).norm());
  }
  return out;
}

Limits smatrix_limits_extrapolated(const AdmissiblePair& pair, double alpha) {
  Limits out;
  out.stilde0 = ladder_limit(pair, alpha, true);
  out.stildeinf = ladder_limit(pair, alpha, false);
  out.s0 = free_part(alpha) + out.stilde0;
  out.sinf = free_part(alpha) + out.stildeinf;
  return out;
}

boundary::QuadrantBoundary gamma_boundary(const AdmissiblePair& pair, double alpha) {
  check_alpha(alpha);
  const Limits lim = smatrix_limits(pair, alpha);
  const CMatrix id = CMatrix::Identity(2, 2);
  auto threshold_side = [alpha](const Mat2& st) {
    return [alpha, st](double x) -> CMatrix {
      Mat2 phi = Mat2::Zero();
      Mat2 tilde = Mat2::Zero();
      phi(0, 0) = specialfn::ab_phi_minus(0, alpha, x);
      phi(1, 1) = specialfn::ab_phi_minus(-1, alpha, x);
      tilde(0, 0) = specialfn::ab_phi_tilde(0, alpha, x);
      tilde(1, 1) = specialfn::ab_phi_tilde(-1, alpha, x);
      return phi + tilde * st;
    };
  };
  const Expansion ex = expand(pair, alpha);
  const Mat2 fp = free_part(alpha);
  auto g2 = [ex, fp](double lambda) -> CMatrix { return fp + evaluate(ex, lambda); };
  auto g4 = [id](double) { return id; };
  const CMatrix s0 = lim.s0;
  const CMatrix sinf = lim.sinf;
  return boundary::QuadrantBoundary::make(2, threshold_side(lim.stilde0), id, s0, g2, s0, sinf,
                                          threshold_side(lim.stildeinf), id, sinf, g4, id, id);
}

BoundStateCount bound_state_count(const AdmissiblePair& pair) {
  const Mat2 cd = pair.C * pair.D.adjoint();
  const Mat2 h = 0.5 * (cd + cd.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat2> es(h);
  BoundStateCount out;
  for (int i = 0; i < 2; ++i) {
    const double ev = es.eigenvalues()(i);
    if (std::abs(ev) <= 1e-12) {
      out.near_zero_flag = out.near_zero_flag || ev != 0.0;
    } else if (ev < 0.0) {
      ++out.count;
    }
  }
  return out;
}

}  // namespace levlab::aharonov_bohm
