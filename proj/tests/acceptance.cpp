// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levlab/ab_tables.hpp"
#include "levlab/aharonov_bohm.hpp"
#include "levlab/boundary.hpp"
#include "levlab/chern_pairing.hpp"
#include "levlab/error.hpp"
#include "levlab/point_models.hpp"
#include "levlab/potentials.hpp"
#include "levlab/schrodinger.hpp"
#include "levlab/winding.hpp"

using namespace levlab;
namespace pm = levlab::point_models;
namespace ab = levlab::aharonov_bohm;
namespace sc = levlab::schrodinger;
namespace P = levlab::potentials;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) note << "; ";
      ok = false;
      note << what;
    }
  }
};

int failures = 0;

void criterion(const char* id, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    std::ostringstream s;
    s << "runtime " << secs << " s over budget " << budget_s << " s";
    out.require(false, s.str());
  }
  if (!out.ok) ++failures;
  std::printf("%s %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, secs,
              out.note.str().empty() ? "" : "  ", out.note.str().c_str());
  std::fflush(stdout);
}

CMatrix random_unitary(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

// Negative eigenvalues of the Hermitian part of C D*.
int negative_eigs(const Mat2& c, const Mat2& d) {
  const Mat2 h = c * d.adjoint();
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (h + h.adjoint()));
  int n = 0;
  for (int i = 0; i < 2; ++i) n += es.eigenvalues()(i) < -1e-10 ? 1 : 0;
  return n;
}

double unitarity(const Mat2& s) { return (s.adjoint() * s - Mat2::Identity()).norm(); }

void ac1(Outcome& o) {
  const double alphas[3] = {-1.0, 0.0, 1.0};
  const double table[3][4] = {{0, 0.5, 0.5, 0}, {-0.5, 0, 0.5, 0}, {0, -0.5, 0.5, 0}};
  const int counts[3] = {1, 0, 0};
  for (int i = 0; i < 3; ++i) {
    const pm::PointModel m{pm::ModelKind::BabyHalfLine, alphas[i]};
    const auto w = winding::wind_phase(pm::gamma_boundary(m));
    for (int s = 0; s < 4; ++s) {
      o.require(std::abs(w.per_segment[s] - table[i][s]) < 1e-6,
                "alpha=" + std::to_string(alphas[i]) + " segment " + std::to_string(s + 1));
    }
    o.require(std::lround(w.total) == counts[i], "alpha=" + std::to_string(alphas[i]) + " total");
    o.require(pm::bound_state_count(m) == counts[i], "bound-state count");
  }
}

void ac2(Outcome& o) {
  const double grid[] = {-3, -1, -0.1, 0, 0.1, 1, 3};
  const pm::ModelKind kinds[] = {pm::ModelKind::BabyHalfLine, pm::ModelKind::Delta1D,
                                 pm::ModelKind::DeltaPrime1D, pm::ModelKind::Point2D,
                                 pm::ModelKind::Point3D};
  double worst = 0.0;
  for (auto k : kinds) {
    for (double c : grid) {
      const pm::PointModel m{k, c};
      const auto r = pm::levinson_verify(m, 1e-3);
      worst = std::max(worst, r.residual);
      o.require(r.passed && r.residual < 1e-3, pm::to_string(k) + " coupling " + std::to_string(c));
      if (k == pm::ModelKind::Point2D) o.require(std::lround(r.winding.total) == 1, "point2d not 1");
    }
  }
  o.note << "worst residual " << worst;
}

void ac3(Outcome& o) {
  std::set<std::string> covered;
  double worst = 0.0;
  int checks = 0;
  for (const auto& w : ab::representative_pairs()) {
    const int n_neg = negative_eigs(w.pair.C, w.pair.D);
    o.require(n_neg == w.row->count, w.row->id() + " CD* count");
    for (double a : w.alphas) {
      const auto r = ab::levinson_verify(w.pair, a, 1e-3);
      for (int j = 0; j < 3; ++j) {
        const double d = std::abs(r.computed.per_segment[j] - w.row->w[j].at(a));
        worst = std::max(worst, d);
        o.require(d < 1e-3, w.row->id() + " w" + std::to_string(j + 1));
      }
      o.require(std::abs(r.computed.total - n_neg) < 1e-3, w.row->id() + " total");
      ++checks;
    }
    covered.insert(w.row->id());
  }
  o.require(covered.size() == ab::table_rows().size(), "not every row has a witness");
  if (o.ok) o.note << covered.size() << " rows, " << checks << " row/alpha cases, worst " << worst;
}

void ac4(Outcome& o) {
  const std::pair<double, double> ab_pairs[] = {{2, 1}, {1, 2}, {1, 3}};
  for (auto [a, b] : ab_pairs) {
    const auto loop = winding::phi_ab_loop(a, b);
    const int p0 = winding::minimal_p(a, b);
    // p = 0 is the unregularized integral.
    const double w0 = p0 == 0 ? winding::wind_analytic(loop).value : winding::wind_regularized(loop, p0).value;
    o.require(std::abs(w0 - 1.0) < 1e-3, "phi_ab minimal p");
    for (int q : {p0 + 1, p0 + 2}) {
      const double wq = winding::wind_regularized(loop, q).value;
      o.require(std::abs(wq - w0) < 1e-3, "phi_ab q=" + std::to_string(q));
    }
  }
  std::mt19937 rng(20240611);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CMatrix u = random_unitary(2 + i % 3, rng);
    for (int p : {1, 2, 3}) {
      const Complex x = winding::det_p(u, p);
      worst = std::max(worst, std::abs(x - winding::det_p_direct(u, p)) / std::max(1.0, std::abs(x)));
    }
  }
  o.require(worst < 1e-12, "det_p mismatch");
  o.note << "det_p worst relative " << worst;
}

void ac5(Outcome& o) {
  chern::GridSpec3D g;
  g.n_rho = g.n_phi = g.n_xi = 8;
  const auto first = chern::make_sphere(std::polar(1.0, -kPi / 3.0), std::polar(1.0, kPi / 3.0));
  const auto l1 = chern::convergence_ladder(first, 0.5, g, 4, 0.02);
  const double i1 = l1.final_value;
  o.require(std::abs(std::abs(i1) - 1.0) < 0.02, "|I| off 1");
  const auto second = chern::make_sphere(std::polar(1.0, -2.0), std::polar(1.0, 0.5));
  const auto l2 = chern::convergence_ladder(second, 0.5, g, 4, 0.02);
  const double i2 = l2.final_value;
  o.require(std::abs(i2 - i1) < 0.02, "second eigenvalue pair disagrees");
  o.note << "I = " << i1 << " (sign " << (i1 < 0 ? "-" : "+") << "), second choice " << i2
         << ", final grid n=" << l1.steps.back().grid.n_rho;
}

void ac6(Outcome& o) {
  const auto v = P::sech2_1d(2.0);
  for (double k : {0.05, 0.5, 2.0, 10.0}) {
    const Mat2 s = sc::jost_smatrix_1d(v, k);
    o.require(unitarity(s) < 1e-8, "sech2 unitarity");
    // Reflectionless: in the even/odd basis S is t times the identity.
    const double refl = std::abs(s(0, 0) - s(1, 1)) / 2.0 + std::abs(s(0, 1));
    o.require(refl < 1e-6, "sech2 reflection");
  }
  const auto r = sc::levinson_1d(v, 1e-2);
  o.require(r.s0.cls == sc::S0Class::Exceptional, "sech2 not exceptional");
  o.require(r.bound_states == 1 && std::abs(r.wind_s - 1.0) < 1e-2, "sech2 Wind(S) != 1");

  int generic = 0;
  for (double d : {1.0, 4.0, 9.0, 15.0, 25.0}) {
    const auto w = sc::levinson_1d(P::square_well_1d(d, 2.0), 1e-2);
    if (w.s0.cls != sc::S0Class::Generic) continue;
    ++generic;
    o.require(std::abs(w.wind_s - (w.bound_states - 0.5)) < 1e-2,
              "square well depth " + std::to_string(d));
  }
  o.require(generic >= 3, "too few generic wells in the scan");
  o.note << "sech2 Wind(S) " << r.wind_s << ", " << generic << " generic wells";
}

void ac7(Outcome& o) {
  const auto v = P::gaussian_3d(5.0, 1.0);
  int n = 0;
  for (int l = 0; l <= 6; ++l) n += (2 * l + 1) * sc::bound_count_3d(v, l);
  o.require(n >= 1 && n <= 3, "node count outside 1..3");
  sc::Levinson3DOptions opt;
  opt.p = 2;
  const auto r2 = sc::regularized_levinson_3d(v, opt);
  opt.p = 3;
  const auto r3 = sc::regularized_levinson_3d(v, opt);
  o.require(r2.bound_total == n, "report count differs from the node oracle");
  o.require(std::abs(r2.lhs - n) < 5e-2, "|LHS2 - N|");
  o.require(std::abs(r2.lhs - r3.lhs) < 1e-2, "|LHS2 - LHS3|");
  o.require(!r2.truncation_warning, "partial-wave truncation");
  o.note << "N=" << n << " LHS2=" << r2.lhs << " LHS3=" << r3.lhs;
}

void ac8(Outcome& o) {
  std::vector<boundary::QuadrantBoundary> qbs;
  for (auto k : {pm::ModelKind::BabyHalfLine, pm::ModelKind::Delta1D, pm::ModelKind::DeltaPrime1D,
                 pm::ModelKind::Point2D, pm::ModelKind::Point3D}) {
    for (double c : {-1.0, 0.0, 1.0}) qbs.push_back(pm::gamma_boundary({k, c}));
  }
  for (const auto& w : ab::representative_pairs()) qbs.push_back(ab::gamma_boundary(w.pair, w.alphas.front()));
  const auto v = P::square_well_1d(5.0, 2.0);
  qbs.push_back(sc::gamma_boundary_1d(v, sc::s0_classify(v)));

  double u = 0.0, c = 0.0, rev = 0.0;
  for (const auto& qb : qbs) {
    u = std::max(u, boundary::unitarity_defect(qb, 32));
    c = std::max(c, boundary::corner_mismatch(qb));
    const auto f = winding::wind_phase(qb);
    const auto b = winding::wind_phase(qb.reversed());
    rev = std::max(rev, std::abs(f.total + b.total));
    for (int s = 0; s < 4; ++s) rev = std::max(rev, std::abs(f.per_segment[s] + b.per_segment[s]));
  }
  o.require(u < 1e-8, "unitarity");
  o.require(c < 1e-6, "corner compatibility");
  o.require(rev < 1e-6, "orientation reversal");
  for (int m = -3; m <= 3; ++m) {
    const double w = winding::wind_phase(winding::loop_as_boundary(winding::zeta_loop(m))).total;
    o.require(std::abs(w - m) < 1e-9, "Wind(zeta_" + std::to_string(m) + ")");
  }
  o.note << qbs.size() << " quadruples; unitarity " << u << ", corners " << c << ", reversal " << rev;
}

}  // namespace

int main() {
  criterion("AC1 baby-model table", 1.0, ac1);
  criterion("AC2 point-interaction models", 10.0, ac2);
  criterion("AC3 Aharonov-Bohm tables", 120.0, ac3);
  criterion("AC4 regularization and det_p", 60.0, ac4);
  criterion("AC5 higher-degree pairing", 600.0, ac5);
  criterion("AC6 line Schrodinger", 120.0, ac6);
  criterion("AC7 regularized radial Levinson", 300.0, ac7);
  criterion("AC8 property suites", 120.0, ac8);
  std::printf("%s: %d failure(s)\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
