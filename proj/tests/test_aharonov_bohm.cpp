#include <cmath>
#include <set>

#include "doctest.h"
#include "levlab/ab_tables.hpp"
#include "levlab/aharonov_bohm.hpp"
#include "levlab/error.hpp"

using namespace levlab;
using namespace levlab::aharonov_bohm;

namespace {

// Negative eigenvalues of a 2x2 Hermitian matrix from its trace and determinant.
int negative_eigs(const Mat2& h) {
  const double tr = h.trace().real();
  double det = h.determinant().real();
  if (std::abs(det) <= 1e-12 * (1.0 + tr * tr)) det = 0.0;
  if (det < 0.0) return 1;
  if (det > 0.0) return tr < 0.0 ? 2 : 0;
  return tr < 0.0 ? 1 : 0;
}

}  // namespace

TEST_SUITE("aharonov_bohm") {
  TEST_CASE("table structure") {
    const auto& rows = table_rows();
    CHECK(rows.size() == 35);
    std::set<std::string> ids;
    for (const auto& r : rows) {
      ids.insert(r.id());
      CHECK(r.table >= 1);
      CHECK(r.table <= 6);
      CHECK(r.count >= 0);
      CHECK(r.count <= 2);
    }
    CHECK(ids.size() == rows.size());
    CHECK(table_row(1, 1).condition == "D=0");
  }

  TEST_CASE("admissibility checks") {
    Mat2 c = Mat2::Identity(), d = Mat2::Identity();
    CHECK_NOTHROW(make_admissible_pair(c, d));
    Mat2 bad_d;
    bad_d << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(make_admissible_pair(c, bad_d), NotAdmissible);
    CHECK_THROWS_AS(make_admissible_pair(Mat2::Zero(), Mat2::Zero()), NotAdmissible);
    Mat2 u;
    u << 0.0, 1.0, 1.0, 0.0;
    const auto p = from_unitary(u);
    CHECK(admissibility_defect(p) < 1e-12);
    CHECK_THROWS_AS(from_unitary(2.0 * Mat2::Identity()), NonUnitaryInput);
  }

  TEST_CASE("stable expansion agrees with the literal formula where both are well conditioned") {
    for (const auto& w : representative_pairs()) {
      for (double a : w.alphas) {
        for (double lam : {1e-2, 0.5, 3.0, 50.0}) {
          try {
            const Mat2 lit = stilde(w.pair, a, lam);
            CHECK((lit - stilde_stable(w.pair, a, lam)).norm() < 1e-9 * std::max(1.0, lit.norm()));
          } catch (const NearSingularBracket&) {
          }
        }
      }
    }
  }

  TEST_CASE("S is unitary and its exact limits match the extrapolation ladder") {
    for (const auto& w : representative_pairs()) {
      for (double a : w.alphas) {
        for (double lam : {1e-6, 1e-2, 1.0, 1e2, 1e6}) {
          const Mat2 s = smatrix(w.pair, a, lam);
          CHECK((s.adjoint() * s - Mat2::Identity()).norm() < 1e-8);
        }
        const Limits lim = smatrix_limits(w.pair, a);
        INFO(w.row->id(), " alpha=", a);
        CHECK(lim.error_bound < 1e-5);
        CHECK((lim.s0.adjoint() * lim.s0 - Mat2::Identity()).norm() < 1e-10);
        CHECK((lim.sinf.adjoint() * lim.sinf - Mat2::Identity()).norm() < 1e-10);
      }
    }
    CHECK_THROWS_AS(smatrix(representative_pairs().front().pair, 1.2, 1.0), DomainError);
  }

  TEST_CASE("bound-state count equals the negative eigenvalues of CD*") {
    for (const auto& w : representative_pairs()) {
      const Mat2 h = w.pair.C * w.pair.D.adjoint();
      CHECK(bound_state_count(w.pair).count == negative_eigs(0.5 * (h + h.adjoint())));
      CHECK(bound_state_count(w.pair).count == w.row->count);
    }
  }

  TEST_CASE("every table row is reproduced by its witness pair") {
    for (const auto& w : representative_pairs()) {
      for (double a : w.alphas) {
        const auto c = classify_case(w.pair, a);
        const auto r = levinson_verify(w.pair, a, 1e-3);
        INFO(w.row->id(), " alpha=", a, " classified as ", c.row->id());
        CHECK(c.row == w.row);
        CHECK(r.passed);
        for (int s = 0; s < 3; ++s) CHECK(std::abs(r.computed.per_segment[s] - w.row->w[s].at(a)) < 1e-3);
        CHECK(std::lround(r.computed.total) == r.bound_states);
      }
    }
  }

  TEST_CASE("witnesses cover all three flux regimes where a row depends on alpha") {
    std::set<AlphaRegime> seen;
    for (const auto& w : representative_pairs()) {
      for (double a : w.alphas) seen.insert(regime_of(a));
    }
    CHECK(seen.size() == 3);
  }

  TEST_CASE("near-boundary cases are rejected rather than guessed") {
    // ell within (1e-12, 1e-10] of the ell = 0 boundary.
    const auto p = kernel_pair(5e-11, 1.0, 0.5);
    CHECK_THROWS_AS(classify_case(p, 0.3), DegenerateClassification);
    CHECK_NOTHROW(classify_case(kernel_pair(0.0, 1.0, 0.5), 0.3));
  }
}
