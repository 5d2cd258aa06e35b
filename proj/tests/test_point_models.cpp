#include <cmath>
#include <functional>

#include "doctest.h"
#include "levlab/error.hpp"
#include "levlab/point_models.hpp"
#include "levlab/specialfn.hpp"

using namespace levlab;
using namespace levlab::point_models;

namespace {

const double kGrid[] = {-3.0, -1.0, -0.1, 0.0, 0.1, 1.0, 3.0};

// Bound states are zeros of the S-matrix denominator continued to k = i kappa, kappa > 0.
// Each model's denominator is written out here and scanned on a grid in log kappa.
int pole_count(const std::function<double(double)>& den_at_ikappa) {
  int n = 0;
  double prev = den_at_ikappa(std::exp(-600.0));
  for (int i = 1; i <= 24000; ++i) {
    const double cur = den_at_ikappa(std::exp(-600.0 + 1200.0 * i / 24000.0));
    if ((cur < 0.0) != (prev < 0.0)) ++n;
    prev = cur;
  }
  return n;
}

int oracle_count(ModelKind kind, double a) {
  switch (kind) {
    case ModelKind::BabyHalfLine: return pole_count([a](double k) { return a + k; });
    case ModelKind::Delta1D: return pole_count([a](double k) { return 2.0 * k + a; });
    case ModelKind::DeltaPrime1D: return pole_count([a](double k) { return 2.0 + a * k; });
    case ModelKind::Point3D: return pole_count([a](double k) { return 4.0 * kPi * a + k; });
    case ModelKind::Point2D: {
      // log(i kappa) = log kappa + i pi/2 cancels the -i pi/2 of the denominator,
      // leaving 2 pi alpha + log(kappa / 2) - psi(1).
      const double shift = 2.0 * kPi * a - std::log(2.0) - specialfn::digamma(1.0);
      return pole_count([shift](double k) { return shift + std::log(k); });
    }
  }
  return -1;
}

}  // namespace

TEST_SUITE("point_models") {
  TEST_CASE("names round-trip") {
    for (ModelKind k : {ModelKind::BabyHalfLine, ModelKind::Delta1D, ModelKind::DeltaPrime1D, ModelKind::Point2D,
                        ModelKind::Point3D}) {
      CHECK(parse_model_kind(to_string(k)) == k);
    }
    CHECK_THROWS(parse_model_kind("dipole"));
  }

  TEST_CASE("baby model table") {
    struct Row {
      double alpha;
      double w[4];
      int n;
    } rows[] = {{-1.0, {0.0, 0.5, 0.5, 0.0}, 1}, {0.0, {-0.5, 0.0, 0.5, 0.0}, 0}, {1.0, {0.0, -0.5, 0.5, 0.0}, 0}};
    for (const auto& r : rows) {
      const auto w = winding::wind_phase(gamma_boundary({ModelKind::BabyHalfLine, r.alpha}));
      for (int s = 0; s < 4; ++s) CHECK(std::abs(w.per_segment[s] - r.w[s]) < 1e-6);
      CHECK(std::lround(w.total) == r.n);
    }
  }

  TEST_CASE("scattering values are unimodular with the stated limits") {
    for (ModelKind k : {ModelKind::BabyHalfLine, ModelKind::Delta1D, ModelKind::DeltaPrime1D, ModelKind::Point2D,
                        ModelKind::Point3D}) {
      for (double a : kGrid) {
        for (double lam : {1e-8, 0.3, 4.0, 1e6}) CHECK(std::abs(s_value({k, a}, lam)) == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
    CHECK(std::abs(s_value({ModelKind::Delta1D, 1.0}, 1e-14) - s_value({ModelKind::Delta1D, 1.0}, 0.0)) < 1e-6);
    CHECK(std::abs(s_value({ModelKind::Point3D, 1.0}, 1e20) - s_value({ModelKind::Point3D, 1.0}, kPosInf)) < 1e-6);
    CHECK_THROWS_AS(s_value({ModelKind::Delta1D, 1.0}, -1.0), DomainError);
  }

  TEST_CASE("bound-state counts agree with the pole oracle") {
    for (ModelKind k : {ModelKind::BabyHalfLine, ModelKind::Delta1D, ModelKind::DeltaPrime1D, ModelKind::Point2D,
                        ModelKind::Point3D}) {
      for (double a : kGrid) CHECK(bound_state_count({k, a}) == oracle_count(k, a));
    }
  }

  TEST_CASE("Levinson identity over the coupling grid, all five models") {
    for (ModelKind k : {ModelKind::BabyHalfLine, ModelKind::Delta1D, ModelKind::DeltaPrime1D, ModelKind::Point2D,
                        ModelKind::Point3D}) {
      for (double a : kGrid) {
        const auto r = levinson_verify({k, a}, 1e-3);
        INFO(to_string(k), " alpha=", a, " wind=", r.winding.total);
        CHECK(r.passed);
        CHECK(r.residual < 1e-3);
      }
    }
  }

  TEST_CASE("the 2D interaction always carries one bound state, even at extreme coupling") {
    for (double a : {-20.0, -3.0, 0.0, 3.0, 20.0}) {
      CHECK(winding::wind_phase(gamma_boundary({ModelKind::Point2D, a})).total == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}
