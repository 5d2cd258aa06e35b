#include <cmath>

#include "doctest.h"
#include "levlab/chern_pairing.hpp"
#include "levlab/error.hpp"

using namespace levlab;
using namespace levlab::chern;

namespace {

SphereManifold standard() { return make_sphere(std::polar(1.0, -kPi / 3.0), std::polar(1.0, kPi / 3.0)); }

}  // namespace

TEST_SUITE("chern") {
  TEST_CASE("pairing constants") {
    CHECK(std::abs(connes_constant(1) - Complex(0.0, -1.0 / (2.0 * kPi))) < 1e-15);
    CHECK(std::abs(connes_constant(2) - Complex(0.0, -1.0 / (2.0 * kPi))) < 1e-15);
    CHECK(std::abs(connes_constant(3) - Complex(-1.0 / (24.0 * kPi * kPi), 0.0)) < 1e-15);
    CHECK(std::abs(connes_constant(4) - 1.0 / (2.0 * std::pow(2.0 * kPi * kI, 2))) < 1e-15);
    CHECK_THROWS_AS(connes_constant(-1), InvalidInput);
  }

  TEST_CASE("the 1-trace pairing is minus the winding") {
    for (int m : {-2, 1, 2, 3}) CHECK(eta1_pairing(winding::zeta_loop(m)) == doctest::Approx(-m).epsilon(1e-6));
  }

  TEST_CASE("manifold validation") {
    CHECK_THROWS_AS(make_sphere(Complex(0.5, -0.5), Complex(0.0, 1.0)), InvalidInput);
    CHECK_THROWS_AS(make_sphere(Complex(0.0, 1.0), Complex(0.0, 1.0)), InvalidInput);
    GridSpec3D g;
    g.n_rho = 3;
    CHECK_THROWS_AS(three_form_integral(standard(), 0.5, g), InvalidInput);
    g.n_rho = 8;
    g.fd_step = 0.75;
    CHECK_THROWS_AS(three_form_integral(standard(), 0.5, g), InvalidInput);
  }

  TEST_CASE("boundary maps over the sphere are unitary and closed") {
    const auto X = standard();
    for (double rho : {0.0, 0.3, 0.5, 0.9, 1.0}) {
      for (double phi : {0.0, 1.0, 4.0}) {
        const CMatrix u = u_of(rho, phi, X);
        CHECK((u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm() < 1e-12);
        CHECK(boundary::corner_mismatch(gamma_of(rho, phi, 0.5, X)) < 1e-6);
        for (double xi : {0.0, 0.7, 1.5, 2.2, 3.9}) {
          const CMatrix g = gmap(rho, phi, xi, 0.5, X);
          CHECK((g.adjoint() * g - CMatrix::Identity(g.rows(), g.cols())).norm() < 1e-8);
        }
        CHECK((gmap(rho, phi, 0.0, 0.5, X) - gmap(rho, phi, 4.0, 0.5, X)).norm() < 1e-6);
      }
    }
  }

  TEST_CASE("coarse grid already gives unit magnitude; orientation flips the sign") {
    GridSpec3D g;
    g.n_rho = g.n_phi = g.n_xi = 8;
    const auto r = three_form_integral(standard(), 0.5, g);
    CHECK(std::abs(std::abs(r.value) - 1.0) < 0.02);
    CHECK(std::abs(r.imag_part) < 1e-3);
    const auto swapped = three_form_integral(standard(), 0.5, g, true);
    CHECK(swapped.value == doctest::Approx(-r.value).epsilon(1e-12));
  }

  TEST_CASE("parallel kernel reproduces the serial reference") {
    GridSpec3D g;
    g.n_rho = g.n_phi = g.n_xi = 6;
    const auto X = standard();
    auto family = [&X](double rho, double phi) { return gamma_of(rho, phi, 0.5, X); };
    const auto a = three_form_integral_serial(family, g);
    const auto b = three_form_integral(family, g);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-13));
    CHECK(a.cells == b.cells);
  }

  TEST_CASE("ladder reports non-convergence when asked to insist") {
    GridSpec3D g;
    g.n_rho = g.n_phi = g.n_xi = 4;
    CHECK_THROWS_AS(convergence_ladder(standard(), 0.5, g, 2, 1e-12, true), NonConvergence);
    const auto l = convergence_ladder(standard(), 0.5, g, 2, 1e-12, false);
    CHECK(l.steps.size() == 2);
    CHECK_FALSE(l.converged);
  }
}
