#include <cmath>

#include "doctest.h"
#include "levlab/error.hpp"
#include "levlab/potentials.hpp"
#include "levlab/schrodinger.hpp"

using namespace levlab;
using namespace levlab::schrodinger;
namespace P = levlab::potentials;

namespace {

double unitarity(const Mat2& s) { return (s.adjoint() * s - Mat2::Identity()).norm(); }

// Square well of depth v0 on |x| < a: count the even and odd matching roots
// q tan(qa) = kappa, -q cot(qa) = kappa over E in (-v0, 0), in continuous form.
int square_well_shooting_count(double v0, double a) {
  int n = 0;
  auto even = [&](double e) {
    const double q = std::sqrt(v0 + e), kappa = std::sqrt(-e);
    return q * std::sin(q * a) - kappa * std::cos(q * a);
  };
  auto odd = [&](double e) {
    const double q = std::sqrt(v0 + e), kappa = std::sqrt(-e);
    return q * std::cos(q * a) + kappa * std::sin(q * a);
  };
  const int steps = 200000;
  double pe = even(-v0 * (1 - 1e-12)), po = odd(-v0 * (1 - 1e-12));
  for (int i = 1; i < steps; ++i) {
    const double e = -v0 + v0 * i / steps;
    const double ce = even(e), co = odd(e);
    if ((ce < 0) != (pe < 0)) ++n;
    if ((co < 0) != (po < 0)) ++n;
    pe = ce;
    po = co;
  }
  return n;
}

// 3D square well, l = 0: tan(kR + delta) = (k / K) tan(KR), K = sqrt(k^2 + v0).
double square_well_delta0(double v0, double r, double k) {
  const double big_k = std::sqrt(k * k + v0);
  double d = std::atan(k / big_k * std::tan(big_k * r)) - k * r;
  d = std::remainder(d, kPi);
  if (d <= -0.5 * kPi) d += kPi;
  return d;
}

}  // namespace

TEST_SUITE("schrodinger") {
  TEST_CASE("free line gives the identity and the exceptional class") {
    const auto v = P::zero_1d();
    for (double k : {0.05, 1.0, 20.0}) CHECK((jost_smatrix_1d(v, k) - Mat2::Identity()).norm() < 1e-8);
    const auto c = s0_classify(v);
    CHECK(c.cls == S0Class::Exceptional);
    CHECK((c.s0 - Mat2::Identity()).norm() < 1e-8);
    CHECK(bound_count_1d(v) == 0);
    const auto r = levinson_1d(v, 1e-2);
    CHECK(r.passed);
    CHECK(r.wind_s == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(jost_smatrix_1d(v, 0.0), DomainError);
  }

  TEST_CASE("sech^2 well matches the analytic Jost solution") {
    const auto v = P::sech2_1d(2.0);
    for (double k : {0.05, 0.3, 1.0, 2.5, 7.0, 20.0}) {
      const Mat2 s = jost_smatrix_1d(v, k);
      const Complex t = (k + kI) / (k - kI);
      CHECK(unitarity(s) < 1e-8);
      CHECK(std::abs(s(0, 1)) < 1e-6);
      CHECK(std::abs(s(1, 0)) < 1e-6);
      CHECK(std::abs(s(0, 0) - t) < 1e-7);
      CHECK(std::abs(s(1, 1) - t) < 1e-7);
    }
    CHECK(s0_classify(v).cls == S0Class::Exceptional);
    CHECK(bound_count_1d(v) == 1);
    const auto r = levinson_1d(v, 1e-2);
    CHECK(r.passed);
    CHECK(r.wind_s == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(std::abs(r.gamma1_part) < 1e-6);
  }

  TEST_CASE("unitarity across potentials and momenta") {
    for (const auto& v : {P::square_well_1d(5.0, 2.0), P::gaussian_1d(3.0, 1.0), P::gaussian_1d(-2.0, 0.7),
                          P::sech2_1d(0.7)}) {
      for (double k = 0.05; k <= 20.0; k *= 1.6) CHECK(unitarity(jost_smatrix_1d(v, k)) < 1e-8);
    }
  }

  TEST_CASE("square well tends to the identity at high momentum") {
    const auto v = P::square_well_1d(5.0, 2.0);
    double prev = 1e9;
    for (double k : {10.0, 20.0, 40.0, 80.0}) {
      const double dev = (jost_smatrix_1d(v, k) - Mat2::Identity()).norm();
      CHECK(dev < prev);
      CHECK(dev * k < 12.0);
      prev = dev;
    }
  }

  TEST_CASE("half-bound thresholds of the square well sit at sqrt(V0) a = n pi / 2") {
    const double a = 1.0;
    const auto th = threshold_depths([a](double d) { return P::square_well_1d(d, 2.0 * a); }, 0.5, 30.0, 60);
    REQUIRE(th.size() == 3);
    for (int n = 1; n <= 3; ++n) CHECK(std::sqrt(th[n - 1]) * a == doctest::Approx(n * kPi / 2.0).epsilon(1e-9));
  }

  TEST_CASE("bound counts agree with the shooting search") {
    for (double v0 : {0.5, 3.0, 5.0, 12.0, 40.0}) {
      INFO("depth ", v0);
      CHECK(bound_count_1d(P::square_well_1d(v0, 2.0)) == square_well_shooting_count(v0, 1.0));
    }
  }

  TEST_CASE("classification and Levinson identity across both classes of square wells") {
    const auto th = threshold_depths([](double d) { return P::square_well_1d(d, 2.0); }, 0.5, 30.0, 60);
    std::vector<std::pair<double, S0Class>> family;
    for (double d : th) family.emplace_back(d, S0Class::Exceptional);
    family.emplace_back(1.0, S0Class::Generic);
    family.emplace_back(5.0, S0Class::Generic);
    family.emplace_back(15.0, S0Class::Generic);
    family.emplace_back(25.0, S0Class::Generic);
    for (const auto& [d, cls] : family) {
      const auto r = levinson_1d(P::square_well_1d(d, 2.0), 1e-2);
      INFO("depth ", d, " wind(S) ", r.wind_s, " N ", r.bound_states);
      CHECK(r.s0.cls == cls);
      CHECK(r.passed);
      CHECK(std::abs(r.gamma1_part - (cls == S0Class::Generic ? 0.5 : 0.0)) < 1e-6);
      if (cls == S0Class::Generic) {
        CHECK(std::abs(std::abs(r.s0.det_extrapolated) - 1.0) < 0.1);
        CHECK(r.s0.det_extrapolated.real() < 0.0);
      }
    }
  }

  TEST_CASE("cutoff growth leaves line scattering unchanged") {
    const auto v = P::sech2_1d(2.0);
    const auto w = P::with_cutoff(v, 2.0 * v.cutoff);
    for (double k : {0.1, 1.0, 5.0}) CHECK((jost_smatrix_1d(v, k) - jost_smatrix_1d(w, k)).norm() < 1e-3);
    CHECK(P::tail_magnitude(v) < 1e-12);
  }

  TEST_CASE("radial phase shifts: free, analytic square well, centrifugal decay") {
    for (int l : {0, 1, 4}) CHECK(std::abs(phase_shift_principal(P::zero_3d(), 2.0, l)) < 1e-9);
    const auto well = P::square_well_3d(6.0, 1.0);
    for (double k : {0.1, 0.8, 2.0, 6.0}) {
      double d = phase_shift_principal(well, k * k, 0) - square_well_delta0(6.0, 1.0, k);
      d = std::remainder(d, kPi);
      CHECK(std::abs(d) < 1e-7);
    }
    const auto g = P::gaussian_3d(5.0, 1.0);
    double prev = 10.0;
    for (int l = 1; l <= 12; ++l) {
      const double d = std::abs(phase_shift(g, 1.0, l));
      CHECK(d < prev);
      prev = d;
      if (l >= 6) CHECK(d < 1e-6);
    }
    CHECK_THROWS_AS(phase_shift(g, 0.0, 0), DomainError);
  }

  TEST_CASE("radial node counts") {
    CHECK(bound_count_3d(P::zero_3d(), 0) == 0);
    // l = 0 square well: floor(sqrt(V0) R / pi + 1/2) bound states.
    for (double v0 : {2.0, 3.0, 10.0, 30.0, 100.0}) {
      INFO("depth ", v0);
      CHECK(bound_count_3d(P::square_well_3d(v0, 1.0), 0) == static_cast<int>(std::floor(std::sqrt(v0) / kPi + 0.5)));
    }
    const auto g = P::gaussian_3d(5.0, 1.0);
    CHECK(bound_count_3d(g, 0) == 1);
    CHECK(bound_count_3d(g, 1) == 0);
    // Levinson at threshold for the s wave.
    CHECK(phase_shift(g, 1e-6, 0) == doctest::Approx(kPi).epsilon(0.05));
  }

  TEST_CASE("phase-shift table: parallel equals serial, branch is continuous") {
    const auto g = P::gaussian_3d(5.0, 1.0);
    const auto k = log_grid(1e-2, 30.0, 80);
    const auto a = phase_shift_table_serial(g, 3, k);
    const auto b = phase_shift_table(g, 3, k);
    for (int l = 0; l <= 3; ++l) {
      for (std::size_t j = 0; j < k.size(); ++j) CHECK(a.delta[l][j] == b.delta[l][j]);
    }
    CHECK(a.max_jump < kPi / 2.0);
    CHECK(std::abs(a.delta[0].back()) < 0.2);
    CHECK_THROWS_AS(phase_shift_table(g, 2, {1.0}), InvalidInput);
  }

  TEST_CASE("regularized 3D Levinson identity") {
    Levinson3DOptions o;
    o.n_k = 400;
    SUBCASE("free") {
      const auto r = regularized_levinson_3d(P::zero_3d(), o);
      CHECK(r.bound_total == 0);
      CHECK(std::abs(r.lhs) < 1e-6);
    }
    SUBCASE("attractive Gaussian, p = 2 and 3") {
      const auto g = P::gaussian_3d(5.0, 1.0);
      o.p = 2;
      const auto r2 = regularized_levinson_3d(g, o);
      o.p = 3;
      const auto r3 = regularized_levinson_3d(g, o);
      CHECK(r2.bound_total == 1);
      CHECK(std::abs(r2.lhs - 1.0) < 5e-2);
      CHECK(std::abs(r2.lhs - r3.lhs) < 1e-2);
      CHECK_FALSE(r2.truncation_warning);
    }
    SUBCASE("repulsive") {
      const auto r = regularized_levinson_3d(P::gaussian_3d(-3.0, 1.0), o);
      CHECK(r.bound_total == 0);
      CHECK(std::abs(r.lhs) < 5e-2);
    }
    SUBCASE("cutoff growth") {
      const auto g = P::gaussian_3d(5.0, 1.0);
      const auto a = regularized_levinson_3d(g, o);
      const auto b = regularized_levinson_3d(P::with_cutoff(g, 2.0 * g.cutoff), o);
      CHECK(std::abs(a.lhs - b.lhs) < 1e-3);
      CHECK(std::abs(a.delta0_threshold - b.delta0_threshold) < 1e-3);
    }
    SUBCASE("zero-energy resonance is refused") {
      // sqrt(V0) R = pi / 2 puts an s-wave resonance exactly at threshold.
      CHECK_THROWS_AS(regularized_levinson_3d(P::square_well_3d(kPi * kPi / 4.0, 1.0), o), ResonanceSuspected);
    }
    SUBCASE("too small l_max is flagged") {
      o.l_max = 1;
      const auto r = regularized_levinson_3d(P::gaussian_3d(8.0, 2.5), o);
      CHECK(r.truncation_warning);
    }
    SUBCASE("p below 2 is rejected") {
      o.p = 1;
      CHECK_THROWS_AS(regularized_levinson_3d(P::zero_3d(), o), InvalidInput);
    }
  }
}
