#pragma once

#include <vector>

#include "levlab/boundary.hpp"
#include "levlab/ode.hpp"
#include "levlab/potentials.hpp"
#include "levlab/types.hpp"
#include "levlab/winding.hpp"

namespace levlab::schrodinger {

using potentials::Potential1D;
using potentials::RadialPotential;

// ---------------------------------------------------------------- line

/// Tolerances for the line problem: relative 1e-12 keeps S unitary to ~1e-10
/// up to k = 20 (1e-10 only reaches ~2e-8 there).
inline ode::Options line_options() {
  ode::Options o;
  o.abs_tol = 1e-14;
  o.rel_tol = 1e-12;
  return o;
}

/// Raw scattering data at momentum k: transmission and left/right reflection.
struct Jost1D {
  Complex t;
  Complex t_right;  ///< transmission from the right-incidence run; equals t
  Complex r_left;
  Complex r_right;
};

Jost1D jost_data_1d(const Potential1D& v, double k, const ode::Options& opt = line_options());

/// S(k) in the even/odd channel basis (identity for V = 0).
Mat2 jost_smatrix_1d(const Potential1D& v, double k, const ode::Options& opt = line_options());

enum class S0Class { Generic, Exceptional };
const char* to_string(S0Class c);

struct S0Estimate {
  S0Class cls = S0Class::Exceptional;
  Mat2 s0;                 ///< canonical form matched to the extrapolation
  Mat2 s0_extrapolated;
  Complex det_extrapolated;
};

/// Extrapolates S(k) linearly in k from k = 1e-1, 1e-2, 1e-3.
/// Throws AmbiguousClassification when det S(0) is not within 0.1 of +-1.
S0Estimate s0_classify(const Potential1D& v, const ode::Options& opt = line_options());

/// Sturm count: zeros of the zero-energy solution that is constant at -inf.
int bound_count_1d(const Potential1D& v, const ode::Options& opt = line_options());

/// psi'(R) of that zero-energy solution; vanishes exactly at a half-bound state.
double zero_energy_slope(const Potential1D& v, const ode::Options& opt = line_options());

/// Depths in (lo, hi) where the family develops a half-bound state, located by
/// scanning `n_scan` points and bisecting each sign change of zero_energy_slope.
template <class Family>
std::vector<double> threshold_depths(const Family& family, double lo, double hi, int n_scan,
                                     double xtol = 1e-12);

/// Quadruple with Gamma1 built from S(0) and the +-i sech threshold profiles,
/// Gamma2 = S on the energy half-line, Gamma3 = Gamma4 = 1.
boundary::QuadrantBoundary gamma_boundary_1d(const Potential1D& v, const S0Estimate& s0,
                                             const ode::Options& opt = line_options());

struct Levinson1DReport {
  S0Estimate s0;
  winding::WindingReport winding;
  double wind_s = 0.0;          ///< winding of lambda -> S(lambda) alone
  double gamma1_part = 0.0;     ///< contribution of the threshold side
  int bound_states = 0;
  double expected_wind_s = 0.0; ///< N - 1/2 (generic) or N (exceptional)
  double residual = 0.0;
  bool passed = false;
};

Levinson1DReport levinson_1d(const Potential1D& v, double tol, const ode::Options& opt = line_options(),
                             const winding::PhaseOptions& popt = {});

// ---------------------------------------------------------------- radial

/// Principal value of delta_l in (-pi/2, pi/2] at energy lambda = k^2.
double phase_shift_principal(const RadialPotential& v, double lambda, int l,
                             const ode::Options& opt = {});

struct PhaseShiftTable {
  std::vector<double> k;
  int l_max = 0;
  std::vector<std::vector<double>> delta;  ///< delta[l][j], continuous branch, -> 0 at the top of the grid
  double max_jump = 0.0;                   ///< largest |delta_l(k_{j+1}) - delta_l(k_j)|
  long integrations = 0;
};

/// Log-spaced momenta.
std::vector<double> log_grid(double k_min, double k_max, int n);

/// Independent (l, k) integrations run in parallel; the result does not depend
/// on the thread count.
PhaseShiftTable phase_shift_table(const RadialPotential& v, int l_max, const std::vector<double>& k,
                                  const ode::Options& opt = {});
PhaseShiftTable phase_shift_table_serial(const RadialPotential& v, int l_max,
                                         const std::vector<double>& k, const ode::Options& opt = {});

/// Continuous phase shift delta_l(lambda), branch fixed by following a grid
/// down from high energy.
double phase_shift(const RadialPotential& v, double lambda, int l, const ode::Options& opt = {});

/// Nodes of the zero-energy regular solution in channel l, including a zero of
/// the free continuation beyond the cutoff.
int bound_count_3d(const RadialPotential& v, int l, const ode::Options& opt = {});

struct Levinson3DOptions {
  int p = 2;
  int l_max = 6;
  double k_min = 1e-3;
  double k_max = 100.0;
  int n_k = 600;
  double tol = 5e-2;
  bool parallel = true;
};

struct Levinson3DReport {
  int p = 2;
  int l_max = 0;
  double lhs = 0.0;
  double lhs_imag = 0.0;
  std::vector<double> per_l;    ///< (2l + 1) times the channel integral
  std::vector<int> bound_per_l; ///< channel node counts
  int bound_total = 0;          ///< sum (2l + 1) * bound_per_l
  double delta0_threshold = 0.0; ///< delta_0 at the bottom of the grid
  double max_jump = 0.0;         ///< after adaptive refinement
  long grid_points = 0;          ///< momenta used over all channels
  bool truncation_warning = false;
  double residual = 0.0;
  bool passed = false;
};

/// Throws ResonanceSuspected if delta_0 near threshold is not close to a
/// multiple of pi.
Levinson3DReport regularized_levinson_3d(const RadialPotential& v, const Levinson3DOptions& o,
                                         const ode::Options& opt = {});

}  // namespace levlab::schrodinger

#include "levlab/detail/schrodinger_thresholds.hpp"
