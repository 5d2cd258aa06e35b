#include <algorithm>
#include <cmath>
#include <string>

#include "levlab/error.hpp"
#include "levlab/schrodinger.hpp"

namespace levlab::schrodinger {
namespace {

struct Radial {
  double u;
  double du;
  int nodes;
};

// Regular solution of -u'' + (l(l+1)/r^2 + V) u = k^2 u from the series
// r^{l+1} (1 + c r^2) near the origin, rescaled as it grows.
Radial radial_solution(const RadialPotential& v, int l, double k, const ode::Options& opt) {
  const double k2 = k * k;
  const double ll = l * (l + 1.0);
  const double r_end = v.cutoff;
  const double r0 = 1e-3 * std::min(1.0, 1.0 / std::max(k, 1e-300)) * std::min(1.0, r_end);
  const double c = (v.v(0.0) - k2) / (4.0 * l + 6.0);
  ode::State y{1.0 + c * r0 * r0, ((l + 1.0) + c * (l + 3.0) * r0 * r0) / r0};

  auto rhs = [&v, ll, k2](const ode::State& s, ode::State& ds, double r) {
    ds[0] = s[1];
    ds[1] = (ll / (r * r) + v.v(r) - k2) * s[0];
  };
  int nodes = 0;
  double last = 1.0;
  auto obs = [&](const ode::State& s, double) {
    if (s[0] != 0.0 && (s[0] < 0.0) != (last < 0.0)) {
      ++nodes;
      last = s[0];
    }
  };

  // Geometric chunks keep the power-law growth in range.
  std::vector<double> cuts;
  for (double r = 2.0 * r0; r < r_end; r *= 2.0) cuts.push_back(r);
  for (double b : v.breakpoints) {
    if (b > r0 && b < r_end) cuts.push_back(b);
  }
  cuts.push_back(r_end);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double r = r0;
  for (double next : cuts) {
    ode::integrate(rhs, y, r, next, opt, obs);
    r = next;
    const double scale = std::max(std::abs(y[0]), std::abs(y[1]) * r);
    if (scale > 1e50 || (scale < 1e-50 && scale > 0.0)) {
      y[0] /= scale;
      y[1] /= scale;
    }
  }
  return {y[0], y[1], nodes};
}

double wrap_half_pi(double d) {
  // Into (-pi/2, pi/2].
  d = std::remainder(d, kPi);
  if (d <= -0.5 * kPi) d += kPi;
  return d;
}

void check_lk(int l, double k) {
  if (l < 0) throw DomainError("phase shift: l must be >= 0");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("phase shift: lambda must be positive and finite");
}

double principal_at_k(const RadialPotential& v, double k, int l, const ode::Options& opt) {
  check_lk(l, k);
  const Radial s = radial_solution(v, l, k, opt);
  const double x = k * v.cutoff;
  const double jl = std::sph_bessel(l, x), jl1 = std::sph_bessel(l + 1, x);
  const double yl = std::sph_neumann(l, x), yl1 = std::sph_neumann(l + 1, x);
  // Riccati functions x j_l(x), x y_l(x) and their x-derivatives.
  const double jh = x * jl, jhp = (l + 1.0) * jl - x * jl1;
  const double nh = x * yl, nhp = (l + 1.0) * yl - x * yl1;
  // u ~ jh cos(delta) - nh sin(delta); compare u'/u in the form u * (...) to avoid dividing by u.
  const double num = s.du * jh - k * jhp * s.u;
  const double den = s.du * nh - k * nhp * s.u;
  return wrap_half_pi(std::atan2(num, den));
}

void unwrap_from_top(std::vector<double>& d, double& max_jump) {
  for (std::size_t j = d.size() - 1; j-- > 0;) {
    const double m = std::round((d[j + 1] - d[j]) / kPi);
    d[j] += m * kPi;
    max_jump = std::max(max_jump, std::abs(d[j + 1] - d[j]));
  }
}

void finish_table(PhaseShiftTable& t) {
  t.max_jump = 0.0;
  for (auto& row : t.delta) unwrap_from_top(row, t.max_jump);
}

void check_grid(const std::vector<double>& k, int l_max) {
  if (k.size() < 2) throw InvalidInput("phase shift table: need at least two momenta");
  if (l_max < 0) throw InvalidInput("phase shift table: l_max must be >= 0");
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (!(k[j] > 0.0) || (j > 0 && !(k[j] > k[j - 1]))) {
      throw InvalidInput("phase shift table: momenta must be positive and increasing");
    }
  }
}

// Bisects (in log k) every interval whose phase step exceeds max_step.
void refine_channel(const RadialPotential& v, int l, const ode::Options& opt, double max_step, int max_depth,
                    std::vector<double>& k, std::vector<double>& d) {
  std::vector<double> nk{k.front()}, nd{d.front()};
  struct Task {
    double ka, da, kb, db;
    int depth;
  };
  for (std::size_t j = 0; j + 1 < k.size(); ++j) {
    std::vector<Task> stack{{k[j], d[j], k[j + 1], d[j + 1], 0}};
    while (!stack.empty()) {
      Task t = stack.back();
      stack.pop_back();
      if (std::abs(t.db - t.da) <= max_step || t.depth >= max_depth) {
        nk.push_back(t.kb);
        nd.push_back(t.db);
        continue;
      }
      const double km = std::sqrt(t.ka * t.kb);
      double dm = principal_at_k(v, km, l, opt);
      const double guess = 0.5 * (t.da + t.db);
      dm += kPi * std::round((guess - dm) / kPi);
      // Left half is processed first.
      stack.push_back({km, dm, t.kb, t.db, t.depth + 1});
      stack.push_back({t.ka, t.da, km, dm, t.depth + 1});
    }
  }
  k.swap(nk);
  d.swap(nd);
}

}  // namespace

double phase_shift_principal(const RadialPotential& v, double lambda, int l, const ode::Options& opt) {
  if (!(lambda > 0.0)) throw DomainError("phase_shift: lambda must be positive");
  return principal_at_k(v, std::sqrt(lambda), l, opt);
}

std::vector<double> log_grid(double k_min, double k_max, int n) {
  if (!(k_min > 0.0) || !(k_max > k_min) || n < 2) throw InvalidInput("log_grid: need 0 < k_min < k_max, n >= 2");
  std::vector<double> k(n);
  const double a = std::log(k_min), b = std::log(k_max);
  for (int j = 0; j < n; ++j) k[j] = std::exp(a + (b - a) * j / (n - 1));
  return k;
}

PhaseShiftTable phase_shift_table_serial(const RadialPotential& v, int l_max, const std::vector<double>& k,
                                         const ode::Options& opt) {
  check_grid(k, l_max);
  PhaseShiftTable t;
  t.k = k;
  t.l_max = l_max;
  t.delta.assign(l_max + 1, std::vector<double>(k.size()));
  for (int l = 0; l <= l_max; ++l) {
    for (std::size_t j = 0; j < k.size(); ++j) t.delta[l][j] = principal_at_k(v, k[j], l, opt);
  }
  t.integrations = static_cast<long>((l_max + 1) * k.size());
  finish_table(t);
  return t;
}

PhaseShiftTable phase_shift_table(const RadialPotential& v, int l_max, const std::vector<double>& k,
                                  const ode::Options& opt) {
  check_grid(k, l_max);
  PhaseShiftTable t;
  t.k = k;
  t.l_max = l_max;
  t.delta.assign(l_max + 1, std::vector<double>(k.size()));
  const long nk = static_cast<long>(k.size());
  const long total = (l_max + 1) * nk;
  bool failed = false;
  std::string message;
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < total; ++idx) {
    const int l = static_cast<int>(idx / nk);
    const long j = idx % nk;
    try {
      t.delta[l][j] = principal_at_k(v, k[j], l, opt);
    } catch (const std::exception& e) {
#pragma omp critical(levlab_phase_error)
      {
        if (!failed) message = e.what();
        failed = true;
      }
    }
  }
  if (failed) throw StiffIntegration(message);
  t.integrations = total;
  finish_table(t);
  return t;
}

double phase_shift(const RadialPotential& v, double lambda, int l, const ode::Options& opt) {
  if (!(lambda > 0.0)) throw DomainError("phase_shift: lambda must be positive");
  const double k = std::sqrt(lambda);
  const double k_top = std::max(100.0, 4.0 * k);
  std::vector<double> grid = log_grid(k, k_top, 200);
  grid.front() = k;
  PhaseShiftTable t = phase_shift_table_serial(v, l, grid, opt);
  return t.delta[l].front();
}

int bound_count_3d(const RadialPotential& v, int l, const ode::Options& opt) {
  if (l < 0) throw DomainError("bound_count_3d: l must be >= 0");
  const Radial s = radial_solution(v, l, 0.0, opt);
  int nodes = s.nodes;
  // Beyond R: u = A r^{l+1} + B r^{-l}; a zero at r* > R is one more node.
  const double R = v.cutoff;
  const double a = (l * s.u + R * s.du) / (2.0 * l + 1.0);          // A R^{l+1}
  const double b = ((l + 1.0) * s.u - R * s.du) / (2.0 * l + 1.0);  // B R^{-l}
  if (a != 0.0 && -b / a > 1.0) {
    const double log_ratio = std::log(-b / a) / (2.0 * l + 1.0);  // log(r*/R)
    if (std::log(R) + log_ratio < std::log(1e6)) ++nodes;
  }
  return nodes;
}

Levinson3DReport regularized_levinson_3d(const RadialPotential& v, const Levinson3DOptions& o,
                                         const ode::Options& opt) {
  if (o.p < 2) throw InvalidInput("regularized_levinson_3d: p must be >= 2");
  if (o.l_max < 0) throw InvalidInput("regularized_levinson_3d: l_max must be >= 0");
  const std::vector<double> k = log_grid(o.k_min, o.k_max, o.n_k);
  const PhaseShiftTable t = o.parallel ? phase_shift_table(v, o.l_max, k, opt)
                                       : phase_shift_table_serial(v, o.l_max, k, opt);
  Levinson3DReport out;
  out.p = o.p;
  out.l_max = o.l_max;
  out.delta0_threshold = t.delta[0].front();
  const double frac = out.delta0_threshold / kPi - std::round(out.delta0_threshold / kPi);
  if (std::abs(frac) > 0.25) {
    throw ResonanceSuspected("regularized_levinson_3d: delta_0 near threshold is " +
                             std::to_string(out.delta0_threshold / kPi) +
                             " pi, not close to a multiple of pi");
  }
  for (int l = 0; l <= o.l_max; ++l) {
    std::vector<double> kk = t.k, d = t.delta[l];
    refine_channel(v, l, opt, 0.05, 12, kk, d);
    for (std::size_t j = 0; j + 1 < d.size(); ++j) out.max_jump = std::max(out.max_jump, std::abs(d[j + 1] - d[j]));
    out.grid_points += static_cast<long>(kk.size());
    // -(1/pi) int (1 - e^{2i delta})^p d delta along increasing energy, midpoint in delta.
    Complex acc = 0.0;
    for (std::size_t j = 0; j + 1 < d.size(); ++j) {
      const double mid = 0.5 * (d[j] + d[j + 1]);
      acc += std::pow(1.0 - std::exp(2.0 * kI * mid), o.p) * (d[j] - d[j + 1]);
    }
    acc /= kPi;
    const double weight = 2.0 * l + 1.0;
    out.per_l.push_back(weight * acc.real());
    out.lhs += weight * acc.real();
    out.lhs_imag += weight * acc.imag();
    out.bound_per_l.push_back(bound_count_3d(v, l, opt));
    out.bound_total += static_cast<int>(weight) * out.bound_per_l.back();
  }
  out.truncation_warning = std::abs(out.per_l.back()) > 1e-4 || out.bound_per_l.back() > 0;
  out.residual = std::abs(out.lhs - out.bound_total);
  out.passed = out.residual < o.tol;
  return out;
}

}  // namespace levlab::schrodinger
