#include "levlab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "levlab/error.hpp"

namespace levlab::ode {

namespace odeint = boost::numeric::odeint;

long integrate(const Rhs& rhs, State& y, double t0, double t1, const Options& opt,
               const Observer& observer) {
  if (t0 == t1) return 0;
  auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double t = t0;
  double dt = dir * std::min(opt.initial_step, std::abs(t1 - t0));
  long steps = 0;
  long attempts = 0;
  auto system = [&rhs](const State& x, State& dx, double tt) { rhs(x, dx, tt); };
  while (dir * (t1 - t) > 0.0) {
    if (dir * (t + dt - t1) > 0.0) dt = t1 - t;
    const double before = t;
    const auto res = stepper.try_step(system, y, t, dt);
    ++attempts;
    if (res == odeint::success) {
      ++steps;
      if (observer) observer(y, t);
      if (dir * (t1 - t) <= 1e-15 * std::max(1.0, std::abs(t1))) break;
    } else if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(before))) {
      throw StiffIntegration("ode: step size collapsed near t=" + std::to_string(before));
    }
    if (attempts > opt.max_steps) {
      throw StiffIntegration("ode: step budget exhausted near t=" + std::to_string(t));
    }
  }
  return steps;
}

long integrate_piecewise(const Rhs& rhs, State& y, double t0, double t1,
                         const std::vector<double>& breakpoints, const Options& opt,
                         const Observer& observer) {
  std::vector<double> cuts;
  const double lo = std::min(t0, t1), hi = std::max(t0, t1);
  for (double b : breakpoints) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  if (t1 < t0) std::reverse(cuts.begin(), cuts.end());
  cuts.push_back(t1);
  long steps = 0;
  double t = t0;
  for (double c : cuts) {
    steps += integrate(rhs, y, t, c, opt, observer);
    t = c;
  }
  return steps;
}

}  // namespace levlab::ode
