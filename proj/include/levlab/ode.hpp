#pragma once

#include <functional>
#include <vector>

namespace levlab::ode {

using State = std::vector<double>;
using Rhs = std::function<void(const State& y, State& dy, double t)>;
/// Called after every accepted step.
using Observer = std::function<void(const State& y, double t)>;

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double initial_step = 1e-3;
  long max_steps = 5'000'000;
};

/// Adaptive Dormand-Prince 5(4) from t0 to t1 (either direction). Throws
/// StiffIntegration when the step size collapses or the step budget runs out.
/// Returns the number of accepted steps.
long integrate(const Rhs& rhs, State& y, double t0, double t1, const Options& opt = {},
               const Observer& observer = {});

/// Integrates across sorted breakpoints so that no step straddles a jump of the rhs.
long integrate_piecewise(const Rhs& rhs, State& y, double t0, double t1,
                         const std::vector<double>& breakpoints, const Options& opt = {},
                         const Observer& observer = {});

}  // namespace levlab::ode
