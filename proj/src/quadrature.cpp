#include "levlab/quadrature.hpp"

#include <cmath>

namespace levlab::quadrature {
namespace {

Complex midpoint(const Integrand& f, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  Complex acc = 0.0;
  for (long i = 0; i < n; ++i) acc += f(a + (static_cast<double>(i) + 0.5) * h, h);
  return acc * h;
}

}  // namespace

Result midpoint_richardson(const Integrand& f, double a, double b, const Spec& spec) {
  Result res;
  if (!(b > a)) return res;
  long n = spec.n0;
  Complex coarse = midpoint(f, a, b, n);
  res.evaluations = n;
  Complex prev_rich = coarse;
  int agreements = 0;
  for (int d = 0; d < spec.max_doublings; ++d) {
    n *= 2;
    const Complex fine = midpoint(f, a, b, n);
    res.evaluations += n;
    const Complex rich = (4.0 * fine - coarse) / 3.0;
    const double diff = std::abs(rich - prev_rich);
    res.value = rich;
    res.error_estimate = diff;
    if (d > 0 && diff < spec.tol) {
      if (++agreements >= 2) {
        res.converged = true;
        return res;
      }
    } else {
      agreements = 0;
    }
    prev_rich = rich;
    coarse = fine;
  }
  return res;
}

Result improper(const Integrand& f, double a, double b, bool singular_at_a, bool singular_at_b,
                const Spec& spec) {
  if (!singular_at_a && !singular_at_b) return midpoint_richardson(f, a, b, spec);
  if (singular_at_a && singular_at_b) {
    const double mid = 0.5 * (a + b);
    Result left = improper(f, a, mid, true, false, spec);
    Result right = improper(f, mid, b, false, true, spec);
    return {left.value + right.value, left.error_estimate + right.error_estimate,
            left.evaluations + right.evaluations, left.converged && right.converged};
  }
  Spec inner = spec;
  inner.tol = spec.tol / 20.0;
  const double width = b - a;
  Result total;
  total.converged = true;
  auto add = [&](double lo, double hi) {
    Result r = midpoint_richardson(f, lo, hi, inner);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
    return std::abs(r.value);
  };
  // Bulk half away from the singular end, then dyadic shells towards it.
  if (singular_at_a) {
    add(a + 0.5 * width, b);
  } else {
    add(a, b - 0.5 * width);
  }
  int quiet = 0;
  double outer = 0.5 * width;
  for (int k = 0; k < 60; ++k) {
    const double inner_w = 0.5 * outer;
    const double c = singular_at_a ? add(a + inner_w, a + outer) : add(b - outer, b - inner_w);
    outer = inner_w;
    if (c < spec.tol / 10.0) {
      if (++quiet >= 2) return total;
    } else {
      quiet = 0;
    }
  }
  total.converged = false;
  return total;
}

}  // namespace levlab::quadrature
