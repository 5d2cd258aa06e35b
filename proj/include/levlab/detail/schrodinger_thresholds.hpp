#pragma once

#include <cmath>

namespace levlab::schrodinger {

template <class Family>
std::vector<double> threshold_depths(const Family& family, double lo, double hi, int n_scan,
                                     double xtol) {
  std::vector<double> out;
  auto f = [&](double d) { return zero_energy_slope(family(d)); };
  double a = lo, fa = f(lo);
  for (int i = 1; i <= n_scan; ++i) {
    const double b = lo + (hi - lo) * i / n_scan;
    const double fb = f(b);
    if (fa == 0.0) {
      out.push_back(a);
    } else if (fa * fb < 0.0) {
      double x0 = a, x1 = b, f0 = fa;
      while (x1 - x0 > xtol * std::max(1.0, std::abs(x1))) {
        const double m = 0.5 * (x0 + x1);
        const double fm = f(m);
        if (fm == 0.0) {
          x0 = x1 = m;
          break;
        }
        if ((fm < 0.0) == (f0 < 0.0)) {
          x0 = m;
          f0 = fm;
        } else {
          x1 = m;
        }
      }
      out.push_back(0.5 * (x0 + x1));
    }
    a = b;
    fa = fb;
  }
  return out;
}

}  // namespace levlab::schrodinger
