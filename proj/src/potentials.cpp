#include "levlab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "levlab/error.hpp"

namespace levlab::potentials {
namespace {

constexpr double kCompact = std::numeric_limits<double>::infinity();

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidInput(std::string("potential: ") + what + " must be positive and finite");
  }
}

std::function<double(double)> interpolator(std::vector<double> x, std::vector<double> v) {
  if (x.size() < 2 || x.size() != v.size()) {
    throw InvalidInput("tabulated potential: need at least two (x, V) rows of equal length");
  }
  if (!std::is_sorted(x.begin(), x.end())) {
    throw InvalidInput("tabulated potential: abscissae must be increasing");
  }
  return [x = std::move(x), v = std::move(v)](double t) {
    if (t < x.front() || t > x.back()) return 0.0;
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t i = std::min<std::size_t>(x.size() - 1, it - x.begin());
    if (i == 0) return v.front();
    const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - w) * v[i - 1] + w * v[i];
  };
}

}  // namespace

Potential1D zero_1d() { return {"zero", [](double) { return 0.0; }, 1.0, kCompact, {}}; }

Potential1D square_well_1d(double depth, double width) {
  require_positive(width, "width");
  const double a = 0.5 * width;
  return {"square_well",
          [depth, a](double x) { return std::abs(x) < a ? -depth : 0.0; },
          a + 1.0,
          kCompact,
          {-a, a}};
}

Potential1D gaussian_1d(double depth, double width) {
  require_positive(width, "width");
  return {"gaussian", [depth, width](double x) { return -depth * std::exp(-(x / width) * (x / width)); },
          7.0 * width, kCompact, {}};
}

Potential1D sech2_1d(double strength) {
  return {"sech2",
          [strength](double x) {
            const double c = std::cosh(x);
            return -strength / (c * c);
          },
          20.0, kCompact, {}};
}

Potential1D tabulated_1d(std::vector<double> x, std::vector<double> v) {
  const double lo = x.empty() ? 0.0 : x.front();
  const double hi = x.empty() ? 0.0 : x.back();
  std::vector<double> bp = x;
  auto f = interpolator(std::move(x), std::move(v));
  return {"tabulated", f, std::max(std::abs(lo), std::abs(hi)) + 1.0, kCompact, bp};
}

RadialPotential zero_3d() { return {"zero", [](double) { return 0.0; }, 1.0, kCompact, {}}; }

RadialPotential square_well_3d(double depth, double width) {
  require_positive(width, "width");
  return {"square_well", [depth, width](double r) { return r < width ? -depth : 0.0; },
          width + 1.0, kCompact, {width}};
}

RadialPotential gaussian_3d(double depth, double width) {
  require_positive(width, "width");
  return {"gaussian", [depth, width](double r) { return -depth * std::exp(-(r / width) * (r / width)); },
          7.0 * width, kCompact, {}};
}

RadialPotential tabulated_3d(std::vector<double> r, std::vector<double> v) {
  if (!r.empty() && r.front() < 0.0) throw InvalidInput("tabulated radial potential: r must be >= 0");
  const double hi = r.empty() ? 0.0 : r.back();
  std::vector<double> bp = r;
  auto f = interpolator(std::move(r), std::move(v));
  return {"tabulated", f, hi + 1.0, kCompact, bp};
}

void read_table_csv(const std::string& path, std::vector<double>& x, std::vector<double>& v) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open potential table '" + path + "'");
  std::string line;
  x.clear();
  v.clear();
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a = 0.0, b = 0.0;
    if (!(ss >> a >> b)) {
      if (x.empty()) continue;  // header
      throw InvalidInput("malformed row in potential table '" + path + "': " + line);
    }
    x.push_back(a);
    v.push_back(b);
  }
}

double tail_magnitude(const Potential1D& p) {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = p.cutoff * (1.0 + 0.05 * i);
    worst = std::max({worst, std::abs(p.v(x)), std::abs(p.v(-x))});
  }
  return worst;
}

double tail_magnitude(const RadialPotential& p) {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) worst = std::max(worst, std::abs(p.v(p.cutoff * (1.0 + 0.05 * i))));
  return worst;
}

Potential1D with_cutoff(Potential1D p, double cutoff) {
  require_positive(cutoff, "cutoff");
  p.cutoff = cutoff;
  return p;
}

RadialPotential with_cutoff(RadialPotential p, double cutoff) {
  require_positive(cutoff, "cutoff");
  p.cutoff = cutoff;
  return p;
}

}  // namespace levlab::potentials
