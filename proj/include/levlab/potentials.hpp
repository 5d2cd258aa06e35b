#pragma once

#include <functional>
#include <string>
#include <vector>

namespace levlab::potentials {

/// Potential on the line, negligible outside [-cutoff, cutoff].
struct Potential1D {
  std::string name;
  std::function<double(double)> v;
  double cutoff = 20.0;
  double decay_exponent = 0.0;     ///< rho in int (1 + |x|)^rho |V| < inf; inf for compact support
  std::vector<double> breakpoints;  ///< points where v is not smooth
};

/// Radial potential on [0, inf), negligible beyond cutoff.
struct RadialPotential {
  std::string name;
  std::function<double(double)> v;
  double cutoff = 10.0;
  double decay_exponent = 0.0;
  std::vector<double> breakpoints;
};

Potential1D zero_1d();
/// -depth on |x| < width / 2.
Potential1D square_well_1d(double depth, double width);
/// -depth exp(-(x / width)^2).
Potential1D gaussian_1d(double depth, double width);
/// -strength sech^2(x).
Potential1D sech2_1d(double strength);
/// Linear interpolation through (x, V) rows, zero outside the table.
Potential1D tabulated_1d(std::vector<double> x, std::vector<double> v);

RadialPotential zero_3d();
RadialPotential square_well_3d(double depth, double width);
RadialPotential gaussian_3d(double depth, double width);
RadialPotential tabulated_3d(std::vector<double> r, std::vector<double> v);

/// Reads a two-column CSV (header optional).
void read_table_csv(const std::string& path, std::vector<double>& x, std::vector<double>& v);

/// Largest |V| beyond the cutoff on a sample, for checking the declared cutoff.
double tail_magnitude(const Potential1D& p);
double tail_magnitude(const RadialPotential& p);

/// Same potential with a different cutoff (for cutoff-growth checks).
Potential1D with_cutoff(Potential1D p, double cutoff);
RadialPotential with_cutoff(RadialPotential p, double cutoff);

}  // namespace levlab::potentials
