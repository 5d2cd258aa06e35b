// Serial reference vs OpenMP kernel timings. Usage: levlab_bench [threads] [repeats]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "levlab/chern_pairing.hpp"
#include "levlab/potentials.hpp"
#include "levlab/schrodinger.hpp"

namespace {

double seconds(const std::function<void()>& f, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void line(const char* name, double serial, double parallel, double diff) {
  std::printf("%-28s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  |diff| %.2e\n", name, serial, parallel,
              serial / parallel, diff);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace levlab;
  const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  omp_set_num_threads(threads);
  std::printf("threads %d (procs %d), best of %d\n", threads, omp_get_num_procs(), repeats);

  const auto X = chern::make_sphere(std::polar(1.0, -kPi / 3.0), std::polar(1.0, kPi / 3.0));
  chern::GridSpec3D g;
  g.n_rho = g.n_phi = g.n_xi = 12;
  auto family = [&X](double rho, double phi) { return chern::gamma_of(rho, phi, 0.5, X); };
  double vs = 0.0, vp = 0.0;
  const double ts = seconds([&] { vs = chern::three_form_integral_serial(family, g).value; }, repeats);
  const double tp = seconds([&] { vp = chern::three_form_integral(family, g).value; }, repeats);
  line("three_form_integral n=12", ts, tp, std::abs(vs - vp));

  const auto v = potentials::gaussian_3d(5.0, 1.0);
  const auto k = schrodinger::log_grid(1e-3, 100.0, 300);
  schrodinger::PhaseShiftTable as, ap;
  const double ss = seconds([&] { as = schrodinger::phase_shift_table_serial(v, 6, k); }, repeats);
  const double sp = seconds([&] { ap = schrodinger::phase_shift_table(v, 6, k); }, repeats);
  double diff = 0.0;
  for (int l = 0; l <= 6; ++l) {
    for (std::size_t j = 0; j < k.size(); ++j) diff = std::max(diff, std::abs(as.delta[l][j] - ap.delta[l][j]));
  }
  line("phase_shift_table 7x300", ss, sp, diff);
  return 0;
}
