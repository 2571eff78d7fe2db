// Serial reference vs OpenMP kernel timings. Results of each pair must agree.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "simplexcover/bound_verify.hpp"
#include "simplexcover/covering.hpp"
#include "simplexcover/ddp_search.hpp"
#include "simplexcover/lattice.hpp"

using namespace simplexcover;

namespace {

double time_ms(const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", name, serial, parallel,
              serial / parallel, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
  std::printf("threads: %d\n", threads);

  {
    // Whole index scan for n = 3, d = 6 at an index with no covering lattice.
    const SimplexPointSet simplex(3, 6);
    const auto lattices = enumerate_sublattices(3, 60);
    std::optional<std::size_t> a, b;
    const double s = time_ms([&] { a = first_covering_lattice_serial(lattices, simplex); });
    const double p = time_ms([&] { b = first_covering_lattice(lattices, simplex, threads); });
    report("index scan n=3 m=60", s, p, a == b);
  }
  {
    const auto f = [](std::span<const double> x) {
      const std::array<double, 3> q{x[0], x[1], x[2]};
      return in_region_no_notch(q, 1.0) ? 1.0 - q[0] - q[1] - q[2] : 0.0;
    };
    IntegralEstimate a, b;
    const double s = time_ms([&] { a = simplex_monte_carlo_serial(3, 1.0, f, 4'000'000, kDefaultSeed); });
    const double p = time_ms([&] { b = simplex_monte_carlo(3, 1.0, f, 4'000'000, kDefaultSeed, threads); });
    report("monte carlo 4e6 samples", s, p, a.value == b.value && a.std_error == b.std_error);
  }
  {
    const auto lattice = IntegerLattice::from_rows({{7, 0, 0}, {3, 1, 0}, {5, 2, 3}});
    std::optional<std::vector<Rational>> a, b;
    const Rational D = 3;
    const double s = time_ms([&] { a = continuous_cover_falsify_serial(3, D, lattice, 8); });
    const double p = time_ms([&] { b = continuous_cover_falsify(3, D, lattice, 8, threads); });
    report("falsifier res=8", s, p, a == b);
  }
  return 0;
}
