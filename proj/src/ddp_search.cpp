#include "simplexcover/ddp_search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "simplexcover/parallel.hpp"
#include "simplexcover/tile.hpp"

namespace simplexcover {

SimplexPointSet::SimplexPointSet(int n, std::int64_t d) : n_(n), count_(0) {
  if (n < 1 || d < 0) throw std::invalid_argument("simplex needs n >= 1 and d >= 0");
  const BigInt size = binomial(d + n, n);
  if (size > 50'000'000) throw std::overflow_error("simplex too large to materialize");
  count_ = size.convert_to<std::int64_t>();
  coords_.reserve(static_cast<std::size_t>(count_ * n));
  PrecOrderStream stream(n);
  for (std::int64_t i = 0; i < count_; ++i, stream.advance())
    coords_.insert(coords_.end(), stream.current().begin(), stream.current().end());
}

bool simplex_covers(const IntegerLattice& lattice, const SimplexPointSet& simplex) {
  const std::int64_t cosets = lattice.index();
  if (cosets > simplex.count()) return false;
  std::vector<char> seen(static_cast<std::size_t>(cosets), 0);
  std::int64_t hit = 0;
  for (std::int64_t i = 0; i < simplex.count(); ++i) {
    const auto r = static_cast<std::size_t>(lattice.residue_index(simplex.point(i)));
    if (!seen[r]) {
      seen[r] = 1;
      if (++hit == cosets) return true;
    }
  }
  return false;
}

std::optional<std::size_t> first_covering_lattice_serial(std::span<const IntegerLattice> lattices,
                                                         const SimplexPointSet& simplex) {
  for (std::size_t i = 0; i < lattices.size(); ++i)
    if (simplex_covers(lattices[i], simplex)) return i;
  return std::nullopt;
}

std::optional<std::size_t> first_covering_lattice(std::span<const IntegerLattice> lattices,
                                                  const SimplexPointSet& simplex, int threads) {
  const auto count = static_cast<std::int64_t>(lattices.size());
  std::int64_t first = count;
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    std::int64_t local = count;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
      if (i >= local) continue;
      if (simplex_covers(lattices[static_cast<std::size_t>(i)], simplex)) local = i;
    }
#pragma omp critical
    first = std::min(first, local);
  }
  if (first == count) return std::nullopt;
  return static_cast<std::size_t>(first);
}

BigInt f2_closed_form(std::int64_t d) {
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  return BigInt(d + 2) * (d + 2) / 3;
}

Rational f3_upper_bound(std::int64_t d) {
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  return Rational(3) * pow(Rational(d + 3), 3) / 25;
}

Rational f4_upper_bound(std::int64_t d) {
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  return Rational(11) * pow(Rational(d + 4), 4) / 343;
}

namespace {

// n - 1 + ((n-1)/(2n-1))^(n-1)
Rational volume_factor(int n) {
  return Rational(n - 1) + pow(make_rational(n - 1, 2 * n - 1), static_cast<unsigned>(n - 1));
}

}  // namespace

Rational fn_upper_bound(int n, std::int64_t d) {
  if (n < 2) throw std::invalid_argument("bound needs n >= 2");
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  BigInt factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  return pow(Rational(d + n), static_cast<unsigned>(n)) / Rational(factorial * n) * volume_factor(n);
}

Rational theta_lower_bound(int n) {
  if (n < 2) throw std::invalid_argument("bound needs n >= 2");
  return Rational(n) / volume_factor(n);
}

std::int64_t default_index_cap(int n, std::int64_t d) {
  BigInt cap = binomial(d + n, n);
  if (n >= 2) cap = std::min(cap, floor(fn_upper_bound(n, d)));
  if (cap > std::numeric_limits<std::int64_t>::max() / 2) throw std::overflow_error("index cap out of range");
  return cap.convert_to<std::int64_t>();
}

SearchReport brute_force_f(int n, std::int64_t d, const SearchOptions& options) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("n out of range");
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  const auto start = std::chrono::steady_clock::now();

  SearchReport report;
  report.n = n;
  report.d = d;
  report.binomial_cap = binomial(d + n, n);
  report.upper_bound = n >= 2 ? fn_upper_bound(n, d) : Rational(report.binomial_cap);

  const std::int64_t default_cap = default_index_cap(n, d);
  std::int64_t cap = default_cap;
  if (options.index_cap) {
    if (*options.index_cap < 1) throw std::invalid_argument("index cap must be positive");
    // A cap above the closed-form bound is honoured up to C(d+n,n) so the
    // bound itself can be tested rather than assumed.
    cap = std::min(BigInt(*options.index_cap), report.binomial_cap).convert_to<std::int64_t>();
    report.exhaustive = *options.index_cap >= default_cap;
  }

  const SimplexPointSet simplex(n, d);
  for (std::int64_t m = cap; m >= 1; --m) {
    const auto lattices = enumerate_sublattices(n, m);
    report.candidates_scanned += lattices.size();
    if (const auto hit = first_covering_lattice(lattices, simplex, options.threads)) {
      report.f_value = m;
      report.witness = lattices[*hit];
      break;
    }
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<DensityRow> density_trend(int n, std::span<const std::int64_t> d_values, const SearchOptions& options) {
  std::vector<DensityRow> rows;
  for (const auto d : d_values) {
    const auto report = brute_force_f(n, d, options);
    rows.push_back(DensityRow{d, make_rational(report.binomial_cap, report.f_value), report.witness, report.exhaustive});
  }
  return rows;
}

}  // namespace simplexcover
