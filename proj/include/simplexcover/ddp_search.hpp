#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "simplexcover/lattice.hpp"
#include "simplexcover/rational.hpp"

namespace simplexcover {

/// Outcome of the exhaustive search for f(n,d), the largest order of an
/// abelian Cayley digraph with n generators and diameter at most d.
struct SearchReport {
  int n = 1;
  std::int64_t d = 0;
  BigInt f_value = 1;
  IntegerLattice witness = IntegerLattice::identity(1);
  BigInt binomial_cap = 1;   // C(d+n, n)
  Rational upper_bound = 1;  // tightest closed-form upper bound on f(n,d)
  std::uint64_t candidates_scanned = 0;
  /// False when a user cap below the default cap limited the scan; f_value
  /// is then only the best found at or below that cap.
  bool exhaustive = true;
  double elapsed_ms = 0.0;
};

struct SearchOptions {
  std::optional<std::int64_t> index_cap;
  int threads = 0;
};

/// Descends from the cap; at each index tests every HNF lattice and stops at
/// the first index with a covering lattice. The witness is the
/// lexicographically least covering HNF at that index.
SearchReport brute_force_f(int n, std::int64_t d, const SearchOptions& options = {});

/// min(C(d+n,n), floor(fn_upper_bound(n,d))); just C(d+1,1) for n = 1.
std::int64_t default_index_cap(int n, std::int64_t d);

/// Simplex points S°(n,d) flattened row-major in graded order.
class SimplexPointSet {
 public:
  SimplexPointSet(int n, std::int64_t d);
  int dim() const noexcept { return n_; }
  std::int64_t count() const noexcept { return count_; }
  std::span<const std::int64_t> point(std::int64_t i) const {
    return {coords_.data() + i * n_, static_cast<std::size_t>(n_)};
  }

 private:
  int n_;
  std::int64_t count_;
  std::vector<std::int64_t> coords_;
};

/// True iff S°(n,d) meets every coset of L. Stops as soon as all cosets are hit.
bool simplex_covers(const IntegerLattice& lattice, const SimplexPointSet& simplex);

/// Position of the first covering lattice in `lattices`, if any.
std::optional<std::size_t> first_covering_lattice(std::span<const IntegerLattice> lattices,
                                                  const SimplexPointSet& simplex, int threads = 0);
std::optional<std::size_t> first_covering_lattice_serial(std::span<const IntegerLattice> lattices,
                                                         const SimplexPointSet& simplex);

/// floor((d+2)^2 / 3).
BigInt f2_closed_form(std::int64_t d);
/// 3(d+3)^3 / 25.
Rational f3_upper_bound(std::int64_t d);
/// 11(d+4)^4 / 343.
Rational f4_upper_bound(std::int64_t d);
/// (d+n)^n / (n * n!) * (n - 1 + ((n-1)/(2n-1))^(n-1)), n >= 2.
Rational fn_upper_bound(int n, std::int64_t d);
/// n / (n - 1 + ((n-1)/(2n-1))^(n-1)), n >= 2.
Rational theta_lower_bound(int n);

struct DensityRow {
  std::int64_t d = 0;
  Rational min_density;  // C(d+n,n) / f(n,d)
  IntegerLattice witness = IntegerLattice::identity(1);
  bool exhaustive = true;
};

std::vector<DensityRow> density_trend(int n, std::span<const std::int64_t> d_values, const SearchOptions& options = {});

}  // namespace simplexcover
