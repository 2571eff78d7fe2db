#include "simplexcover/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "simplexcover/parallel.hpp"

namespace simplexcover {

DiscreteSimplex DiscreteSimplex::make(int n, std::int64_t d) {
  if (n < 1 || d < 0) throw std::invalid_argument("simplex needs n >= 1 and d >= 0");
  return DiscreteSimplex{n, d, binomial(d + n, n)};
}

std::vector<OrthantPoint> DiscreteSimplex::points() const {
  return enumerate_orthant_prec(n, size.convert_to<std::size_t>());
}

bool DiscreteSimplex::contains(std::span<const std::int64_t> x) const {
  if (x.size() != static_cast<std::size_t>(n)) throw DimensionMismatch(n, x.size());
  std::int64_t s = 0;
  for (auto c : x) {
    if (c < 0) return false;
    s += c;
  }
  return s <= d;
}

BigInt simplex_size(int n, std::int64_t d) { return DiscreteSimplex::make(n, d).size; }

CoveringVerdict covers_discrete(int n, std::int64_t d, const IntegerLattice& lattice) {
  if (lattice.dim() != n) throw DimensionMismatch(n, lattice.dim());
  const CayleyTile tile = build_tile(lattice);
  CoveringVerdict verdict;
  verdict.tile_diameter = tile.m_diameter;
  verdict.covered = tile.m_diameter <= d;
  if (verdict.covered) {
    verdict.density = make_rational(simplex_size(n, d), lattice.determinant());
  } else {
    const auto it = std::find_if(tile.points.begin(), tile.points.end(),
                                 [d](const OrthantPoint& p) { return p.m_norm() > d; });
    verdict.witness = it->coords();
  }
  return verdict;
}

Rational discrete_density(int n, std::int64_t d, const IntegerLattice& lattice) {
  const auto verdict = covers_discrete(n, d, lattice);
  if (!verdict.covered) throw NotACovering(*verdict.witness);
  return *verdict.density;
}

ContinuousLift lift_to_continuous(int n, std::int64_t d, const IntegerLattice& lattice) {
  const auto verdict = covers_discrete(n, d, lattice);
  if (!verdict.covered) throw NotACovering(*verdict.witness);
  BigInt factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  BigInt power = 1;
  for (int i = 0; i < n; ++i) power *= d + n;
  return ContinuousLift{d + n, make_rational(power, factorial * lattice.determinant())};
}

IntegerLattice round_scaled_lattice(const std::vector<std::vector<double>>& real_basis, double k) {
  if (!(k > 0)) throw std::invalid_argument("scale factor must be positive");
  const int n = static_cast<int>(real_basis.size());
  std::vector<std::vector<BigInt>> rows;
  for (const auto& row : real_basis) {
    if (row.size() != static_cast<std::size_t>(n)) throw DimensionMismatch(n, row.size());
    std::vector<BigInt> r;
    for (double a : row) {
      const double rounded = std::floor(k * a + 0.5);
      if (!std::isfinite(rounded) || std::fabs(rounded) > 9.0e15) throw std::overflow_error("rounded coordinate out of range");
      r.emplace_back(static_cast<std::int64_t>(rounded));
    }
    rows.push_back(std::move(r));
  }
  try {
    return IntegerLattice::from_generators(rows, n);
  } catch (const SingularBasis&) {
    throw SingularAfterRounding();
  }
}

namespace {

// Covering test in scaled integers: the sample is k / scale, D = dn / dd.
// Lattice candidates v satisfy k_i - scale*v_i >= 0 and
// dd * sum(k_i - scale*v_i) <= scale * dn.
struct ScaledCoverTest {
  const IntegerLattice& lattice;
  std::int64_t scale;
  std::int64_t dn;
  std::int64_t dd;

  bool covered(std::span<const std::int64_t> k) const {
    const int n = lattice.dim();
    IntVec v(static_cast<std::size_t>(n));
    return search(k, v, 0, 0);
  }

  // `used` is dd * partial sum of (k_i - scale*v_i) over fixed coordinates.
  bool search(std::span<const std::int64_t> k, IntVec& v, int axis, std::int64_t used) const {
    const int n = lattice.dim();
    if (axis == n) return lattice.contains(v);
    const std::int64_t budget = scale * dn - used;
    const std::int64_t ki = k[static_cast<std::size_t>(axis)];
    const std::int64_t hi = floor_div(ki, scale);
    for (std::int64_t vi = hi;; --vi) {
      const std::int64_t cost = dd * (ki - scale * vi);
      if (cost > budget) break;
      v[static_cast<std::size_t>(axis)] = vi;
      if (search(k, v, axis + 1, used + cost)) return true;
    }
    return false;
  }

  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
};

std::int64_t to_i64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() / 4 || x < -(std::numeric_limits<std::int64_t>::max() / 4))
    throw std::overflow_error("value out of 64-bit range");
  return x.convert_to<std::int64_t>();
}

struct Grid {
  IntVec extent;
  std::int64_t size = 1;

  Grid(const IntegerLattice& lattice, int resolution) {
    for (int i = 0; i < lattice.dim(); ++i) {
      extent.push_back(lattice.diagonal(i) * resolution);
      size *= extent.back();
    }
  }

  void decode(std::int64_t linear, IntVec& k) const {
    for (std::size_t i = extent.size(); i-- > 0;) {
      k[i] = linear % extent[i];
      linear /= extent[i];
    }
  }
};

std::vector<Rational> sample_point(const IntVec& k, int resolution) {
  std::vector<Rational> p;
  for (auto c : k) p.push_back(make_rational(c, resolution));
  return p;
}

void check_falsify_args(int n, const Rational& D, const IntegerLattice& lattice, int resolution) {
  if (lattice.dim() != n) throw DimensionMismatch(n, lattice.dim());
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  if (D < 0) throw std::invalid_argument("dilation must be nonnegative");
}

}  // namespace

bool continuous_point_covered(std::span<const Rational> p, const Rational& D, const IntegerLattice& lattice) {
  if (p.size() != static_cast<std::size_t>(lattice.dim())) throw DimensionMismatch(lattice.dim(), p.size());
  BigInt scale = 1;
  for (const auto& c : p) scale = boost::multiprecision::lcm(scale, denominator(c));
  IntVec k;
  for (const auto& c : p) k.push_back(to_i64(numerator(c) * (scale / denominator(c))));
  const ScaledCoverTest test{lattice, to_i64(scale), to_i64(numerator(D)), to_i64(denominator(D))};
  return test.covered(k);
}

std::optional<std::vector<Rational>> continuous_cover_falsify_serial(int n, const Rational& D,
                                                                     const IntegerLattice& lattice, int resolution) {
  check_falsify_args(n, D, lattice, resolution);
  const ScaledCoverTest test{lattice, resolution, to_i64(numerator(D)), to_i64(denominator(D))};
  const Grid grid(lattice, resolution);
  IntVec k(static_cast<std::size_t>(n));
  for (std::int64_t linear = 0; linear < grid.size; ++linear) {
    grid.decode(linear, k);
    if (!test.covered(k)) return sample_point(k, resolution);
  }
  return std::nullopt;
}

std::optional<std::vector<Rational>> continuous_cover_falsify(int n, const Rational& D, const IntegerLattice& lattice,
                                                              int resolution, int threads) {
  check_falsify_args(n, D, lattice, resolution);
  const ScaledCoverTest test{lattice, resolution, to_i64(numerator(D)), to_i64(denominator(D))};
  const Grid grid(lattice, resolution);
  std::int64_t first = grid.size;
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    IntVec k(static_cast<std::size_t>(n));
    std::int64_t local = grid.size;
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t linear = 0; linear < grid.size; ++linear) {
      if (linear >= local) continue;
      grid.decode(linear, k);
      if (!test.covered(k)) local = linear;
    }
#pragma omp critical
    first = std::min(first, local);
  }
  if (first == grid.size) return std::nullopt;
  IntVec k(static_cast<std::size_t>(n));
  grid.decode(first, k);
  return sample_point(k, resolution);
}

}  // namespace simplexcover
