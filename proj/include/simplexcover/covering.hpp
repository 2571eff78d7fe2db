#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simplexcover/lattice.hpp"
#include "simplexcover/rational.hpp"
#include "simplexcover/tile.hpp"

namespace simplexcover {

/// Nonnegative integer vectors with coordinate sum at most d.
struct DiscreteSimplex {
  int n = 1;
  std::int64_t d = 0;
  BigInt size = 1;  // C(d+n, n)

  static DiscreteSimplex make(int n, std::int64_t d);
  /// Members in graded order.
  std::vector<OrthantPoint> points() const;
  bool contains(std::span<const std::int64_t> x) const;
};

BigInt simplex_size(int n, std::int64_t d);

struct CoveringVerdict {
  bool covered = false;
  std::optional<Rational> density;  // present iff covered
  std::optional<IntVec> witness;    // present iff not covered
  std::int64_t tile_diameter = 0;

  bool operator==(const CoveringVerdict&) const = default;
};

/// Decides S°(n,d) + L = Z^n through the tile diameter.
CoveringVerdict covers_discrete(int n, std::int64_t d, const IntegerLattice& lattice);

/// C(d+n, n) / det(L). Throws NotACovering.
Rational discrete_density(int n, std::int64_t d, const IntegerLattice& lattice);

struct ContinuousLift {
  std::int64_t dilation = 0;      // d + n
  Rational continuous_density;    // vol(S(n, d+n)) / det(L)
};

/// Continuous covering by S(n, d+n) implied by a discrete covering.
ContinuousLift lift_to_continuous(int n, std::int64_t d, const IntegerLattice& lattice);

/// Rounds each coordinate of k * row to the nearest integer (ties toward
/// +inf) and normalizes. Throws SingularAfterRounding.
IntegerLattice round_scaled_lattice(const std::vector<std::vector<double>>& real_basis, double k);

/// Grid falsifier for S(n, D) + L = E^n. Scans (1/resolution) Z^n over the
/// fundamental box of L and returns the lexicographically first sample that
/// no translate covers. nullopt is evidence of covering, not proof.
std::optional<std::vector<Rational>> continuous_cover_falsify(int n, const Rational& D, const IntegerLattice& lattice,
                                                              int resolution, int threads = 0);
std::optional<std::vector<Rational>> continuous_cover_falsify_serial(int n, const Rational& D,
                                                                     const IntegerLattice& lattice, int resolution);

/// True iff some v in L has p - v >= 0 componentwise and sum(p - v) <= D.
bool continuous_point_covered(std::span<const Rational> p, const Rational& D, const IntegerLattice& lattice);

}  // namespace simplexcover
