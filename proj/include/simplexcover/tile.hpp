#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "simplexcover/lattice.hpp"

namespace simplexcover {

/// Nonnegative integer point; m_norm is the coordinate sum (Manhattan distance to o).
class OrthantPoint {
 public:
  explicit OrthantPoint(IntVec coords);

  const IntVec& coords() const noexcept { return coords_; }
  std::int64_t m_norm() const noexcept { return m_norm_; }
  int dim() const noexcept { return static_cast<int>(coords_.size()); }

  bool operator==(const OrthantPoint&) const = default;

 private:
  IntVec coords_;
  std::int64_t m_norm_ = 0;
};

/// Graded order: smaller m_norm first, ties broken lexicographically.
std::strong_ordering prec_compare(const OrthantPoint& x, const OrthantPoint& y);

/// Componentwise x <= y.
bool dominated_by(std::span<const std::int64_t> x, std::span<const std::int64_t> y);

/// Unbounded walk over Z^n ∩ O_n in graded order. Each shell of constant
/// m_norm is produced as the lexicographic sequence of compositions.
class PrecOrderStream {
 public:
  explicit PrecOrderStream(int n);

  const IntVec& current() const noexcept { return point_; }
  std::int64_t current_norm() const noexcept { return norm_; }
  void advance();

 private:
  IntVec point_;
  std::int64_t norm_ = 0;
};

/// The first `count` points of the graded order.
std::vector<OrthantPoint> enumerate_orthant_prec(int n, std::size_t count);

/// Coset representatives of L that come first in the graded order, together
/// with the derived structure used by the covering and search modules.
struct CayleyTile {
  int dim = 0;
  std::vector<OrthantPoint> points;  // graded order
  std::int64_t m_diameter = 0;
  std::optional<OrthantPoint> notch;
  IntegerLattice source_lattice = IntegerLattice::identity(1);

  bool contains(std::span<const std::int64_t> x) const;
  /// Largest coordinate along each axis.
  IntVec axis_max() const;

 private:
  friend CayleyTile build_tile(const IntegerLattice& lattice, int threads);
  std::set<IntVec> members_;
};

/// Per axis i, the points of the tile with coordinate i set to zero.
struct Silhouette {
  std::vector<std::set<IntVec>> projections;
};

CayleyTile build_tile(const IntegerLattice& lattice, int threads = 0);
std::int64_t m_diameter(const CayleyTile& tile);
Silhouette silhouette(const CayleyTile& tile);

/// Points outside the tile whose every axis projection is dominated by a tile
/// point, scanned over [0, axis_max + 1]^n. Sorted lexicographically.
std::vector<IntVec> notch_candidates(const CayleyTile& tile, int threads = 0);
std::vector<IntVec> notch_candidates_serial(const CayleyTile& tile);

/// Unique minimal notch candidate, or nullopt when there are none.
/// Throws MultipleMinimalNotches if the minimum is not unique.
std::optional<OrthantPoint> find_notch(const CayleyTile& tile, int threads = 0);

/// S°(n,d) minus every translate S°(n,d) + v with v a lattice vector and
/// o < v in the graded order (extended to Z^n, where it stays translation
/// invariant). Throws NotACovering when d is below the tile diameter. Result
/// in graded order.
std::vector<OrthantPoint> tile_from_difference(const IntegerLattice& lattice, std::int64_t d);

/// S°(n,d) minus the translates by nonzero lattice vectors in the positive
/// orthant only. Can keep more than det(L) points: for L = <(5,0),(3,1)> and
/// d = 2 nothing is removed.
std::vector<OrthantPoint> orthant_difference(const IntegerLattice& lattice, std::int64_t d);

/// |points| = det(L) and no two points share a coset.
bool is_tiling(std::span<const OrthantPoint> points, const IntegerLattice& lattice);

}  // namespace simplexcover
