#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "simplexcover/errors.hpp"
#include "simplexcover/rational.hpp"

namespace simplexcover {

/// Dimensions above this are rejected; nothing past it is enumerable anyway.
inline constexpr int kMaxDim = 16;

/// Full-rank sublattice of Z^n held in canonical Hermite normal form.
///
/// Rows are basis vectors. The basis is lower-triangular: row i is
/// (h[i][0], ..., h[i][i], 0, ..., 0) with h[i][i] >= 1 and every entry below
/// a diagonal entry reduced into [0, h[j][j]) within its column. Two
/// generating sets of the same lattice give bit-identical bases, so the
/// defaulted comparison is lexicographic order on the flattened matrix.
///
/// The fundamental box {r : 0 <= r_i < h[i][i]} holds exactly one point of
/// every coset, and reduce() maps x to that point by back-substitution.
class IntegerLattice {
 public:
  /// Normalizes any generating set of rows (length n each) spanning a
  /// rank-n lattice. Throws SingularBasis or DimensionMismatch.
  static IntegerLattice from_generators(const std::vector<std::vector<BigInt>>& rows, int n);
  static IntegerLattice from_rows(const std::vector<IntVec>& rows);
  static IntegerLattice identity(int n);
  /// Diagonal lattice k*Z^n.
  static IntegerLattice scaled_identity(int n, std::int64_t k);

  int dim() const noexcept { return n_; }
  std::int64_t entry(int row, int col) const { return basis_[static_cast<std::size_t>(row * n_ + col)]; }
  std::int64_t diagonal(int i) const { return entry(i, i); }
  std::span<const std::int64_t> flat() const noexcept { return basis_; }
  std::vector<IntVec> rows() const;

  /// [Z^n : L] as a machine integer. Always fits: construction rejects larger indices.
  std::int64_t index() const noexcept { return index_; }
  BigInt determinant() const { return BigInt(index_); }

  /// Canonical coset representative in the fundamental box.
  IntVec reduce(std::span<const std::int64_t> x) const;
  void reduce_in_place(std::span<std::int64_t> x) const;
  /// Mixed-radix position of reduce(x) in [0, index()).
  std::int64_t residue_index(std::span<const std::int64_t> x) const;
  bool contains(std::span<const std::int64_t> x) const;
  bool same_coset(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const;

  auto operator<=>(const IntegerLattice&) const = default;
  bool operator==(const IntegerLattice&) const = default;

 private:
  IntegerLattice(int n, std::vector<std::int64_t> basis);
  friend std::vector<IntegerLattice> enumerate_sublattices(int n, std::int64_t index);

  int n_ = 0;
  std::vector<std::int64_t> basis_;
  std::int64_t index_ = 0;
};

IntegerLattice hnf_normalize(const std::vector<IntVec>& rows);
BigInt determinant(const IntegerLattice& lattice);
IntVec reduce_mod(const IntegerLattice& lattice, std::span<const std::int64_t> x);
bool same_coset(const IntegerLattice& lattice, std::span<const std::int64_t> x,
                std::span<const std::int64_t> y);

/// Every lattice of index exactly `index` in Z^n, in lexicographic order of
/// the flattened HNF. For n = 2 the count is sigma(index).
std::vector<IntegerLattice> enumerate_sublattices(int n, std::int64_t index);

}  // namespace simplexcover
