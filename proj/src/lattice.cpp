#include "simplexcover/lattice.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

namespace simplexcover {

namespace {

using BigRow = std::vector<BigInt>;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("lattice dimension out of range");
}

}  // namespace

IntegerLattice::IntegerLattice(int n, std::vector<std::int64_t> basis)
    : n_(n), basis_(std::move(basis)), index_(1) {
  for (int i = 0; i < n_; ++i) index_ *= diagonal(i);
}

IntegerLattice IntegerLattice::from_generators(const std::vector<std::vector<BigInt>>& rows, int n) {
  check_dim(n);
  std::vector<BigRow> active;
  for (const auto& row : rows) {
    if (row.size() != static_cast<std::size_t>(n)) throw DimensionMismatch(n, row.size());
    active.push_back(row);
  }

  // Column by column from the right: Euclid on the active rows leaves one
  // pivot row with the column gcd, every other active row gets a zero there.
  std::vector<BigRow> hnf(static_cast<std::size_t>(n));
  for (int col = n - 1; col >= 0; --col) {
    while (true) {
      std::size_t pivot = active.size();
      for (std::size_t r = 0; r < active.size(); ++r) {
        if (active[r][col] == 0) continue;
        if (pivot == active.size() || abs(active[r][col]) < abs(active[pivot][col])) pivot = r;
      }
      if (pivot == active.size()) throw SingularBasis();
      bool reduced_all = true;
      for (std::size_t r = 0; r < active.size(); ++r) {
        if (r == pivot || active[r][col] == 0) continue;
        const BigInt q = active[r][col] / active[pivot][col];
        for (int c = 0; c <= col; ++c) active[r][c] -= q * active[pivot][c];
        if (active[r][col] != 0) reduced_all = false;
      }
      if (reduced_all) {
        BigRow row = std::move(active[pivot]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(pivot));
        if (row[col] < 0) {
          for (auto& v : row) v = -v;
        }
        hnf[static_cast<std::size_t>(col)] = std::move(row);
        break;
      }
    }
  }

  // Reduce below-diagonal entries; right to left so later steps only touch
  // columns that are still unreduced.
  for (int col = n - 1; col >= 0; --col) {
    const BigRow& pivot = hnf[static_cast<std::size_t>(col)];
    for (int r = col + 1; r < n; ++r) {
      BigRow& row = hnf[static_cast<std::size_t>(r)];
      const BigInt q = floor_div(row[col], pivot[col]);
      if (q == 0) continue;
      for (int c = 0; c <= col; ++c) row[c] -= q * pivot[c];
    }
  }

  BigInt det = 1;
  for (int i = 0; i < n; ++i) det *= hnf[static_cast<std::size_t>(i)][i];
  if (det > std::numeric_limits<std::int64_t>::max() / 2)
    throw std::overflow_error("lattice index exceeds 64-bit range");

  std::vector<std::int64_t> flat(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      flat[static_cast<std::size_t>(r * n + c)] = hnf[static_cast<std::size_t>(r)][c].convert_to<std::int64_t>();
  return IntegerLattice(n, std::move(flat));
}

IntegerLattice IntegerLattice::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) throw SingularBasis();
  const int n = static_cast<int>(rows.front().size());
  std::vector<std::vector<BigInt>> big;
  big.reserve(rows.size());
  for (const auto& row : rows) big.emplace_back(row.begin(), row.end());
  return from_generators(big, n);
}

IntegerLattice IntegerLattice::identity(int n) { return scaled_identity(n, 1); }

IntegerLattice IntegerLattice::scaled_identity(int n, std::int64_t k) {
  check_dim(n);
  if (k < 1) throw SingularBasis();
  std::vector<std::int64_t> flat(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) flat[static_cast<std::size_t>(i * n + i)] = k;
  return IntegerLattice(n, std::move(flat));
}

std::vector<IntVec> IntegerLattice::rows() const {
  std::vector<IntVec> out(static_cast<std::size_t>(n_));
  for (int r = 0; r < n_; ++r) out[static_cast<std::size_t>(r)].assign(basis_.begin() + r * n_, basis_.begin() + (r + 1) * n_);
  return out;
}

void IntegerLattice::reduce_in_place(std::span<std::int64_t> x) const {
  if (x.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch(n_, x.size());
  for (int i = n_ - 1; i >= 0; --i) {
    const std::int64_t q = floor_div(x[i], diagonal(i));
    if (q == 0) continue;
    const std::int64_t* row = basis_.data() + i * n_;
    for (int c = 0; c <= i; ++c) x[c] -= q * row[c];
  }
}

IntVec IntegerLattice::reduce(std::span<const std::int64_t> x) const {
  IntVec r(x.begin(), x.end());
  reduce_in_place(r);
  return r;
}

std::int64_t IntegerLattice::residue_index(std::span<const std::int64_t> x) const {
  if (x.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch(n_, x.size());
  std::array<std::int64_t, kMaxDim> buf{};
  std::copy(x.begin(), x.end(), buf.begin());
  reduce_in_place(std::span<std::int64_t>(buf.data(), x.size()));
  std::int64_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i) idx = idx * diagonal(i) + buf[static_cast<std::size_t>(i)];
  return idx;
}

bool IntegerLattice::contains(std::span<const std::int64_t> x) const {
  return residue_index(x) == 0;
}

bool IntegerLattice::same_coset(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const {
  if (y.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch(n_, y.size());
  return residue_index(x) == residue_index(y);
}

IntegerLattice hnf_normalize(const std::vector<IntVec>& rows) { return IntegerLattice::from_rows(rows); }

BigInt determinant(const IntegerLattice& lattice) { return lattice.determinant(); }

IntVec reduce_mod(const IntegerLattice& lattice, std::span<const std::int64_t> x) { return lattice.reduce(x); }

bool same_coset(const IntegerLattice& lattice, std::span<const std::int64_t> x,
                std::span<const std::int64_t> y) {
  return lattice.same_coset(x, y);
}

std::vector<IntegerLattice> enumerate_sublattices(int n, std::int64_t index) {
  check_dim(n);
  if (index < 1) throw std::invalid_argument("index must be positive");

  std::vector<IntegerLattice> out;
  std::vector<std::int64_t> diag(static_cast<std::size_t>(n));
  std::vector<std::int64_t> flat(static_cast<std::size_t>(n * n), 0);

  // Fill the strictly-lower entries of column `col` (rows col+1..n-1) as an
  // odometer over [0, diag[col]) and recurse into the next column.
  auto fill_lower = [&](auto&& self, int col) -> void {
    if (col < 0) {
      out.push_back(IntegerLattice(n, flat));
      return;
    }
    const int below = n - 1 - col;
    std::vector<std::int64_t> digits(static_cast<std::size_t>(below), 0);
    while (true) {
      for (int k = 0; k < below; ++k) flat[static_cast<std::size_t>((col + 1 + k) * n + col)] = digits[static_cast<std::size_t>(k)];
      self(self, col - 1);
      int k = below - 1;
      while (k >= 0 && ++digits[static_cast<std::size_t>(k)] == diag[static_cast<std::size_t>(col)]) digits[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
  };

  auto choose_diag = [&](auto&& self, int i, std::int64_t remaining) -> void {
    if (i == n - 1) {
      diag[static_cast<std::size_t>(i)] = remaining;
      for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(j * n + j)] = diag[static_cast<std::size_t>(j)];
      fill_lower(fill_lower, n - 1);
      return;
    }
    for (std::int64_t a = 1; a <= remaining; ++a) {
      if (remaining % a != 0) continue;
      diag[static_cast<std::size_t>(i)] = a;
      self(self, i + 1, remaining / a);
    }
  };
  choose_diag(choose_diag, 0, index);

  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace simplexcover
