#include "simplexcover/tile.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

#include "simplexcover/parallel.hpp"

namespace simplexcover {

OrthantPoint::OrthantPoint(IntVec coords) : coords_(std::move(coords)) {
  for (const auto c : coords_) {
    if (c < 0) throw std::invalid_argument("orthant point has a negative coordinate");
    m_norm_ += c;
  }
}

std::strong_ordering prec_compare(const OrthantPoint& x, const OrthantPoint& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch(x.coords().size(), y.coords().size());
  if (auto c = x.m_norm() <=> y.m_norm(); c != 0) return c;
  return x.coords() <=> y.coords();
}

bool dominated_by(std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

PrecOrderStream::PrecOrderStream(int n) : point_(static_cast<std::size_t>(n), 0) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
}

void PrecOrderStream::advance() {
  const int n = static_cast<int>(point_.size());
  // Next composition of norm_ in lexicographic order: bump the rightmost
  // position (short of the last) that has mass to its right.
  std::int64_t suffix = point_[static_cast<std::size_t>(n - 1)];
  for (int i = n - 2; i >= 0; --i) {
    if (suffix > 0) {
      ++point_[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < n - 1; ++k) point_[static_cast<std::size_t>(k)] = 0;
      point_[static_cast<std::size_t>(n - 1)] = suffix - 1;
      return;
    }
    suffix += point_[static_cast<std::size_t>(i)];
  }
  // Shell exhausted.
  ++norm_;
  std::fill(point_.begin(), point_.end(), 0);
  point_[static_cast<std::size_t>(n - 1)] = norm_;
}

std::vector<OrthantPoint> enumerate_orthant_prec(int n, std::size_t count) {
  std::vector<OrthantPoint> out;
  out.reserve(count);
  PrecOrderStream stream(n);
  for (std::size_t i = 0; i < count; ++i, stream.advance()) out.emplace_back(stream.current());
  return out;
}

bool CayleyTile::contains(std::span<const std::int64_t> x) const {
  return members_.count(IntVec(x.begin(), x.end())) != 0;
}

IntVec CayleyTile::axis_max() const {
  IntVec m(static_cast<std::size_t>(dim), 0);
  for (const auto& p : points)
    for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i)] = std::max(m[static_cast<std::size_t>(i)], p.coords()[static_cast<std::size_t>(i)]);
  return m;
}

CayleyTile build_tile(const IntegerLattice& lattice, int threads) {
  CayleyTile tile;
  tile.dim = lattice.dim();
  tile.source_lattice = lattice;

  const std::int64_t cosets = lattice.index();
  std::vector<char> seen(static_cast<std::size_t>(cosets), 0);
  std::int64_t found = 0;
  PrecOrderStream stream(lattice.dim());
  while (found < cosets) {
    const std::int64_t r = lattice.residue_index(stream.current());
    if (!seen[static_cast<std::size_t>(r)]) {
      seen[static_cast<std::size_t>(r)] = 1;
      ++found;
      tile.points.emplace_back(stream.current());
      tile.members_.insert(stream.current());
    }
    stream.advance();
  }
  tile.m_diameter = tile.points.back().m_norm();
  tile.notch = find_notch(tile, threads);
  return tile;
}

std::int64_t m_diameter(const CayleyTile& tile) {
  std::int64_t best = 0;
  for (const auto& p : tile.points) best = std::max(best, p.m_norm());
  return best;
}

Silhouette silhouette(const CayleyTile& tile) {
  Silhouette s;
  s.projections.resize(static_cast<std::size_t>(tile.dim));
  for (int axis = 0; axis < tile.dim; ++axis) {
    for (const auto& p : tile.points) {
      IntVec q = p.coords();
      q[static_cast<std::size_t>(axis)] = 0;
      s.projections[static_cast<std::size_t>(axis)].insert(std::move(q));
    }
  }
  return s;
}

namespace {

struct CandidateBox {
  IntVec extent;  // per-axis count of grid values, axis_max + 2
  std::int64_t size = 1;

  explicit CandidateBox(const IntVec& axis_max) {
    for (auto m : axis_max) {
      extent.push_back(m + 2);
      size *= m + 2;
    }
  }

  // Lexicographic decode, axis 0 most significant.
  IntVec point(std::int64_t linear) const {
    IntVec p(extent.size());
    for (std::size_t i = extent.size(); i-- > 0;) {
      p[i] = linear % extent[i];
      linear /= extent[i];
    }
    return p;
  }
};

bool is_candidate(const CayleyTile& tile, const IntVec& p) {
  if (tile.contains(p)) return false;
  for (int axis = 0; axis < tile.dim; ++axis) {
    bool covered = false;
    for (const auto& t : tile.points) {
      bool dominates = true;
      for (int j = 0; j < tile.dim && dominates; ++j)
        if (j != axis && t.coords()[static_cast<std::size_t>(j)] < p[static_cast<std::size_t>(j)]) dominates = false;
      if (dominates) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace

std::vector<IntVec> notch_candidates_serial(const CayleyTile& tile) {
  const CandidateBox box(tile.axis_max());
  std::vector<IntVec> out;
  for (std::int64_t k = 0; k < box.size; ++k) {
    IntVec p = box.point(k);
    if (is_candidate(tile, p)) out.push_back(std::move(p));
  }
  return out;
}

std::vector<IntVec> notch_candidates(const CayleyTile& tile, int threads) {
  const CandidateBox box(tile.axis_max());
  std::vector<char> hit(static_cast<std::size_t>(box.size), 0);
#pragma omp parallel for schedule(dynamic, 64) num_threads(resolve_threads(threads))
  for (std::int64_t k = 0; k < box.size; ++k) hit[static_cast<std::size_t>(k)] = is_candidate(tile, box.point(k));
  std::vector<IntVec> out;
  for (std::int64_t k = 0; k < box.size; ++k)
    if (hit[static_cast<std::size_t>(k)]) out.push_back(box.point(k));
  return out;
}

std::optional<OrthantPoint> find_notch(const CayleyTile& tile, int threads) {
  const auto candidates = notch_candidates(tile, threads);
  if (candidates.empty()) return std::nullopt;
  std::vector<IntVec> minima;
  for (const auto& p : candidates) {
    const bool minimal = std::none_of(candidates.begin(), candidates.end(), [&](const IntVec& q) {
      return q != p && dominated_by(q, p);
    });
    if (minimal) minima.push_back(p);
  }
  if (minima.size() != 1) throw MultipleMinimalNotches(std::move(minima));
  for (const auto& p : candidates)
    if (!dominated_by(minima.front(), p)) throw MultipleMinimalNotches({minima.front(), p});
  return OrthantPoint(minima.front());
}

std::vector<OrthantPoint> tile_from_difference(const IntegerLattice& lattice, std::int64_t d) {
  const int n = lattice.dim();
  const CayleyTile tile = build_tile(lattice);
  if (tile.m_diameter > d) {
    for (const auto& p : tile.points)
      if (p.m_norm() > d) throw NotACovering(p.coords());
  }

  // x lies in S° + v for some lattice v with o < v exactly when x - v, an
  // earlier point of S° (the order is translation invariant), shares its
  // coset. So walk S° in order and drop every point whose coset was seen.
  std::vector<char> seen(static_cast<std::size_t>(lattice.index()), 0);
  std::vector<OrthantPoint> out;
  for (PrecOrderStream stream(n); stream.current_norm() <= d; stream.advance()) {
    const auto r = static_cast<std::size_t>(lattice.residue_index(stream.current()));
    if (seen[r]) continue;
    seen[r] = 1;
    out.emplace_back(stream.current());
  }
  return out;
}

std::vector<OrthantPoint> orthant_difference(const IntegerLattice& lattice, std::int64_t d) {
  const int n = lattice.dim();
  std::vector<OrthantPoint> out;
  for (PrecOrderStream stream(n); stream.current_norm() <= d; stream.advance()) {
    const IntVec& x = stream.current();
    // x is in S° + v for v >= 0 iff 0 <= v <= x; the norm bound is then automatic
    bool removed = false;
    IntVec v(static_cast<std::size_t>(n), 0);
    while (!removed) {
      int k = n - 1;
      while (k >= 0 && ++v[static_cast<std::size_t>(k)] > x[static_cast<std::size_t>(k)]) v[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
      removed = lattice.contains(v);
    }
    if (!removed) out.emplace_back(x);
  }
  return out;
}

bool is_tiling(std::span<const OrthantPoint> points, const IntegerLattice& lattice) {
  if (static_cast<std::int64_t>(points.size()) != lattice.index()) return false;
  std::vector<char> seen(static_cast<std::size_t>(lattice.index()), 0);
  for (const auto& p : points) {
    if (p.dim() != lattice.dim()) return false;
    const auto r = static_cast<std::size_t>(lattice.residue_index(p.coords()));
    if (seen[r]) return false;
    seen[r] = 1;
  }
  return true;
}

}  // namespace simplexcover
