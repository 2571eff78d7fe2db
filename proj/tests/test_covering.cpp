#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "simplexcover/covering.hpp"
#include "simplexcover/errors.hpp"

using namespace simplexcover;

namespace {

IntegerLattice l5() { return IntegerLattice::from_rows({{5, 0}, {3, 1}}); }

// Direct coset scan of S°(n,d), no tile involved.
bool covers_by_scan(int n, std::int64_t d, const IntegerLattice& l) {
  std::set<IntVec> seen;
  for (const auto& p : oracle::simplex_points_lex(n, d)) seen.insert(l.reduce(p));
  return static_cast<std::int64_t>(seen.size()) == l.index();
}

}  // namespace

TEST_CASE("simplex_size examples") {
  CHECK(simplex_size(4, 0) == 1);
  CHECK(simplex_size(2, 2) == 6);
  CHECK(simplex_size(3, 2) == 10);
  const auto s = DiscreteSimplex::make(3, 4);
  CHECK(BigInt(s.points().size()) == s.size);
  CHECK(s.contains(IntVec{1, 2, 1}));
  CHECK_FALSE(s.contains(IntVec{1, 2, 2}));
  CHECK_FALSE(s.contains(IntVec{-1, 0, 0}));
}

TEST_CASE("covers_discrete examples") {
  const auto v = covers_discrete(2, 2, l5());
  CHECK(v.covered);
  CHECK(v.density == Rational(6, 5));
  CHECK(v.tile_diameter == 2);

  const auto w = covers_discrete(2, 1, l5());
  CHECK_FALSE(w.covered);
  REQUIRE(w.witness.has_value());
  CHECK(w.witness == IntVec{0, 2});
  CHECK_FALSE(w.density.has_value());

  for (std::int64_t d = 0; d < 5; ++d) {
    const auto u = covers_discrete(3, d, IntegerLattice::identity(3));
    CHECK(u.covered);
    CHECK(u.density == Rational(binomial(d + 3, 3)));
  }
}

TEST_CASE("discrete_density examples") {
  CHECK(discrete_density(2, 2, l5()) == Rational(6, 5));
  CHECK(discrete_density(3, 4, IntegerLattice::identity(3)) == 35);
  CHECK_THROWS_AS(discrete_density(2, 1, l5()), NotACovering);
}

TEST_CASE("density at d = 10 for a best lattice") {
  // search the index-48 lattices for one covered at d = 10
  bool found = false;
  for (const auto& l : enumerate_sublattices(2, 48)) {
    if (!covers_discrete(2, 10, l).covered) continue;
    CHECK(discrete_density(2, 10, l) == Rational(11, 8));
    found = true;
    break;
  }
  CHECK(found);
}

TEST_CASE("lift_to_continuous examples") {
  const auto a = lift_to_continuous(2, 2, l5());
  CHECK(a.dilation == 4);
  CHECK(a.continuous_density == Rational(8, 5));
  for (int n = 1; n <= 4; ++n) {
    const auto b = lift_to_continuous(n, 0, IntegerLattice::identity(n));
    Rational expect = simplexcover::pow(Rational(n), static_cast<unsigned>(n));
    for (int k = 2; k <= n; ++k) expect /= k;
    CHECK(b.dilation == n);
    CHECK(b.continuous_density == expect);
  }
  for (std::int64_t d = 0; d < 6; ++d)
    CHECK(lift_to_continuous(3, d, IntegerLattice::identity(3)).continuous_density ==
          simplexcover::pow(Rational(d + 3), 3) / 6);
  CHECK_THROWS_AS(lift_to_continuous(2, 1, l5()), NotACovering);
}

TEST_CASE("round_scaled_lattice examples") {
  CHECK(round_scaled_lattice({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 7) == IntegerLattice::scaled_identity(3, 7));
  const auto l = round_scaled_lattice({{1.2, 0}, {0.4, 1}}, 10);
  CHECK(l == IntegerLattice::from_rows({{12, 0}, {4, 10}}));
  CHECK(l.index() == 120);
  // ties go up
  CHECK(round_scaled_lattice({{0.5, 0}, {0, 1}}, 1) == IntegerLattice::from_rows({{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(round_scaled_lattice({{0.01, 0}, {0, 1}}, 1), SingularAfterRounding);
}

TEST_CASE("rounded determinants change slowly in k") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> b{{1 + u(rng) * 0.3, u(rng) * 0.3}, {u(rng) * 0.3, 1 + u(rng) * 0.3}};
    for (double k = 20; k < 60; k += 1) {
      const auto d0 = static_cast<double>(round_scaled_lattice(b, k).index());
      const auto d1 = static_cast<double>(round_scaled_lattice(b, k + 1).index());
      CHECK(std::abs(d1 - d0) <= 10.0 * (k + 1));
    }
  }
}

TEST_CASE("continuous falsifier examples") {
  for (int n = 1; n <= 3; ++n)
    CHECK_FALSE(continuous_cover_falsify(n, Rational(n), IntegerLattice::identity(n), 4).has_value());
  CHECK_FALSE(continuous_cover_falsify(2, Rational(4), l5(), 4).has_value());

  const auto l2 = IntegerLattice::scaled_identity(2, 2);
  const auto w = continuous_cover_falsify(2, Rational(1), l2, 2);
  REQUIRE(w.has_value());
  CHECK_FALSE(oracle::continuous_covered_by_enumeration(*w, Rational(1), l2));
  const std::vector<Rational> p{Rational(1), Rational(1, 2)};
  CHECK_FALSE(continuous_point_covered(p, Rational(1), l2));
  CHECK_FALSE(oracle::continuous_covered_by_enumeration(p, Rational(1), l2));
}

TEST_CASE("serial and parallel falsifiers agree") {
  const auto l = IntegerLattice::from_rows({{7, 0, 0}, {3, 1, 0}, {5, 2, 3}});
  for (int D = 1; D <= 5; ++D) {
    const auto a = continuous_cover_falsify(3, Rational(D), l, 3, 4);
    const auto b = continuous_cover_falsify_serial(3, Rational(D), l, 3);
    CHECK(a == b);
    if (a) CHECK_FALSE(oracle::continuous_covered_by_enumeration(*a, Rational(D), l));
  }
}

TEST_CASE("point coverage agrees with enumeration") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> num(-20, 20);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + t % 2;
    const auto l = IntegerLattice::from_rows(oracle::random_lattice_rows(n, 20, rng));
    std::vector<Rational> p;
    for (int i = 0; i < n; ++i) p.emplace_back(num(rng), 1 + (t % 5));
    const Rational D(1 + t % 7, 2);
    CHECK(continuous_point_covered(p, D, l) == oracle::continuous_covered_by_enumeration(p, D, l));
  }
}

TEST_CASE("covering verdict properties") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 120; ++t) {
    const int n = 2 + t % 2;
    const auto l = IntegerLattice::from_rows(oracle::random_lattice_rows(n, 40, rng));
    bool prev = false;
    for (std::int64_t d = 0; d <= 8; ++d) {
      const auto v = covers_discrete(n, d, l);
      CHECK(v.covered == covers_by_scan(n, d, l));
      if (prev) CHECK(v.covered);
      prev = v.covered;
      if (v.covered) {
        CHECK(*v.density >= 1);
        CHECK(simplex_size(n, d) >= l.index());
      } else {
        // no simplex point reaches the witness coset
        for (const auto& p : oracle::simplex_points_lex(n, d)) CHECK_FALSE(l.same_coset(p, *v.witness));
      }
    }
  }
}
