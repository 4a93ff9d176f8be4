#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "k3cone/chamber.hpp"
#include "k3cone/errors.hpp"
#include "k3cone/lorentz.hpp"

using namespace k3cone;
using fixtures::plain;

namespace {

std::mt19937_64 rng(77);

LatticeVector random_vector(std::size_t n, long r) {
  std::uniform_int_distribution<long> d(-r, r);
  std::vector<Integer> c;
  for (std::size_t i = 0; i < n; ++i) c.emplace_back(d(rng));
  return LatticeVector(std::move(c));
}

// Numeric oracle in the ball model: the boundary circle of a wall with model
// vector (d, t) is {xi in S^{n-1} : xi . d = t}. Two such circles are tangent,
// crossing or disjoint as the distance from the origin to the flat
// {xi . d1 = t1, xi . d2 = t2} equals, is below or exceeds 1.
WallPair numeric_pair(const Vec& D1, const Vec& D2) {
  const Eigen::Index n = D1.size() - 1;
  const Vec d1 = D1.head(n), d2 = D2.head(n);
  Eigen::Matrix2d g;
  g << d1.dot(d1), d1.dot(d2), d2.dot(d1), d2.dot(d2);
  Eigen::Vector2d t(D1(n), D2(n));
  const double r2 = t.dot(g.inverse() * t);
  if (std::abs(r2 - 1) < 1e-6) return WallPair::tangent;
  return r2 < 1 ? WallPair::intersecting : WallPair::ultraparallel;
}

const LatticeVector kY2a{0, 1, 0, 1};
const LatticeVector kY3a{0, 0, 1, 0, 1};

}  // namespace

TEST_CASE("reflection examples") {
  const auto L = fixtures::lattice(fixtures::kY2);
  const LatticeVector e1{1, 0, 0, 0}, e4{0, 0, 0, 1};
  CHECK(reflect(L, e1, e1) == -e1);
  // (0,0,1,-1) is a root orthogonal to (1,-1,0,0)
  CHECK(L.inner(LatticeVector{0, 0, 1, -1}, LatticeVector{1, -1, 0, 0}) == 0);
  CHECK(reflect(L, LatticeVector{0, 0, 1, -1}, LatticeVector{1, -1, 0, 0}) == LatticeVector{1, -1, 0, 0});
  CHECK(reflect(L, e1, e4) == e4 + Integer(4) * e1);
  CHECK_THROWS_AS(reflect(L, e4, e1), InputError);
}

TEST_CASE("reflections preserve the form and are involutions") {
  const auto L = fixtures::lattice(fixtures::kY3);
  const auto roots = enumerate_roots(L, kY3a, 15);
  std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
  for (int t = 0; t < 10000; ++t) {
    const auto& d = roots[pick(rng)];
    const LatticeVector x = random_vector(5, 50), y = random_vector(5, 50);
    const LatticeVector sx = reflect(L, d, x);
    REQUIRE(L.inner(sx, reflect(L, d, y)) == L.inner(x, y));
    REQUIRE(reflect(L, d, sx) == x);
  }
}

TEST_CASE("find_interior_point") {
  // (1,0,0) is generic here: -4y^2 - 6z^2 = -2 has no solution.
  CHECK(find_interior_point(GramLattice(IntMatrix{{2, 0, 0}, {0, -4, 0}, {0, 0, -6}})) == LatticeVector{1, 0, 0});
  // ... but not for diag(2,-2,-2), where (0,1,0) is an orthogonal root.
  CHECK(find_interior_point(GramLattice(IntMatrix{{2, 0, 0}, {0, -2, 0}, {0, 0, -2}})) != LatticeVector{1, 0, 0});
  CHECK(find_interior_point(fixtures::lattice(fixtures::kY2)) == kY2a);
  CHECK(find_interior_point(fixtures::lattice(fixtures::kY3)) == kY3a);
  CHECK(find_interior_point(fixtures::lattice(fixtures::kCantor)) == LatticeVector{1, 0, 0});
  for (const auto* m : {&fixtures::kY2, &fixtures::kY3, &fixtures::kCantor}) {
    const auto L = fixtures::lattice(*m);
    const auto a = find_interior_point(L);
    CHECK(L.norm(a) > 0);
    // Oracle: no root orthogonal to a inside the brute-force box.
    CHECK(oracle::brute_slice(*m, plain(a), 0, -2).empty());
    const auto box = oracle::slice_box(*m, plain(a), 0, -2);
    int orth = 0;
    oracle::box(box, [&](const oracle::Vec& v) {
      if (oracle::inner(*m, v, v) == -2 && oracle::inner(*m, v, plain(a)) == 0) ++orth;
    });
    CHECK(orth == 0);
  }
  CHECK_THROWS_AS(find_interior_point(GramLattice(IntMatrix{{-2, 1}, {1, -2}})), SearchExhausted);
}

TEST_CASE("vinberg walls on Y2") {
  const auto L = fixtures::lattice(fixtures::kY2);
  const Chamber C = vinberg_walls(L, kY2a, 20);
  CHECK(C.roots_examined == 59);
  std::set<oracle::Vec> w;
  for (const auto& r : C.walls) w.insert(plain(r.vec));
  CHECK(w.count({1, 0, 0, 0}) == 1);
  CHECK(w.count({0, 1, 0, 0}) == 1);
  CHECK(w.count({0, 0, 1, 0}) == 1);
  CHECK(C.walls.size() == 11);  // independent numpy replay of the acceptance rule
  for (const auto& a : C.walls) {
    CHECK(L.inner(a.vec, kY2a) > 0);
    CHECK(a.height == L.inner(a.vec, kY2a));
    for (const auto& b : C.walls)
      if (!(a.vec == b.vec)) CHECK(oracle::inner(fixtures::kY2, plain(a.vec), plain(b.vec)) >= 0);
  }
}

TEST_CASE("vinberg walls with no roots") {
  const GramLattice L(IntMatrix{{2, 0}, {0, -8}});
  const Chamber C = vinberg_walls(L, LatticeVector{1, 0}, 50);
  CHECK(C.walls.empty());
  CHECK(in_chamber(C, LatticeVector{1, 0}));
}

TEST_CASE("vinberg walls are prefix stable in the height bound") {
  for (const auto* m : {&fixtures::kY2, &fixtures::kY3, &fixtures::kCantor}) {
    const auto L = fixtures::lattice(*m);
    const auto a = find_interior_point(L);
    const auto big = vinberg_walls(L, a, 18).walls;
    for (std::int64_t H = 1; H <= 18; H += 4) {
      const auto small = vinberg_walls(L, a, H).walls;
      REQUIRE(small.size() <= big.size());
      for (std::size_t i = 0; i < small.size(); ++i) REQUIRE(small[i].vec == big[i].vec);
      for (std::size_t i = small.size(); i < big.size(); ++i) REQUIRE(big[i].height > H);
    }
  }
}

TEST_CASE("chamber invariants on random small hyperbolic lattices") {
  std::uniform_int_distribution<long> off(-3, 3), dia(-2, 1);
  int done = 0;
  for (int t = 0; t < 2000 && done < 20; ++t) {
    const std::size_t n = 3 + t % 2;
    IntMatrix G(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) G(i, j) = G(j, i) = (i == j ? 2 * dia(rng) : off(rng));
    if (!G.is_symmetric()) continue;
    Signature s;
    try {
      s = signature(G);
    } catch (const InputError&) {
      continue;
    }
    if (s.positive != 1) continue;
    const GramLattice L(G);
    LatticeVector a;
    try {
      a = find_interior_point(L);
    } catch (const SearchExhausted&) {
      continue;
    }
    const Chamber C = vinberg_walls(L, a, 10);
    for (std::size_t i = 0; i < C.walls.size(); ++i) {
      REQUIRE(L.norm(C.walls[i].vec) == -2);
      REQUIRE(L.inner(C.walls[i].vec, a) > 0);
      for (std::size_t j = 0; j < i; ++j) REQUIRE(L.inner(C.walls[i].vec, C.walls[j].vec) >= 0);
    }
    REQUIRE(in_chamber(C, a));
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("in_chamber") {
  const auto L = fixtures::lattice(fixtures::kY2);
  const Chamber C = vinberg_walls(L, kY2a, 20);
  CHECK(in_chamber(C, kY2a));
  CHECK_FALSE(in_chamber(C, LatticeVector(4)));
  for (const auto& w : C.walls) CHECK_FALSE(in_chamber(C, reflect(L, w.vec, kY2a)));
}

TEST_CASE("wall pair classes") {
  const auto L = fixtures::lattice(fixtures::kY2);
  const Root e1{LatticeVector{1, 0, 0, 0}, 6}, e2{LatticeVector{0, 1, 0, 0}, 2};
  CHECK(wall_pair_class(L, e1, e2) == WallPair::tangent);
  CHECK_THROWS_AS(wall_pair_class(L, e1, e1), InputError);
  CHECK_THROWS_AS(wall_pair_class(L, e1, Root{-e2.vec, -2}), InternalError);

  // U + A2(-1): the two A2 roots pair to 1.
  const GramLattice A(IntMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -2, 1}, {0, 0, 1, -2}});
  const Root r1{LatticeVector{0, 0, 1, 0}, 0}, r2{LatticeVector{0, 0, 0, 1}, 0};
  CHECK(wall_pair_class(A, r1, r2) == WallPair::intersecting);
  const auto g = gram_to_lorentz(A);
  CHECK(numeric_pair(g.model(r1.vec), g.model(r2.vec)) == WallPair::intersecting);
}

TEST_CASE("exact wall pair classes agree with the numeric circle oracle") {
  for (const auto& [m, a] : {std::pair{&fixtures::kY2, kY2a}, std::pair{&fixtures::kY3, kY3a}}) {
    const auto L = fixtures::lattice(*m);
    const Chamber C = vinberg_walls(L, a, 20);
    const auto g = gram_to_lorentz(L, a);
    int tangent = 0;
    for (std::size_t i = 0; i < C.walls.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const WallPair exact = wall_pair_class(L, C.walls[i], C.walls[j]);
        REQUIRE(exact == numeric_pair(g.model(C.walls[i].vec), g.model(C.walls[j].vec)));
        tangent += exact == WallPair::tangent;
        // tangency iff d1 + d2 is isotropic
        REQUIRE((exact == WallPair::tangent) == (L.norm(C.walls[i].vec + C.walls[j].vec) == 0));
      }
    CHECK(tangent > 0);
  }
}

TEST_CASE("Dirichlet domain equivalence") {
  const auto L = fixtures::lattice(fixtures::kY2);
  const Chamber C = vinberg_walls(L, kY2a, 20);
  const auto rep = dirichlet_equivalence_check(C, 1000, 3);
  CHECK(rep.disagreements == 0);
  CHECK(rep.comparisons > 5000);
  CHECK(rep.max_residual < 1e-9);

  // A point on a wall is equidistant from a and its mirror image.
  const auto g = gram_to_lorentz(L, kY2a);
  const Vec A = g.hyperboloid_point(L, kY2a);
  for (const auto& w : C.walls) {
    const Vec D = g.model(w.vec);
    Vec Y = A - 0.5 * lorentz_inner(A, D) * D;
    Y /= std::sqrt(-lorentz_inner(Y, Y));
    CHECK(std::abs(lorentz_inner(Y, D)) < 1e-9);
    const Vec SA = A - lorentz_inner(A, D) * D;
    const auto py = ModelPoint::hyperboloid(Y);
    CHECK(std::abs(dist(py, ModelPoint::hyperboloid(A)) - dist(py, ModelPoint::hyperboloid(SA))) < 1e-6);
    CHECK(dist(ModelPoint::hyperboloid(A), ModelPoint::hyperboloid(A)) < dist(ModelPoint::hyperboloid(A), ModelPoint::hyperboloid(SA)));
  }
}

TEST_CASE("chamber JSON round trip") {
  const auto L = fixtures::lattice(fixtures::kY2);
  const Chamber C = vinberg_walls(L, kY2a, 20);
  const auto j = C.to_json();
  CHECK(j.at("height_bound") == 20);
  const Chamber D = chamber_from_json(L, nlohmann::json::parse(j.dump()));
  REQUIRE(D.walls.size() == C.walls.size());
  for (std::size_t i = 0; i < C.walls.size(); ++i) {
    CHECK(D.walls[i].vec == C.walls[i].vec);
    CHECK(D.walls[i].height == C.walls[i].height);
  }
}
