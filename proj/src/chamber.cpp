#include "k3cone/chamber.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "k3cone/errors.hpp"
#include "k3cone/lattice_io.hpp"
#include "k3cone/lorentz.hpp"

namespace k3cone {

nlohmann::json Chamber::to_json() const {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& r : walls) w.push_back(vector_to_json(r.vec));
  return {{"ample", vector_to_json(ample)}, {"height_bound", height_bound}, {"walls", std::move(w)}};
}

Chamber chamber_from_json(const GramLattice& L, const nlohmann::json& j) {
  Chamber C{L, vector_from_json(j.at("ample")), {}, j.at("height_bound").get<std::int64_t>(), 0};
  for (const auto& w : j.at("walls")) {
    LatticeVector v = vector_from_json(w);
    Integer h = L.inner(v, C.ample);
    C.walls.push_back({std::move(v), std::move(h)});
  }
  return C;
}

LatticeVector reflect(const GramLattice& L, const LatticeVector& d, const LatticeVector& x) {
  if (L.norm(d) != -2) throw InputError("reflect: " + d.to_string() + " is not a (-2)-root");
  return x + L.inner(x, d) * d;
}

bool is_generic_interior(const GramLattice& L, const LatticeVector& a) {
  return L.norm(a) > 0 && height_slice(L, a, 0, -2).empty();
}

namespace {

// Lexicographic on (|x_i|, x_i < 0).
bool shell_less(const LatticeVector& u, const LatticeVector& v) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Integer au = abs(u[i]), av = abs(v[i]);
    if (au != av) return au < av;
    if ((u[i] < 0) != (v[i] < 0)) return u[i] >= 0;
  }
  return false;
}

std::vector<LatticeVector> shell(std::size_t n, long r) {
  std::vector<LatticeVector> out;
  std::vector<long> c(n, -r);
  for (;;) {
    long m = 0;
    for (long x : c) m = std::max(m, std::abs(x));
    if (m == r) {
      std::vector<Integer> v(c.begin(), c.end());
      out.emplace_back(std::move(v));
    }
    std::size_t i = 0;
    while (i < n && c[i] == r) c[i++] = -r;
    if (i == n) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end(), shell_less);
  return out;
}

}  // namespace

LatticeVector find_interior_point(const GramLattice& L, int max_box) {
  for (long r = 1; r <= max_box; ++r)
    for (const auto& a : shell(L.dim(), r))
      if (is_generic_interior(L, a)) return a;
  throw SearchExhausted("no interior point found: no vector with |a_i| <= " + std::to_string(max_box) +
                        " has positive norm and avoids every root hyperplane");
}

Chamber vinberg_walls(const GramLattice& L, const LatticeVector& a, std::int64_t max_height) {
  if (max_height < 1) throw InputError("height bound must be at least 1");
  Chamber C{L, a, {}, max_height, 0};
  const auto roots = enumerate_roots(L, a, max_height);
  C.roots_examined = roots.size();
  for (const auto& d : roots) {
    bool ok = true;
    for (const auto& w : C.walls)
      if (L.inner(d, w.vec) < 0) {
        ok = false;
        break;
      }
    if (ok) C.walls.push_back({d, L.inner(d, a)});
  }
  return C;
}

bool in_chamber(const Chamber& C, const LatticeVector& x) {
  if (x.size() != C.lattice.dim()) throw InputError("in_chamber: dimension mismatch");
  for (const auto& w : C.walls)
    if (C.lattice.inner(x, w.vec) <= 0) return false;
  // With no walls the chamber is the positive cone component of the ample class.
  return C.lattice.norm(x) > 0 && C.lattice.inner(x, C.ample) > 0;
}

std::string to_string(WallPair p) {
  switch (p) {
    case WallPair::intersecting: return "intersecting";
    case WallPair::tangent: return "tangent";
    case WallPair::ultraparallel: return "ultraparallel";
  }
  return "?";
}

WallPair wall_pair_class(const GramLattice& L, const Root& d1, const Root& d2) {
  if (L.norm(d1.vec) != -2 || L.norm(d2.vec) != -2) throw InputError("wall_pair_class needs (-2)-roots");
  if (d1.vec == d2.vec) throw InputError("wall_pair_class: a wall is not paired with itself");
  const Integer p = L.inner(d1.vec, d2.vec);
  if (p < 0)
    throw InternalError("walls " + d1.vec.to_string() + " and " + d2.vec.to_string() + " pair negatively");
  if (p < 2) return WallPair::intersecting;
  if (p == 2) return WallPair::tangent;
  return WallPair::ultraparallel;
}

nlohmann::json DirichletReport::to_json() const {
  return {{"trials", trials},
          {"comparisons", comparisons},
          {"disagreements", disagreements},
          {"max_residual", max_residual},
          {"witnesses", witnesses}};
}

DirichletReport dirichlet_equivalence_check(const Chamber& C, std::size_t trials, std::uint64_t seed) {
  const GramLattice& L = C.lattice;
  const auto g = gram_to_lorentz(L, C.ample);
  const Vec A = g.hyperboloid_point(L, C.ample);
  const Eigen::Index d = A.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(0, 3);

  std::vector<Vec> D, SA;
  for (const auto& w : C.walls) {
    D.push_back(g.model(w.vec));
    SA.push_back(A - lorentz_inner(A, D.back()) * D.back());
  }

  DirichletReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    // Geodesic from A in a random tangent direction.
    Vec v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = normal(rng);
    v += lorentz_inner(v, A) * A;
    v /= std::sqrt(lorentz_inner(v, v));
    const double s = radius(rng);
    const Vec X = std::cosh(s) * A + std::sinh(s) * v;
    const auto px = ModelPoint::hyperboloid(X);
    const double d_a = dist(px, ModelPoint::hyperboloid(A));
    for (std::size_t k = 0; k < D.size(); ++k) {
      const double xd = -lorentz_inner(X, D[k]);
      const double ad = -lorentz_inner(A, D[k]);
      const double diff = dist(px, ModelPoint::hyperboloid(SA[k])) - d_a;
      const double identity = (-lorentz_inner(X, SA[k]) + lorentz_inner(X, A)) - xd * ad;
      rep.max_residual = std::max(rep.max_residual, std::abs(identity) / std::max(1.0, std::abs(xd * ad)));
      if (std::abs(diff) < 1e-9) continue;
      ++rep.comparisons;
      if ((xd > 0) != (diff > 0)) {
        ++rep.disagreements;
        if (rep.witnesses.size() < 10)
          rep.witnesses.push_back("wall " + C.walls[k].vec.to_string() + " trial " + std::to_string(t));
      }
    }
  }
  return rep;
}

}  // namespace k3cone
