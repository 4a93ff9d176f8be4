#pragma once

// Reflections in (-2)-roots and the fundamental chamber containing a chosen
// interior class, with walls accepted in (height, lexicographic) order.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "k3cone/lattice.hpp"

namespace k3cone {

struct Root {
  LatticeVector vec;
  Integer height;  // <vec, a>
};

struct Chamber {
  GramLattice lattice;
  LatticeVector ample;
  std::vector<Root> walls;
  std::int64_t height_bound = 0;
  std::size_t roots_examined = 0;

  nlohmann::json to_json() const;
};

Chamber chamber_from_json(const GramLattice& L, const nlohmann::json& j);

/// s_d(x) = x + <x,d> d.
LatticeVector reflect(const GramLattice& L, const LatticeVector& d, const LatticeVector& x);

/// Smallest sup-norm vector a with <a,a> > 0 lying on no root hyperplane. Within one
/// sup-norm shell candidates are ordered lexicographically with coordinates keyed
/// 0, 1, -1, 2, -2, ...; "no root hyperplane" is the exact emptiness of the
/// height-0 root slice. Throws SearchExhausted past max_box.
LatticeVector find_interior_point(const GramLattice& L, int max_box = 4);

/// True iff <a,a> > 0 and no root is orthogonal to a.
bool is_generic_interior(const GramLattice& L, const LatticeVector& a);

Chamber vinberg_walls(const GramLattice& L, const LatticeVector& a, std::int64_t max_height);

bool in_chamber(const Chamber& C, const LatticeVector& x);

enum class WallPair { intersecting, tangent, ultraparallel };

std::string to_string(WallPair p);

/// Exact trichotomy from <d1,d2>: [0,2) intersecting, 2 tangent, > 2 ultraparallel.
WallPair wall_pair_class(const GramLattice& L, const Root& d1, const Root& d2);

struct DirichletReport {
  std::size_t trials = 0;
  std::size_t comparisons = 0;
  std::size_t disagreements = 0;
  /// Largest |(cosh d(x, s a) - cosh d(x, a)) - <x,d><a,d>/sqrt(<x,x><a,a>)| seen.
  double max_residual = 0;
  std::vector<std::string> witnesses;
  nlohmann::json to_json() const;
};

/// Samples random points x of the hyperboloid around a and compares, for every wall,
/// the sign of <x,d> with the sign of d(x, s_d a) - d(x, a). Pairs whose distance
/// difference is below 1e-9 are counted as ties and skipped.
DirichletReport dirichlet_equivalence_check(const Chamber& C, std::size_t trials, std::uint64_t seed = 1);

}  // namespace k3cone
