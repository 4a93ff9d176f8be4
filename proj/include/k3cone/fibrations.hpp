#pragma once

// Elliptic fibrations of isotropic classes: the fiber lattice e^perp/<e>, its
// root rank and the Mordell-Weil rank left over by Shioda-Tate.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "k3cone/lattice.hpp"

namespace k3cone {

struct FiberQuotient {
  /// Gram matrix of e^perp/<e>, negative definite of size rho - 2.
  IntMatrix gram;
  /// Lifts to L of the quotient basis.
  std::vector<LatticeVector> lifts;
};

/// InputError unless e is primitive isotropic; InternalError if the quotient is not
/// negative definite.
FiberQuotient fiber_quotient(const GramLattice& L, const LatticeVector& e);
inline IntMatrix quotient_lattice(const GramLattice& L, const LatticeVector& e) { return fiber_quotient(L, e).gram; }

struct FibrationReport {
  IsotropicClass cls;
  std::size_t fiber_root_rank = 0;
  std::size_t mw_rank = 0;
  nlohmann::json to_json() const;
};

FibrationReport mw_rank(const GramLattice& L, const IsotropicClass& e);
FibrationReport mw_rank(const GramLattice& L, const LatticeVector& e);

/// (l, m) = (fiber root rank, Mordell-Weil rank); l + m = rho - 2 is checked.
std::pair<std::size_t, std::size_t> parabolic_rank_decomposition(const GramLattice& L, const LatticeVector& e);

/// Reports for every class of enumerate_isotropic(L, a, H), same order.
std::vector<FibrationReport> fibration_table(const GramLattice& L, const LatticeVector& a, std::int64_t H);

struct MaxMordellWeil {
  std::size_t max = 0;
  IsotropicClass witness;
};

/// First class of maximal rank in (height, lex) order; SearchExhausted when there is
/// no isotropic class up to H.
MaxMordellWeil max_mw_rank(const GramLattice& L, const LatticeVector& a, std::int64_t H);
MaxMordellWeil max_mw_rank(const std::vector<FibrationReport>& table);

}  // namespace k3cone
