#pragma once

// Integral lattices with a non-degenerate even symmetric form, and the exact
// enumerations of (-2)-roots and primitive isotropic vectors on them.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "k3cone/integer.hpp"

namespace k3cone {

class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t dim) : coords_(dim) {}
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long> coords);

  static LatticeVector unit(std::size_t dim, std::size_t i) {
    LatticeVector v(dim);
    v[i] = 1;
    return v;
  }

  std::size_t size() const { return coords_.size(); }
  const std::vector<Integer>& coords() const { return coords_; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const;
  Integer content() const { return gcd_of(coords_); }
  /// Divides by the gcd of the coordinates; the zero vector is returned unchanged.
  LatticeVector primitive() const;

  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  LatticeVector& operator*=(const Integer& s);

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Integer& s, LatticeVector a) { return a *= s; }
  friend LatticeVector operator-(LatticeVector a) { return a *= Integer(-1); }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords_ == b.coords_; }
  /// Lexicographic on coordinates.
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) { return a.coords_ < b.coords_; }

  std::string to_string() const;
  std::vector<double> to_double() const;

 private:
  std::vector<Integer> coords_;
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct DiscriminantGroup {
  /// Smith invariants of the Gram matrix, factors equal to 1 dropped.
  std::vector<Integer> invariant_factors;
  Integer order() const;
};

/// Primitive vector e with <e,e> = 0 oriented by <e,a> > 0.
struct IsotropicClass {
  LatticeVector vec;
  Integer height;
};

class GramLattice {
 public:
  /// Validates symmetry, evenness and non-degeneracy (InputError otherwise).
  /// Signature is not restricted here; see require_hyperbolic().
  explicit GramLattice(IntMatrix gram, std::string name = {});

  std::size_t dim() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  const Signature& signature() const { return signature_; }
  const Integer& det() const { return det_; }

  /// Throws InputError unless the signature is (1, dim-1).
  void require_hyperbolic() const;

  Integer inner(const LatticeVector& x, const LatticeVector& y) const;
  Integer norm(const LatticeVector& x) const { return inner(x, x); }
  /// Row vector x -> <x, v>, i.e. gram * v.
  std::vector<Integer> functional(const LatticeVector& v) const;

 private:
  IntMatrix gram_;
  std::string name_;
  Signature signature_;
  Integer det_;
};

/// Exact signature by rational congruence reduction; InputError when degenerate.
Signature signature(const IntMatrix& gram);
inline Signature signature(const GramLattice& L) { return L.signature(); }

DiscriminantGroup discriminant_group(const GramLattice& L);

inline Integer inner(const GramLattice& L, const LatticeVector& x, const LatticeVector& y) {
  return L.inner(x, y);
}

/// All vectors v with <v,v> = norm and <v,a> = height exactly.
/// Requires <a,a> > 0, which makes the slice a compact ellipsoid problem.
std::vector<LatticeVector> height_slice(const GramLattice& L, const LatticeVector& a, const Integer& height,
                                        const Integer& norm);

/// {d : <d,d> = -2, 0 < <d,a> <= max_height}, ordered by (height, lexicographic).
std::vector<LatticeVector> enumerate_roots(const GramLattice& L, const LatticeVector& a, std::int64_t max_height);

/// Primitive isotropic classes with 0 < <e,a> <= max_height, ordered by (height, lexicographic).
std::vector<IsotropicClass> enumerate_isotropic(const GramLattice& L, const LatticeVector& a,
                                                std::int64_t max_height);

/// Rank of the span of all norm -2 vectors of a negative definite Gram matrix.
/// The empty (0 x 0) matrix is accepted and has rank 0.
std::size_t definite_root_rank(const IntMatrix& gram);

/// All v with v^T G v = -2 for negative definite G (both signs included).
std::vector<LatticeVector> definite_roots(const IntMatrix& gram);

/// Coordinate box bound |v_i| <= floor(sqrt(-2 (G^{-1})_ii)) containing every
/// norm -2 vector of a negative definite G.
std::vector<Integer> definite_root_box(const IntMatrix& gram);

}  // namespace k3cone
