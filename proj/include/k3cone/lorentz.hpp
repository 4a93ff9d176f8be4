#pragma once

// Bridge between a hyperbolic lattice (signature (1,n), <x,x> > 0 on the
// positive cone) and the hyperboloid model (x o x = -1, time coordinate last).
//
// gram_to_lorentz gives M with M^T J' M = G for J' = diag(1,-1,...,-1). The model
// vector of a lattice vector x is X = Pi M x, where Pi moves coordinate 0 to the
// end, so that X o Y = -<x,y>. Roots have X o X = 2, isotropic vectors X o X = 0.

#include "k3cone/hyperbolic.hpp"
#include "k3cone/lattice.hpp"

namespace k3cone {

struct GramToLorentz {
  Mat M;
  Mat M_inv;

  /// max |M^T J' M - G|.
  double residual(const IntMatrix& gram) const;

  /// Pi M x.
  Vec model(const LatticeVector& x) const;
  Vec model(const Vec& x) const;
  /// Model vector of x scaled onto the hyperboloid; requires <x,x> > 0 and the
  /// upper sheet (InputError otherwise).
  Vec hyperboloid_point(const GramLattice& L, const LatticeVector& x) const;
  /// Model matrix Pi M g M^-1 Pi^T of an integral isometry g acting on coordinate columns.
  LorentzIsometry isometry(const IntMatrix& g) const;
};

/// Exact congruence diagonalization P^T G P = D followed by M = diag(sqrt|d|) P^-1,
/// rows permuted so the positive direction comes first. Requires signature (1,n).
GramToLorentz gram_to_lorentz(const GramLattice& L);
/// Any symmetric integer matrix of signature (1,n); evenness is not needed here.
GramToLorentz gram_to_lorentz(const IntMatrix& gram);
/// Same, with the global sign fixed so that a lies on the upper sheet.
GramToLorentz gram_to_lorentz(const GramLattice& L, const LatticeVector& a);

/// Matrix of the reflection s_d(x) = x + <x,d> d on coordinate columns.
IntMatrix reflection_matrix(const GramLattice& L, const LatticeVector& d);

/// Upper half-space coordinates with a chosen isotropic class e at infinity.
///
/// A Householder reflection Q of the spatial part turns the boundary direction of
/// e into e_n. For a model point (s, t) on the hyperboloid the upper half-space
/// point is (s', 1) / (t - s_n) with s' the first n-1 rotated coordinates. The
/// denominator equals <x,e> / (lambda sqrt<x,x>), lambda = time coordinate of the
/// model vector of e, and is evaluated from the exact integer <x,e>.
class CuspFrame {
 public:
  CuspFrame(const GramLattice& L, const GramToLorentz& g, const LatticeVector& e);

  const LatticeVector& cusp() const { return e_; }
  double lambda() const { return lambda_; }
  /// Model vector with the spatial part rotated.
  Vec rotated(const LatticeVector& x) const;
  /// Point of U^n for <x,x> > 0, <x,e> > 0.
  Vec upper_half(const LatticeVector& x) const;
  /// Point of E^{n-1} for an isotropic x with <x,e> > 0.
  Vec boundary(const LatticeVector& x) const;
  Eigen::Index n() const { return Q_.rows(); }

 private:
  GramLattice L_;
  GramToLorentz g_;
  LatticeVector e_;
  Mat Q_;
  double lambda_ = 0;
};

}  // namespace k3cone
