#pragma once

// Exact linear algebra over Z and Q used by the lattice layer.

#include <cstddef>
#include <vector>

#include "k3cone/integer.hpp"

namespace k3cone {

Integer determinant(const IntMatrix& m);

/// Rank of the row space (rows are the vectors).
std::size_t rank(const IntMatrix& rows);

/// Diagonal of the Smith normal form, absolute values, zeros included at the end.
std::vector<Integer> smith_diagonal(IntMatrix m);

/// Inverse of an invertible rational matrix; throws InputError when singular.
RatMatrix inverse(const RatMatrix& m);

/// Unimodular column reduction of an integer row vector.
///
/// Produces U (unimodular, det ±1) and its inverse with row * U = (d, 0, ..., 0),
/// d = gcd(row) >= 0. Columns 1..n-1 of U form a basis of the integral kernel of
/// the functional x -> row . x.
struct RowReduction {
  IntMatrix U;
  IntMatrix U_inv;
  Integer gcd;
};

RowReduction reduce_row(const std::vector<Integer>& row);

/// Result of an exact congruence diagonalization: P^T * G * P = diag(d).
struct CongruenceForm {
  RatMatrix P;
  std::vector<Rational> diagonal;
  bool degenerate = false;
};

/// Symmetric Gaussian reduction over Q. Pivots on the smallest-index nonzero
/// diagonal entry; when the active block has a zero diagonal it first replaces
/// basis vector i by e_i + e_j for the smallest off-diagonal pair (i, j) with a
/// nonzero entry. Sets `degenerate` when the remaining block is identically zero.
CongruenceForm congruence_diagonalize(const IntMatrix& gram);

}  // namespace k3cone
