#pragma once

// Exact Fincke-Pohst enumeration of integer points in a rational ellipsoid.

#include <functional>
#include <span>
#include <vector>

#include "k3cone/integer.hpp"

namespace k3cone {

/// Visits every integer vector c with (c - center)^T Q (c - center) <= bound.
///
/// Q must be positive definite (checked; InputError otherwise). The visitor gets
/// the point and the exact value of the quadratic form at it. Coordinates are
/// visited last-index-outermost, each index in increasing order, so the visiting
/// order is deterministic. Floating point is used only to seed the per-level
/// interval search; every accept/reject decision is an exact rational comparison.
void enumerate_ellipsoid(const RatMatrix& Q, std::span<const Rational> center, const Rational& bound,
                         const std::function<void(std::span<const Integer>, const Rational&)>& visit);

/// Convenience wrapper collecting the points with form value exactly `value`.
std::vector<std::vector<Integer>> ellipsoid_shell(const RatMatrix& Q, std::span<const Rational> center,
                                                  const Rational& value);

}  // namespace k3cone
