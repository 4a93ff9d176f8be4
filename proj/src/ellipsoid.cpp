#include "k3cone/ellipsoid.hpp"

#include <cmath>

#include "k3cone/errors.hpp"

namespace k3cone {

namespace {

// Q(y) = sum_i q(i,i) * (y_i + sum_{j>i} q(i,j) y_j)^2, Cohen's "square completion".
RatMatrix complete_squares(const RatMatrix& Q) {
  const std::size_t m = Q.rows();
  RatMatrix q = Q;
  for (std::size_t i = 0; i < m; ++i) {
    if (q(i, i) <= 0) throw InputError("ellipsoid form is not positive definite");
    for (std::size_t j = i + 1; j < m; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < m; ++k)
      for (std::size_t l = k; l < m; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  return q;
}

struct Walker {
  const RatMatrix& q;
  std::span<const Rational> center;
  const std::function<void(std::span<const Integer>, const Rational&)>& visit;
  std::vector<Integer> c;
  std::vector<Rational> y;  // c - center

  void level(std::size_t i, const Rational& used, const Rational& bound) {
    // Center of coordinate i given the coordinates above it.
    Rational t = center[i];
    for (std::size_t j = i + 1; j < c.size(); ++j) t -= q(i, j) * y[j];
    const Rational room = (bound - used) / q(i, i);
    if (room < 0) return;

    const double span_est = std::sqrt(room.get_d()) * (1.0 + 1e-9) + 1.0;
    Integer lo(std::floor(t.get_d() - span_est));
    Integer hi(std::ceil(t.get_d() + span_est));
    auto fits = [&](const Integer& x) {
      Rational d = x - t;
      return d * d <= room;
    };
    while (lo <= hi && !fits(lo)) ++lo;
    while (hi >= lo && !fits(hi)) --hi;

    for (Integer x = lo; x <= hi; ++x) {
      c[i] = x;
      y[i] = x - center[i];
      Rational d = x - t;
      Rational now = used + q(i, i) * d * d;
      if (i == 0)
        visit(c, now);
      else
        level(i - 1, now, bound);
    }
  }
};

}  // namespace

void enumerate_ellipsoid(const RatMatrix& Q, std::span<const Rational> center, const Rational& bound,
                         const std::function<void(std::span<const Integer>, const Rational&)>& visit) {
  const std::size_t m = Q.rows();
  if (!Q.is_square() || center.size() != m) throw InputError("ellipsoid dimension mismatch");
  if (bound < 0) return;
  if (m == 0) {
    visit({}, Rational(0));
    return;
  }
  const RatMatrix q = complete_squares(Q);
  Walker w{q, center, visit, std::vector<Integer>(m), std::vector<Rational>(m)};
  w.level(m - 1, Rational(0), bound);
}

std::vector<std::vector<Integer>> ellipsoid_shell(const RatMatrix& Q, std::span<const Rational> center,
                                                  const Rational& value) {
  std::vector<std::vector<Integer>> out;
  enumerate_ellipsoid(Q, center, value, [&](std::span<const Integer> c, const Rational& v) {
    if (v == value) out.emplace_back(c.begin(), c.end());
  });
  return out;
}

}  // namespace k3cone
