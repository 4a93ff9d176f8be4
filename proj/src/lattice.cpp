#include "k3cone/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "k3cone/ellipsoid.hpp"
#include "k3cone/errors.hpp"
#include "k3cone/integer_linalg.hpp"

namespace k3cone {

LatticeVector::LatticeVector(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

LatticeVector LatticeVector::primitive() const {
  const Integer g = content();
  if (g == 0 || g == 1) return *this;
  LatticeVector out = *this;
  for (auto& c : out.coords_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  if (o.size() != size()) throw InputError("vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  if (o.size() != size()) throw InputError("vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator*=(const Integer& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size(); ++i) os << (i ? "," : "") << coords_[i].get_str();
  os << ')';
  return os.str();
}

std::vector<double> LatticeVector::to_double() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& c : coords_) out.push_back(c.get_d());
  return out;
}

Integer DiscriminantGroup::order() const {
  Integer p = 1;
  for (const auto& f : invariant_factors) p *= f;
  return p;
}

Signature signature(const IntMatrix& gram) {
  const CongruenceForm form = congruence_diagonalize(gram);
  if (form.degenerate) throw InputError("degenerate bilinear form");
  Signature s;
  for (const auto& d : form.diagonal) (d > 0 ? s.positive : s.negative)++;
  return s;
}

GramLattice::GramLattice(IntMatrix gram, std::string name) : gram_(std::move(gram)), name_(std::move(name)) {
  if (!gram_.is_square() || gram_.rows() == 0) throw InputError("Gram matrix must be square and non-empty");
  if (!gram_.is_symmetric()) throw InputError("Gram matrix is not symmetric");
  for (std::size_t i = 0; i < dim(); ++i)
    if (!mpz_even_p(gram_(i, i).get_mpz_t()))
      throw InputError("Gram matrix has an odd diagonal entry at " + std::to_string(i) + " (lattice must be even)");
  det_ = determinant(gram_);
  if (det_ == 0) throw InputError("Gram matrix is degenerate (determinant 0)");
  signature_ = k3cone::signature(gram_);
}

void GramLattice::require_hyperbolic() const {
  if (signature_.positive != 1 || signature_.negative + 1 != dim()) {
    throw InputError("expected signature (1," + std::to_string(dim() - 1) + "), got (" +
                     std::to_string(signature_.positive) + "," + std::to_string(signature_.negative) + ")");
  }
}

Integer GramLattice::inner(const LatticeVector& x, const LatticeVector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw InputError("vector length does not match lattice dimension");
  Integer s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < dim(); ++j) row += gram_(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

std::vector<Integer> GramLattice::functional(const LatticeVector& v) const {
  if (v.size() != dim()) throw InputError("vector length does not match lattice dimension");
  std::vector<Integer> f(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) f[i] += gram_(i, j) * v[j];
  return f;
}

DiscriminantGroup discriminant_group(const GramLattice& L) {
  DiscriminantGroup g;
  for (auto& d : smith_diagonal(L.gram()))
    if (d != 1) g.invariant_factors.push_back(d);
  std::sort(g.invariant_factors.begin(), g.invariant_factors.end());
  return g;
}

std::vector<LatticeVector> height_slice(const GramLattice& L, const LatticeVector& a, const Integer& height,
                                        const Integer& norm) {
  if (L.norm(a) <= 0) throw InputError("slice direction " + a.to_string() + " is not in the positive cone");
  const std::size_t n = L.dim();
  const RowReduction red = reduce_row(L.functional(a));
  if (!mpz_divisible_p(height.get_mpz_t(), red.gcd.get_mpz_t())) return {};
  Integer scale;
  mpz_divexact(scale.get_mpz_t(), height.get_mpz_t(), red.gcd.get_mpz_t());

  // x = x0 + K c with K spanning the integral kernel of <., a>.
  LatticeVector x0(n);
  for (std::size_t i = 0; i < n; ++i) x0[i] = scale * red.U(i, 0);
  std::vector<LatticeVector> kernel;
  for (std::size_t j = 1; j < n; ++j) kernel.emplace_back(red.U.column(j));

  const std::size_t m = kernel.size();
  RatMatrix Q(m, m);
  std::vector<Integer> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      Q(i, j) = -L.inner(kernel[i], kernel[j]);
      Q(j, i) = Q(i, j);
    }
    b[i] = L.inner(kernel[i], x0);
  }
  // <x,x> = <x0,x0> + 2 c.b - c^T Q c ; complete the square around c* = Q^{-1} b.
  std::vector<Rational> center(m);
  Rational bc = 0;
  if (m > 0) {
    const RatMatrix Qinv = inverse(Q);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) center[i] += Qinv(i, j) * b[j];
      bc += center[i] * b[i];
    }
  }
  const Rational target = Rational(L.norm(x0) - norm) + bc;
  if (target < 0) return {};

  std::vector<LatticeVector> out;
  enumerate_ellipsoid(Q, center, target, [&](std::span<const Integer> c, const Rational& v) {
    if (v != target) return;
    LatticeVector x = x0;
    for (std::size_t j = 0; j < m; ++j)
      if (c[j] != 0) x += c[j] * kernel[j];
    if (L.norm(x) != norm || L.inner(x, a) != height) throw InternalError("slice enumeration produced a bad vector");
    out.push_back(std::move(x));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticeVector> enumerate_roots(const GramLattice& L, const LatticeVector& a, std::int64_t max_height) {
  if (L.norm(a) <= 0) throw InputError("vector " + a.to_string() + " is not in the positive cone");
  std::vector<LatticeVector> out;
  for (std::int64_t h = 1; h <= max_height; ++h) {
    auto slice = height_slice(L, a, Integer(static_cast<long>(h)), Integer(-2));
    out.insert(out.end(), std::make_move_iterator(slice.begin()), std::make_move_iterator(slice.end()));
  }
  return out;
}

std::vector<IsotropicClass> enumerate_isotropic(const GramLattice& L, const LatticeVector& a,
                                                std::int64_t max_height) {
  if (L.norm(a) <= 0) throw InputError("vector " + a.to_string() + " is not in the positive cone");
  std::vector<IsotropicClass> out;
  for (std::int64_t h = 1; h <= max_height; ++h) {
    const Integer height(static_cast<long>(h));
    for (auto& v : height_slice(L, a, height, Integer(0)))
      if (v.content() == 1) out.push_back({std::move(v), height});
  }
  return out;
}

namespace {

RatMatrix negated_definite(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw InputError("Gram matrix is not symmetric");
  const std::size_t n = gram.rows();
  if (n > 0) {
    const Signature s = signature(gram);
    if (s.positive != 0) throw InputError("Gram matrix is not negative definite");
  }
  RatMatrix Q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Q(i, j) = -gram(i, j);
  return Q;
}

}  // namespace

std::vector<LatticeVector> definite_roots(const IntMatrix& gram) {
  const RatMatrix Q = negated_definite(gram);
  const std::vector<Rational> zero(Q.rows());
  std::vector<LatticeVector> out;
  for (auto& v : ellipsoid_shell(Q, zero, Rational(2))) out.emplace_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t definite_root_rank(const IntMatrix& gram) {
  const auto roots = definite_roots(gram);
  if (roots.empty()) return 0;
  IntMatrix rows(roots.size(), gram.rows());
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = 0; j < gram.rows(); ++j) rows(i, j) = roots[i][j];
  return rank(rows);
}

std::vector<Integer> definite_root_box(const IntMatrix& gram) {
  const RatMatrix Q = negated_definite(gram);
  const RatMatrix Qinv = Q.rows() ? inverse(Q) : RatMatrix();
  std::vector<Integer> box(Q.rows());
  for (std::size_t i = 0; i < Q.rows(); ++i) {
    const Rational r = 2 * Qinv(i, i);
    Integer s = Integer(std::floor(std::sqrt(r.get_d())));
    while (Rational(s * s) > r) --s;
    while (Rational((s + 1) * (s + 1)) <= r) ++s;
    box[i] = s;
  }
  return box;
}

}  // namespace k3cone
