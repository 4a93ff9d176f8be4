#include "k3cone/lorentz.hpp"

#include <cmath>

#include "k3cone/errors.hpp"
#include "k3cone/integer_linalg.hpp"

namespace k3cone {

namespace {

Mat to_double(const IntMatrix& m) {
  Mat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

Vec to_double(const LatticeVector& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].get_d();
  return out;
}

Mat lattice_form(Eigen::Index d) {
  Mat J = -Mat::Identity(d, d);
  J(0, 0) = 1;
  return J;
}

}  // namespace

double GramToLorentz::residual(const IntMatrix& gram) const {
  return (M.transpose() * lattice_form(M.rows()) * M - to_double(gram)).cwiseAbs().maxCoeff();
}

Vec GramToLorentz::model(const Vec& x) const {
  const Vec y = M * x;
  const Eigen::Index n = y.size() - 1;
  Vec out(y.size());
  out.head(n) = y.tail(n);
  out(n) = y(0);
  return out;
}

Vec GramToLorentz::model(const LatticeVector& x) const { return model(to_double(x)); }

Vec GramToLorentz::hyperboloid_point(const GramLattice& L, const LatticeVector& x) const {
  const Integer q = L.norm(x);
  if (q <= 0) throw InputError("hyperboloid_point: vector " + x.to_string() + " is not in the positive cone");
  Vec X = model(x) / std::sqrt(q.get_d());
  if (X(X.size() - 1) <= 0) throw InputError("hyperboloid_point: vector " + x.to_string() + " lies on the lower sheet");
  return X;
}

LorentzIsometry GramToLorentz::isometry(const IntMatrix& g) const {
  const Eigen::Index d = M.rows();
  Mat Pi = Mat::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) Pi(i - 1, i) = 1;
  Pi(d - 1, 0) = 1;
  return LorentzIsometry(Pi * M * to_double(g) * M_inv * Pi.transpose());
}

GramToLorentz gram_to_lorentz(const GramLattice& L) {
  L.require_hyperbolic();
  return gram_to_lorentz(L.gram());
}

GramToLorentz gram_to_lorentz(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  const Signature sig = signature(gram);
  if (sig.positive != 1 || sig.negative + 1 != n) throw InputError("gram_to_lorentz needs signature (1, n)");
  const CongruenceForm cf = congruence_diagonalize(gram);
  if (cf.degenerate) throw InputError("degenerate Gram matrix");
  const RatMatrix R = inverse(cf.P);

  std::size_t pos = n;
  for (std::size_t i = 0; i < n; ++i)
    if (cf.diagonal[i] > 0) pos = i;
  std::vector<std::size_t> order{pos};
  for (std::size_t i = 0; i < n; ++i)
    if (i != pos) order.push_back(i);

  GramToLorentz out;
  out.M.resize(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = order[r];
    const double s = std::sqrt(std::abs(cf.diagonal[i].get_d()));
    for (std::size_t j = 0; j < n; ++j) out.M(r, j) = s * R(i, j).get_d();
  }
  out.M_inv = out.M.inverse();
  return out;
}

GramToLorentz gram_to_lorentz(const GramLattice& L, const LatticeVector& a) {
  GramToLorentz g = gram_to_lorentz(L);
  if (L.norm(a) <= 0) throw InputError("orientation vector must have positive norm");
  if ((g.M * to_double(a))(0) < 0) {
    g.M = -g.M;
    g.M_inv = -g.M_inv;
  }
  return g;
}

IntMatrix reflection_matrix(const GramLattice& L, const LatticeVector& d) {
  if (L.norm(d) != -2) throw InputError("reflection needs a root of norm -2, got " + d.to_string());
  const std::vector<Integer> f = L.functional(d);
  IntMatrix s = IntMatrix::identity(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j) s(i, j) += d[i] * f[j];
  return s;
}

CuspFrame::CuspFrame(const GramLattice& L, const GramToLorentz& g, const LatticeVector& e) : L_(L), g_(g), e_(e) {
  if (L.norm(e) != 0 || e.is_zero()) throw InputError("cusp " + e.to_string() + " is not a nonzero isotropic vector");
  const Vec E = g.model(e);
  const Eigen::Index n = E.size() - 1;
  lambda_ = E(n);
  if (lambda_ <= 0) throw InputError("cusp " + e.to_string() + " is not on the boundary of the upper sheet");
  const Vec s = E.head(n) / lambda_;
  Vec v = s;
  v(n - 1) -= 1;
  Q_ = Mat::Identity(n, n);
  if (v.squaredNorm() > 1e-30) Q_ -= 2 * v * v.transpose() / v.squaredNorm();
}

Vec CuspFrame::rotated(const LatticeVector& x) const {
  Vec X = g_.model(x);
  const Eigen::Index n = X.size() - 1;
  X.head(n) = Q_ * X.head(n);
  return X;
}

Vec CuspFrame::upper_half(const LatticeVector& x) const {
  const Integer q = L_.norm(x);
  const Integer h = L_.inner(x, e_);
  if (q <= 0 || h <= 0) throw InputError("upper_half: " + x.to_string() + " is not an interior point facing the cusp");
  const Vec X = rotated(x);
  const Eigen::Index n = X.size() - 1;
  Vec u(n);
  u.head(n - 1) = X.head(n - 1);
  u(n - 1) = std::sqrt(q.get_d());
  return u * (lambda_ / h.get_d());
}

Vec CuspFrame::boundary(const LatticeVector& x) const {
  const Integer h = L_.inner(x, e_);
  if (L_.norm(x) != 0 || h <= 0) throw InputError("boundary: " + x.to_string() + " is not an isotropic vector facing the cusp");
  const Vec X = rotated(x);
  const Eigen::Index n = X.size() - 1;
  return X.head(n - 1) * (lambda_ / h.get_d());
}

}  // namespace k3cone
