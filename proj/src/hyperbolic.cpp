#include "k3cone/hyperbolic.hpp"

#include <cmath>

#include "k3cone/errors.hpp"

namespace k3cone {

namespace {

nlohmann::json vec_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

bool all_finite(const Vec& v) { return v.allFinite(); }

Vec unit_last(Eigen::Index n) {
  Vec e = Vec::Zero(n);
  e(n - 1) = 1;
  return e;
}

ExtPoint rho_last(const ExtPoint& x) {
  if (x.is_infinity()) return x;
  Vec y = x.finite();
  y(y.size() - 1) = -y(y.size() - 1);
  return y;
}

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::hyperboloid: return "hyperboloid";
    case Model::ball: return "ball";
    case Model::upper_half: return "upper_half";
  }
  return "?";
}

ModelPoint ModelPoint::hyperboloid(Vec x) {
  if (x.size() < 2 || !all_finite(x)) throw InputError("hyperboloid point needs at least 2 finite coordinates");
  const double t = x(x.size() - 1);
  if (t <= 0) throw InputError("hyperboloid point must have positive time coordinate");
  if (std::abs(lorentz_inner(x, x) + 1) > kAssertTol * std::max(1.0, t * t))
    throw InputError("point is not on the hyperboloid x o x = -1");
  return ModelPoint(Model::hyperboloid, std::move(x));
}

ModelPoint ModelPoint::ball(Vec x) {
  if (x.size() < 1 || !all_finite(x)) throw InputError("ball point needs finite coordinates");
  if (x.squaredNorm() >= 1) throw InputError("ball point must satisfy |x| < 1");
  return ModelPoint(Model::ball, std::move(x));
}

ModelPoint ModelPoint::upper_half(Vec x) {
  if (x.size() < 1 || !all_finite(x)) throw InputError("upper half-space point needs finite coordinates");
  if (x(x.size() - 1) <= 0) throw InputError("upper half-space point must have positive last coordinate");
  return ModelPoint(Model::upper_half, std::move(x));
}

nlohmann::json ModelPoint::to_json() const { return {{"model", to_string(model_)}, {"coords", vec_json(coords_)}}; }

const Vec& ExtPoint::finite() const {
  if (inf_) throw InputError("point at infinity has no finite coordinates");
  return v_;
}

nlohmann::json ExtPoint::to_json() const {
  if (inf_) return "infinity";
  return vec_json(v_);
}

double lorentz_inner(const Vec& x, const Vec& y) {
  if (x.size() != y.size() || x.size() == 0) throw InputError("lorentz_inner: length mismatch");
  const Eigen::Index n = x.size() - 1;
  return x.head(n).dot(y.head(n)) - x(n) * y(n);
}

double dist(const ModelPoint& p, const ModelPoint& q) {
  if (p.model() != q.model()) throw InputError("dist: points are in different models");
  if (p.coords().size() != q.coords().size()) throw InputError("dist: dimension mismatch");
  switch (p.model()) {
    case Model::hyperboloid: {
      // 4 sinh^2(d/2) = (x-y) o (x-y); better conditioned than arcosh(-x o y) for close points.
      const Vec w = p.coords() - q.coords();
      return 2 * std::asinh(std::sqrt(std::max(0.0, lorentz_inner(w, w))) / 2);
    }
    case Model::ball:
      return dist(ModelPoint::hyperboloid(stereo(p.coords())), ModelPoint::hyperboloid(stereo(q.coords())));
    case Model::upper_half:
      return dist(standard_transformation(p), standard_transformation(q));
  }
  throw InternalError("dist: unknown model");
}

Vec stereo(const Vec& x) {
  const double s = x.squaredNorm();
  if (s >= 1) throw InputError("stereo: |x| must be < 1");
  Vec out(x.size() + 1);
  out.head(x.size()) = 2 * x / (1 - s);
  out(x.size()) = (1 + s) / (1 - s);
  return out;
}

Vec stereo_inv(const Vec& x) {
  const Eigen::Index n = x.size() - 1;
  if (n < 1 || x(n) <= 0) throw InputError("stereo_inv: not a point of the upper sheet");
  return x.head(n) / (1 + x(n));
}

Vec reflect_plane(const Vec& a, double t, const Vec& x) {
  if (a.size() != x.size()) throw InputError("reflect_plane: dimension mismatch");
  if (std::abs(a.norm() - 1) > kAssertTol) throw InputError("reflect_plane: normal is not a unit vector");
  return x + 2 * (t - a.dot(x)) * a;
}

ExtPoint reflect_plane(const Vec& a, double t, const ExtPoint& x) {
  if (x.is_infinity()) return x;
  return reflect_plane(a, t, x.finite());
}

ExtPoint invert_sphere(const Vec& a, double r, const ExtPoint& x) {
  if (!(r > 0)) throw InputError("invert_sphere: radius must be positive");
  if (x.is_infinity()) return a;
  const Vec& p = x.finite();
  if (p.size() != a.size()) throw InputError("invert_sphere: dimension mismatch");
  const Vec d = p - a;
  const double s = d.squaredNorm();
  if (s == 0) return ExtPoint::infinity(a.size());
  return Vec(a + (r * r / s) * d);
}

ExtPoint standard_transformation(const ExtPoint& x) {
  const Eigen::Index n = x.dim();
  if (n < 1) throw InputError("standard_transformation: empty point");
  return invert_sphere(unit_last(n), std::sqrt(2.0), rho_last(x));
}

ExtPoint standard_transformation_inv(const ExtPoint& x) {
  if (x.is_infinity()) throw InputError("standard_transformation_inv: infinity is not in the closed ball");
  const Eigen::Index n = x.finite().size();
  return rho_last(invert_sphere(unit_last(n), std::sqrt(2.0), x));
}

ModelPoint standard_transformation(const ModelPoint& x) {
  if (x.model() != Model::upper_half) throw InputError("standard_transformation expects an upper half-space point");
  return ModelPoint::ball(standard_transformation(ExtPoint(x.coords())).finite());
}

ExtPoint apply_generator(const MoebiusGenerator& g, const ExtPoint& x) {
  if (const auto* p = std::get_if<PlaneReflection>(&g)) return reflect_plane(p->a, p->t, x);
  const auto& s = std::get<SphereInversion>(g);
  return invert_sphere(s.a, s.r, x);
}

ExtPoint MoebiusMap::operator()(const ExtPoint& x) const {
  ExtPoint y = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) y = apply_generator(*it, y);
  return y;
}

MoebiusMap MoebiusMap::operator*(const MoebiusMap& other) const {
  MoebiusMap m{word};
  m.word.insert(m.word.end(), other.word.begin(), other.word.end());
  return m;
}

MoebiusMap poincare_extension(const MoebiusMap& m) {
  auto lift = [](const Vec& a) {
    Vec b = Vec::Zero(a.size() + 1);
    b.head(a.size()) = a;
    return b;
  };
  MoebiusMap out;
  for (const auto& g : m.word) {
    if (const auto* p = std::get_if<PlaneReflection>(&g))
      out.word.emplace_back(PlaneReflection{lift(p->a), p->t});
    else {
      const auto& s = std::get<SphereInversion>(g);
      out.word.emplace_back(SphereInversion{lift(s.a), s.r});
    }
  }
  return out;
}

std::string to_string(IsometryType t) {
  switch (t) {
    case IsometryType::elliptic: return "elliptic";
    case IsometryType::parabolic: return "parabolic";
    case IsometryType::hyperbolic: return "hyperbolic";
    case IsometryType::ambiguous: return "parabolic-or-elliptic ambiguous";
  }
  return "?";
}

Mat lorentz_form(Eigen::Index d) {
  Mat J = Mat::Identity(d, d);
  J(d - 1, d - 1) = -1;
  return J;
}

LorentzIsometry::LorentzIsometry(Mat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2 || !m_.allFinite())
    throw InputError("Lorentz isometry must be a finite square matrix of size >= 2");
  const Mat J = lorentz_form(m_.rows());
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  const double res = (m_.transpose() * J * m_ - J).cwiseAbs().maxCoeff();
  if (res > kAssertTol * scale * scale) throw InputError("matrix does not preserve the Lorentzian form");
  if (m_(m_.rows() - 1, m_.cols() - 1) <= 0) throw InputError("matrix swaps the two sheets of the hyperboloid");
}

LorentzIsometry LorentzIsometry::inverse() const {
  const Mat J = lorentz_form(m_.rows());
  return LorentzIsometry(J * m_.transpose() * J);
}

IsometryType classify(const LorentzIsometry& g) {
  const Mat& A = g.matrix();
  const Eigen::Index d = A.rows();
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  Eigen::JacobiSVD<Mat> svd(A - Mat::Identity(d, d), Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  Eigen::Index nullity = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= 1e-8 * scale) ++nullity;
  if (nullity == 0) return IsometryType::hyperbolic;

  const Mat N = svd.matrixV().rightCols(nullity);
  const Mat F = N.transpose() * lorentz_form(d) * N;
  const double mu = Eigen::SelfAdjointEigenSolver<Mat>(F).eigenvalues().minCoeff();
  constexpr double kParabolic = 1e-8, kBand = 1e-6;
  if (mu < -kBand) return IsometryType::elliptic;
  if (mu > kBand) return IsometryType::hyperbolic;
  if (std::abs(mu) <= kParabolic) return IsometryType::parabolic;
  return IsometryType::ambiguous;
}

Mat lorentz_boost(Eigen::Index n, double s) {
  Mat B = Mat::Identity(n + 1, n + 1);
  B(0, 0) = B(n, n) = std::cosh(s);
  B(0, n) = B(n, 0) = std::sinh(s);
  return B;
}

}  // namespace k3cone
