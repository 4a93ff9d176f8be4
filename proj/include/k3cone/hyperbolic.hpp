#pragma once

// Hyperboloid, conformal ball and upper half-space models of hyperbolic space,
// Moebius generators on the one-point compactification, and isometry types.
//
// Model-side conventions: x o y = x_1 y_1 + ... + x_n y_n - x_{n+1} y_{n+1},
// hyperboloid sheet x o x = -1 with x_{n+1} > 0 (time coordinate last).

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace k3cone {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kAssertTol = 1e-9;
inline constexpr double kRoundTripTol = 1e-12;

enum class Model { hyperboloid, ball, upper_half };

std::string to_string(Model m);

/// A point of one of the three models; the factories validate the model invariants.
class ModelPoint {
 public:
  static ModelPoint hyperboloid(Vec x);
  static ModelPoint ball(Vec x);
  static ModelPoint upper_half(Vec x);

  Model model() const { return model_; }
  const Vec& coords() const { return coords_; }
  /// Dimension n of the hyperbolic space (hyperboloid points have n+1 coordinates).
  Eigen::Index dim() const { return model_ == Model::hyperboloid ? coords_.size() - 1 : coords_.size(); }

  nlohmann::json to_json() const;

 private:
  ModelPoint(Model m, Vec x) : model_(m), coords_(std::move(x)) {}
  Model model_;
  Vec coords_;
};

/// A point of E^n or the point at infinity.
class ExtPoint {
 public:
  ExtPoint(Vec v) : v_(std::move(v)) {}
  /// The point at infinity of E^dim.
  static ExtPoint infinity(Eigen::Index dim) { return ExtPoint(dim); }

  bool is_infinity() const { return inf_; }
  Eigen::Index dim() const { return inf_ ? dim_ : v_.size(); }
  /// Throws InputError for the point at infinity.
  const Vec& finite() const;

  nlohmann::json to_json() const;

 private:
  explicit ExtPoint(Eigen::Index dim) : inf_(true), dim_(dim) {}
  Vec v_;
  bool inf_ = false;
  Eigen::Index dim_ = 0;
};

double lorentz_inner(const Vec& x, const Vec& y);

/// Hyperbolic distance; both points must be in the same model.
double dist(const ModelPoint& p, const ModelPoint& q);

/// zeta: B^n -> H^n and its inverse.
Vec stereo(const Vec& x);
Vec stereo_inv(const Vec& x);

/// Reflection in P(a, t) = {a . x = t}; a must be a unit vector.
Vec reflect_plane(const Vec& a, double t, const Vec& x);
ExtPoint reflect_plane(const Vec& a, double t, const ExtPoint& x);

/// Inversion in S(a, r); swaps a and infinity.
ExtPoint invert_sphere(const Vec& a, double r, const ExtPoint& x);

/// eta = sigma rho : U^n -> B^n with rho the reflection in P(e_n, 0) and sigma the
/// inversion in S(e_n, sqrt 2). Defined on all of the extended space so that
/// boundary points can be traced; eta(infinity) = e_n.
ExtPoint standard_transformation(const ExtPoint& x);
/// Inverse of eta (rho sigma).
ExtPoint standard_transformation_inv(const ExtPoint& x);
/// Interior version: validates x in U^n and returns the ball point.
ModelPoint standard_transformation(const ModelPoint& x);

struct PlaneReflection {
  Vec a;
  double t = 0;
};

struct SphereInversion {
  Vec a;
  double r = 1;
};

using MoebiusGenerator = std::variant<PlaneReflection, SphereInversion>;

ExtPoint apply_generator(const MoebiusGenerator& g, const ExtPoint& x);

/// word = (g_1, ..., g_m) denotes g_1 g_2 ... g_m, so g_m acts first.
struct MoebiusMap {
  std::vector<MoebiusGenerator> word;

  ExtPoint operator()(const ExtPoint& x) const;
  /// (this * other)(x) = this(other(x)).
  MoebiusMap operator*(const MoebiusMap& other) const;
};

/// Lifts a map of E^{n-1} to E^n by a -> (a, 0) on every generator.
MoebiusMap poincare_extension(const MoebiusMap& m);

/// Matrix A with A^T J A = J, J = diag(1, ..., 1, -1), preserving the upper sheet.
class LorentzIsometry {
 public:
  /// Validates the form (relative tolerance kAssertTol) and the sheet; InputError otherwise.
  explicit LorentzIsometry(Mat m);
  const Mat& matrix() const { return m_; }
  Vec operator()(const Vec& x) const { return m_ * x; }
  LorentzIsometry operator*(const LorentzIsometry& o) const { return LorentzIsometry(m_ * o.m_); }
  LorentzIsometry inverse() const;

 private:
  Mat m_;
};

Mat lorentz_form(Eigen::Index dim_plus_one);

enum class IsometryType { elliptic, parabolic, hyperbolic, ambiguous };

std::string to_string(IsometryType t);

/// Decides the type from the fixed subspace ker(g - I): the form restricted to it
/// has a negative direction (elliptic), an isotropic direction and no negative one
/// (parabolic), or is positive definite / the subspace is zero (hyperbolic).
/// Values in the band between the two tolerances are reported as ambiguous.
IsometryType classify(const LorentzIsometry& g);

/// Lorentz matrix of the boost by s in the (x_1, x_{n+1}) plane.
Mat lorentz_boost(Eigen::Index n, double s);

}  // namespace k3cone
