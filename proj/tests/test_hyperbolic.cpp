#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "k3cone/errors.hpp"
#include "k3cone/hyperbolic.hpp"
#include "k3cone/lorentz.hpp"

using namespace k3cone;

namespace {

std::mt19937_64 rng(2024);

Vec random_vec(Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

Vec random_ball(Eigen::Index n, double rmax) {
  for (;;) {
    Vec v = random_vec(n, -rmax, rmax);
    if (v.norm() < rmax) return v;
  }
}

Vec random_upper(Eigen::Index n) {
  Vec v = random_vec(n, -3, 3);
  v(n - 1) = std::exp(random_vec(1, -2, 2)(0));
  return v;
}

// cosh d = 1 + 2|x-y|^2 / ((1-|x|^2)(1-|y|^2))
double ball_oracle(const Vec& x, const Vec& y) {
  return std::acosh(1 + 2 * (x - y).squaredNorm() / ((1 - x.squaredNorm()) * (1 - y.squaredNorm())));
}

// cosh d = 1 + |x-y|^2 / (2 x_n y_n)
double upper_oracle(const Vec& x, const Vec& y) {
  const Eigen::Index n = x.size() - 1;
  return std::acosh(1 + (x - y).squaredNorm() / (2 * x(n) * y(n)));
}

MoebiusGenerator random_generator(Eigen::Index n) {
  if (std::uniform_int_distribution<int>(0, 1)(rng)) {
    Vec a = random_vec(n, -1, 1).normalized();
    return PlaneReflection{a, random_vec(1, -2, 2)(0)};
  }
  return SphereInversion{random_vec(n, -2, 2), random_vec(1, 0.5, 2)(0)};
}

Mat random_lorentz(Eigen::Index n) {
  // Spatial rotation (QR of a random matrix) composed with a boost.
  Eigen::HouseholderQR<Mat> qr(Mat(random_vec(n * n, -1, 1).reshaped(n, n)));
  Mat R = Mat::Identity(n + 1, n + 1);
  R.topLeftCorner(n, n) = qr.householderQ();
  return R * lorentz_boost(n, random_vec(1, -1.5, 1.5)(0)) * R.transpose();
}

// Lorentz matrix of a ball Moebius map, recovered from its action on n+1 points
// of the hyperboloid (the action is linear there).
Mat lorentz_of_ball_map(const std::function<Vec(const Vec&)>& phi, Eigen::Index n) {
  Mat P(n + 1, n + 1), Q(n + 1, n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) {
    Vec b = Vec::Zero(n);
    if (k < n) b(k) = 0.4;
    if (k == n) b = Vec::Constant(n, -0.2);
    P.col(k) = stereo(b);
    Q.col(k) = stereo(phi(b));
  }
  return Q * P.inverse();
}

}  // namespace

TEST_CASE("lorentz_inner examples") {
  Vec t = Vec::Zero(4);
  t(3) = 1;
  CHECK(lorentz_inner(t, t) == -1);
  Vec x = Vec::Zero(4);
  x(0) = 1;
  CHECK(lorentz_inner(x, t) == 0);
  Vec p = Vec::Zero(3);
  p(0) = 3;
  p(2) = std::sqrt(10.0);
  CHECK(lorentz_inner(p, p) == doctest::Approx(-1).epsilon(1e-14));
  CHECK_THROWS_AS(lorentz_inner(p, t), InputError);
}

TEST_CASE("model point validation") {
  CHECK_THROWS_AS(ModelPoint::ball(Vec::Constant(2, 0.8)), InputError);
  CHECK_THROWS_AS(ModelPoint::upper_half(Vec::Zero(2)), InputError);
  Vec bad(3);
  bad << 0, 0, -1;
  CHECK_THROWS_AS(ModelPoint::hyperboloid(bad), InputError);
  bad << 1, 0, 1;
  CHECK_THROWS_AS(ModelPoint::hyperboloid(bad), InputError);
}

TEST_CASE("distance examples") {
  const auto o = ModelPoint::ball(Vec::Zero(3));
  CHECK(dist(o, o) == 0);
  Vec h(3);
  h << 0.5, 0, 0;
  CHECK(dist(o, ModelPoint::ball(h)) == doctest::Approx(std::acosh(5.0 / 3.0)).epsilon(1e-12));
  Vec a(2), b(2);
  a << 0, 1;
  b << 0, std::exp(1.0);
  CHECK(dist(ModelPoint::upper_half(a), ModelPoint::upper_half(b)) == doctest::Approx(1).epsilon(1e-12));
  CHECK_THROWS_AS(dist(o, ModelPoint::upper_half(Vec::Ones(3))), InputError);
}

TEST_CASE("stereographic projection") {
  const Vec apex = stereo(Vec::Zero(3));
  CHECK(apex.head(3).norm() == 0);
  CHECK(apex(3) == 1);
  for (int t = 0; t < 1000; ++t) {
    const Vec x = random_ball(3, 0.95);
    REQUIRE((stereo_inv(stereo(x)) - x).cwiseAbs().maxCoeff() < kRoundTripTol);
    REQUIRE_NOTHROW(ModelPoint::hyperboloid(stereo(x)));
  }
  CHECK_THROWS_AS(stereo(Vec::Ones(2)), InputError);
}

TEST_CASE("zeta is an isometry on 1000 random pairs") {
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const Vec x = random_ball(3, 0.9), y = random_ball(3, 0.9);
    const double dh = dist(ModelPoint::hyperboloid(stereo(x)), ModelPoint::hyperboloid(stereo(y)));
    worst = std::max(worst, std::abs(dh - ball_oracle(x, y)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("plane reflection") {
  Vec e1 = Vec::Zero(3);
  e1(0) = 1;
  CHECK((reflect_plane(e1, 1.0, Vec(Vec::Zero(3))) - 2 * e1).norm() == 0);
  Vec on(3);
  on << 1, 5, -2;
  CHECK((reflect_plane(e1, 1.0, on) - on).norm() == 0);
  CHECK_THROWS_AS(reflect_plane(Vec(2 * e1), 1.0, on), InputError);
  CHECK(reflect_plane(e1, 1.0, ExtPoint::infinity(3)).is_infinity());
}

TEST_CASE("sphere inversion") {
  Vec e2(2);
  e2 << 0, 1;
  const ExtPoint y = invert_sphere(e2, std::sqrt(2.0), ExtPoint(Vec::Zero(2)));
  CHECK((y.finite() + e2).norm() < 1e-15);
  Vec on(2);
  on << 1, 2;  // |on - e2| = sqrt 2
  CHECK((invert_sphere(e2, std::sqrt(2.0), ExtPoint(on)).finite() - on).norm() < 1e-15);
  CHECK(invert_sphere(e2, 1.0, ExtPoint(e2)).is_infinity());
  CHECK((invert_sphere(e2, 1.0, ExtPoint::infinity(2)).finite() - e2).norm() == 0);
}

TEST_CASE("generators are involutions") {
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto g = random_generator(3);
    const Vec x = random_vec(3, -3, 3);
    const Vec y = apply_generator(g, apply_generator(g, ExtPoint(x))).finite();
    worst = std::max(worst, (y - x).norm() / std::max(1.0, x.norm()));
  }
  CHECK(worst < kRoundTripTol);
}

TEST_CASE("standard transformation") {
  Vec en = Vec::Zero(3);
  en(2) = 1;
  CHECK(standard_transformation(ExtPoint(en)).finite().norm() < 1e-15);
  CHECK((standard_transformation(ExtPoint(Vec::Zero(3))).finite() + en).norm() < 1e-15);
  CHECK((standard_transformation(ExtPoint::infinity(3)).finite() - en).norm() == 0);

  double worst = 0, worst_rt = 0;
  for (int t = 0; t < 1000; ++t) {
    const Vec x = random_upper(3), y = random_upper(3);
    const auto bx = standard_transformation(ModelPoint::upper_half(x));
    const auto by = standard_transformation(ModelPoint::upper_half(y));
    CHECK(bx.coords().norm() < 1);
    worst = std::max(worst, std::abs(dist(bx, by) - upper_oracle(x, y)));
    worst = std::max(worst, std::abs(dist(ModelPoint::upper_half(x), ModelPoint::upper_half(y)) - upper_oracle(x, y)));
    worst = std::max(worst, std::abs(ball_oracle(bx.coords(), by.coords()) - upper_oracle(x, y)));
    worst_rt = std::max(worst_rt, (standard_transformation_inv(ExtPoint(bx.coords())).finite() - x).norm());
  }
  CHECK(worst < 1e-9);
  CHECK(worst_rt < 1e-10);
}

TEST_CASE("Poincare extension") {
  CHECK(poincare_extension(MoebiusMap{}).word.empty());
  const Vec p = random_upper(3);
  CHECK((poincare_extension(MoebiusMap{})(ExtPoint(p)).finite() - p).norm() == 0);

  for (int t = 0; t < 50; ++t) {
    MoebiusMap w1, w2;
    for (int k = 0; k < 3; ++k) w1.word.push_back(random_generator(2));
    for (int k = 0; k < 2; ++k) w2.word.push_back(random_generator(2));
    const MoebiusMap e1 = poincare_extension(w1), e2 = poincare_extension(w2), e12 = poincare_extension(w1 * w2);
    for (int s = 0; s < 20; ++s) {
      const Vec u = random_upper(3);
      const ExtPoint a = e12(ExtPoint(u)), b = e1(e2(ExtPoint(u)));
      REQUIRE(a.is_infinity() == b.is_infinity());
      if (a.is_infinity()) continue;
      REQUIRE((a.finite() - b.finite()).norm() <= 1e-12 * std::max(1.0, a.finite().norm()));
      REQUIRE(a.finite()(2) > 0);
    }
  }
}

TEST_CASE("classify basic types") {
  CHECK(classify(LorentzIsometry(Mat::Identity(4, 4))) == IsometryType::elliptic);
  CHECK(classify(LorentzIsometry(lorentz_boost(3, 0.7))) == IsometryType::hyperbolic);

  // Translation of E^2 by (0.8, -0.3) as two parallel reflections, extended to U^3,
  // conjugated into the ball by eta and read off as a Lorentz matrix.
  Vec w(2);
  w << 0.8, -0.3;
  const Vec a = w.normalized();
  const MoebiusMap translate = poincare_extension(MoebiusMap{{PlaneReflection{a, w.norm() / 2}, PlaneReflection{a, 0}}});
  const Mat P = lorentz_of_ball_map(
      [&](const Vec& b) {
        return standard_transformation(translate(standard_transformation_inv(ExtPoint(b)))).finite();
      },
      3);
  const LorentzIsometry g(P);
  CHECK(classify(g) == IsometryType::parabolic);
  CHECK_THROWS_AS(LorentzIsometry(Mat::Identity(3, 3) * 2), InputError);
  Mat flip = Mat::Identity(3, 3);
  flip(2, 2) = -1;
  CHECK_THROWS_AS(LorentzIsometry{flip}, InputError);
}

TEST_CASE("classify is conjugation invariant") {
  Vec w(2);
  w << 0.5, 1.1;
  const Vec a = w.normalized();
  const MoebiusMap translate = poincare_extension(MoebiusMap{{PlaneReflection{a, w.norm() / 2}, PlaneReflection{a, 0}}});
  const LorentzIsometry par(lorentz_of_ball_map(
      [&](const Vec& b) {
        return standard_transformation(translate(standard_transformation_inv(ExtPoint(b)))).finite();
      },
      3));
  const LorentzIsometry hyp(lorentz_boost(3, 1.2));
  Mat rot = Mat::Identity(4, 4);
  rot.topLeftCorner(2, 2) << std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0);
  const LorentzIsometry ell(rot);
  for (int t = 0; t < 200; ++t) {
    const LorentzIsometry g(random_lorentz(3));
    REQUIRE(classify(g * par * g.inverse()) == IsometryType::parabolic);
    REQUIRE(classify(g * hyp * g.inverse()) == IsometryType::hyperbolic);
    REQUIRE(classify(g * ell * g.inverse()) == IsometryType::elliptic);
  }
}

TEST_CASE("gram_to_lorentz") {
  const IntMatrix D{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}};
  CHECK((gram_to_lorentz(D).M - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0);

  const IntMatrix U{{0, 1}, {1, 0}};
  const auto gu = gram_to_lorentz(U);
  CHECK(gu.residual(U) < 1e-12);
  // Oracle: the 45 degree change of basis (x+y, x-y)/sqrt 2 diagonalizes U to diag(1,-1).
  Mat B(2, 2);
  B << 1, 1, 1, -1;
  B /= std::sqrt(2.0);
  Mat Jp(2, 2);
  Jp << 1, 0, 0, -1;
  CHECK((B.transpose() * Jp * B - Mat{{0, 1}, {1, 0}}).cwiseAbs().maxCoeff() < 1e-15);

  for (const auto* m : {&fixtures::kY2, &fixtures::kY3, &fixtures::kCantor}) {
    const auto L = fixtures::lattice(*m);
    CHECK(gram_to_lorentz(L).residual(L.gram()) < 1e-9);
  }
  CHECK_THROWS_AS(gram_to_lorentz(IntMatrix{{2, 0}, {0, 2}}), InputError);
}

TEST_CASE("model vectors reproduce the lattice form with opposite sign") {
  const auto L = fixtures::lattice(fixtures::kY2);
  const LatticeVector a{0, 1, 0, 1};
  const auto g = gram_to_lorentz(L, a);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int t = 0; t < 500; ++t) {
    const LatticeVector x{d(rng), d(rng), d(rng), d(rng)}, y{d(rng), d(rng), d(rng), d(rng)};
    REQUIRE(lorentz_inner(g.model(x), g.model(y)) == doctest::Approx(-L.inner(x, y).get_d()).epsilon(1e-12).scale(10));
  }
  CHECK(g.hyperboloid_point(L, a)(3) > 0);
  CHECK_THROWS_AS(g.hyperboloid_point(L, -a), InputError);
}

TEST_CASE("lattice reflections are elliptic") {
  for (const auto* m : {&fixtures::kY2, &fixtures::kY3, &fixtures::kCantor}) {
    const auto L = fixtures::lattice(*m);
    const auto g = gram_to_lorentz(L);
    const LatticeVector a = L.dim() == 4 ? LatticeVector{0, 1, 0, 1} : L.dim() == 5 ? LatticeVector{0, 0, 1, 0, 1} : LatticeVector{1, 0, 0};
    for (const auto& r : enumerate_roots(L, a, 12)) REQUIRE(classify(g.isometry(reflection_matrix(L, r))) == IsometryType::elliptic);
  }
}

TEST_CASE("cusp frame agrees with the generic model maps and distances") {
  const auto L = fixtures::lattice(fixtures::kY2);
  const LatticeVector a{0, 1, 0, 1};
  const auto g = gram_to_lorentz(L, a);
  const LatticeVector e{0, 0, 0, 1};
  const CuspFrame F(L, g, e);
  std::vector<LatticeVector> pts;
  std::uniform_int_distribution<long> d(-3, 3);
  while (pts.size() < 60) {
    LatticeVector x{d(rng), d(rng), d(rng), d(rng)};
    if (L.norm(x) > 0 && L.inner(x, a) > 0) pts.push_back(x);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec u = F.upper_half(pts[i]);
    REQUIRE(u(2) > 0);
    // Generic route: hyperboloid -> ball -> eta^-1.
    const Vec r = F.rotated(pts[i]) / std::sqrt(L.norm(pts[i]).get_d());
    const Vec u2 = standard_transformation_inv(ExtPoint(stereo_inv(r))).finite();
    REQUIRE((u - u2).norm() < 1e-9 * std::max(1.0, u.norm()));
    for (std::size_t j = 0; j < i; ++j) {
      const double want = std::acosh(L.inner(pts[i], pts[j]).get_d() / std::sqrt(Integer(L.norm(pts[i]) * L.norm(pts[j])).get_d()));
      REQUIRE(upper_oracle(u, F.upper_half(pts[j])) == doctest::Approx(want).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(CuspFrame(L, g, LatticeVector{1, 0, 0, 0}), InputError);
}
