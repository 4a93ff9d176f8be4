#pragma once

// Boundary traces of walls in the upper half-space with a cusp at infinity,
// packing/connectivity certificates and tangent points of the wall configuration.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "k3cone/chamber.hpp"
#include "k3cone/lorentz.hpp"

namespace k3cone {

struct BoundarySphere {
  enum class Kind { sphere, plane };
  Kind kind = Kind::sphere;
  /// sphere: center and radius in E^{n-1}.
  Vec center;
  double radius = 0;
  /// plane: unit normal and offset; the chamber side is {normal . u > offset}.
  Vec normal;
  double offset = 0;
  /// Chamber lies outside the sphere. Always true when the cusp pairs
  /// non-negatively with every wall.
  bool outward = true;
  LatticeVector source;
  Integer height;

  /// Signed curvature: 1/r when the chamber is outside, -1/r inside, 0 for planes.
  double curvature() const;
  nlohmann::json to_json() const;
  static BoundarySphere from_json(const nlohmann::json& j);
  friend bool operator==(const BoundarySphere&, const BoundarySphere&);
};

/// Upper half-space picture of the walls with `cusp` at infinity, scaled by `scale`.
class PackingFrame {
 public:
  PackingFrame(const GramLattice& L, const LatticeVector& a, const LatticeVector& cusp, double scale = 1);

  /// Plane iff <d, cusp> = 0 (exact); otherwise center d'/k, radius sqrt2/|k| with
  /// k = <d, cusp>/lambda, d' the first n-1 rotated spatial coordinates.
  BoundarySphere wall_to_sphere(const Root& d) const;
  /// Boundary point of an isotropic class other than the cusp.
  Vec boundary_point(const LatticeVector& e) const;
  const CuspFrame& frame() const { return frame_; }
  double scale() const { return scale_; }
  void set_scale(double s) { scale_ = s; }

 private:
  GramLattice L_;
  GramToLorentz g_;
  CuspFrame frame_;
  double scale_ = 1;
};

BoundarySphere wall_to_sphere(const GramLattice& L, const LatticeVector& a, const Root& d, const LatticeVector& cusp);

/// Lowest-height primitive isotropic class pairing non-negatively with every wall
/// (ties lexicographic), searched up to max_height. Empty if there is none.
std::optional<IsotropicClass> choose_cusp(const Chamber& C, std::int64_t max_height);

/// Boundary spheres of all walls, scaled so that the first non-plane has radius 1.
std::vector<BoundarySphere> boundary_spheres(const Chamber& C, const LatticeVector& cusp);

struct WallPairWitness {
  std::size_t i = 0, j = 0;
  Integer pairing;
};

struct PackingCertificate {
  bool is_packing = true;
  bool is_connected = true;
  std::int64_t height_bound = 0;
  std::vector<WallPairWitness> failures;
  nlohmann::json to_json(const Chamber& C) const;
};

PackingCertificate is_sphere_packing(const Chamber& C);

struct TangencyGraph {
  std::size_t nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::map<std::pair<std::size_t, std::size_t>, IsotropicClass> tangent_points;
  bool connected = true;

  std::vector<std::size_t> neighbours(std::size_t i) const;
  /// All 4-cliques, each sorted, in lexicographic order.
  std::vector<std::array<std::size_t, 4>> four_cliques() const;
};

/// Edges where <d_i, d_j> = 2, tangent point = primitive part of d_i + d_j.
/// InputError if the walls are not a packing.
TangencyGraph tangency_graph(const Chamber& C);

struct UncoveredClass {
  IsotropicClass cls;
  LatticeVector reduced;
  std::size_t steps = 0;
};

struct TangentCoverage {
  bool pass = true;
  std::int64_t iso_height = 0;
  std::size_t word_bound = 0;
  std::size_t checked = 0;
  std::size_t direct = 0;
  std::size_t via_reflections = 0;
  std::vector<UncoveredClass> uncovered;
  nlohmann::json to_json() const;
};

/// Every primitive isotropic class up to iso_height is pushed towards the chamber
/// by reflecting in a wall it pairs negatively with (first such wall in order), at
/// most word_bound times, and must end on a tangent point of the graph.
TangentCoverage elliptic_divisors_at_tangents(const Chamber& C, const TangencyGraph& G, std::int64_t iso_height,
                                              std::size_t word_bound = 6);

/// |(k1+k2+k3+k4)^2 - 2(k1^2+k2^2+k3^2+k4^2)|.
double descartes_residual(const std::array<double, 4>& k);
/// Same with k = curvature(); requires circles (n-1 = 2).
double descartes_residual(const BoundarySphere& s1, const BoundarySphere& s2, const BoundarySphere& s3,
                          const BoundarySphere& s4);

enum class TangencyRelation { crossing, tangent, disjoint };

/// Euclidean relation of two boundary traces with tolerance tol (relative to the sizes involved).
TangencyRelation numeric_relation(const BoundarySphere& a, const BoundarySphere& b, double tol = 1e-6);

enum class RenderFormat { svg, json };

std::string render_svg(const std::vector<BoundarySphere>& spheres);
nlohmann::json render_json(const std::vector<BoundarySphere>& spheres);
std::vector<BoundarySphere> spheres_from_json(const nlohmann::json& j);
void render(const std::vector<BoundarySphere>& spheres, const std::filesystem::path& out, RenderFormat format);

}  // namespace k3cone
