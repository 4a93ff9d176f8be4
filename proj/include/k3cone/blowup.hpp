#pragma once

// Blow-ups of boundary points: directional charts, strict transforms of lines
// through the cusp, exceptional spheres at cusps and the vcd reporter.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "k3cone/chamber.hpp"
#include "k3cone/fibrations.hpp"
#include "k3cone/hyperbolic.hpp"
#include "k3cone/packing.hpp"

namespace k3cone {

struct BlowupPoint {
  Vec x;
  /// (x - p) / |x - p|
  Vec direction;
};

/// InputError when x = p, where the chart is undefined.
BlowupPoint blowup_map(const Vec& p, const Vec& x);

struct StrictTransform {
  Vec direction;
  double residual = 0;  ///< |direction - v/|v||
  double t_final = 0;
  int steps = 0;
};

/// Traces eta(t v + a) for t = 2^k, k = 0..40, through the chart at e_n and
/// extrapolates the limit direction (Richardson in 1/t). v lives in E^{n-1} and a in
/// the closed upper half-space U^n. Stops once two extrapolations agree to 1e-10;
/// SearchExhausted if that never happens, InternalError if the limit is further
/// than 1e-6 from (v/|v|, 0).
StrictTransform strict_transform_direction(const Vec& v, const Vec& a);

struct CuspSphere {
  IsotropicClass cls;
  std::size_t rank = 0;            ///< Mordell-Weil rank r of the fibration
  std::size_t parabolic_rank = 0;  ///< rho - 2
  long dim = -1;                   ///< r - 1; -1 means an isolated boundary point
  nlohmann::json to_json() const;
};

CuspSphere cusp_exceptional_sphere(const GramLattice& L, const IsotropicClass& e);

struct OrbitAccumulation {
  IsotropicClass cusp;
  LatticeVector d1, d2;
  IntMatrix g;  ///< s_{d1} s_{d2}
  IsometryType type = IsometryType::ambiguous;
  bool fixes_cusp = false;
  std::size_t N = 0;
  /// One extrapolated limit direction per base point and sign of the exponent.
  std::vector<Vec> limits;
  std::vector<Vec> clusters;
  std::vector<std::size_t> cluster_sizes;
  double spread = 0;          ///< max distance of a limit from its cluster mean
  long subsphere_dim = -1;    ///< dimension of the great sphere spanned by the clusters
  nlohmann::json to_json() const;
};

/// g = s_{d1} s_{d2} for the first pair of tangent walls whose tangent point is e.
/// For base points a + j e (j < 8) the directions of g^k x, k = +-N/4, +-N/2, +-N, at
/// the blown-up cusp are extrapolated to k -> +-infinity and clustered with radius
/// 1e-4. InputError when no tangent wall pair meets at e.
OrbitAccumulation parabolic_orbit_accumulation(const Chamber& C, const LatticeVector& e, std::size_t N = 200);

enum class VcdMethod { sphere_packing, cantor_assumed, inconclusive };
std::string to_string(VcdMethod m);

struct VcdOptions {
  std::int64_t iso_height = 10;
  std::size_t word_bound = 6;
  bool assume_cantor = false;
};

struct BlownUpReport {
  VcdMethod method = VcdMethod::inconclusive;
  std::optional<long> vcd;
  std::size_t rho = 0;
  std::int64_t height_bound = 0;
  VcdOptions options;
  PackingCertificate packing;
  std::optional<TangentCoverage> coverage;
  std::vector<FibrationReport> fibrations;
  std::optional<MaxMordellWeil> max_mw;
  /// Isotropic classes up to iso_height on the closure of the chamber.
  std::vector<CuspSphere> per_cusp;
  long boundary_dim_lower = -1;
  /// Two readings of the set of cusps with small Weyl stabilizer: l < rho - 2
  /// (equivalently m >= 1) and m > 1.
  std::vector<IsotropicClass> c_x_weyl, c_x_aut;

  nlohmann::json to_json(const Chamber& C, bool debug = false) const;
};

/// Decision step on precomputed certificates. coverage is expected whenever the
/// walls form a packing.
BlownUpReport assemble_vcd_report(const Chamber& C, const PackingCertificate& packing,
                                  const std::optional<TangentCoverage>& coverage,
                                  const std::vector<FibrationReport>& fibrations, const VcdOptions& opt);

BlownUpReport vcd_report(const Chamber& C, const VcdOptions& opt);
BlownUpReport vcd_report(const GramLattice& L, const LatticeVector& a, std::int64_t H, const VcdOptions& opt);

}  // namespace k3cone
