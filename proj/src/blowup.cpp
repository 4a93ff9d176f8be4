#include "k3cone/blowup.hpp"

#include <algorithm>
#include <cmath>

#include "k3cone/errors.hpp"
#include "k3cone/lattice_io.hpp"
#include "k3cone/lorentz.hpp"

namespace k3cone {

BlowupPoint blowup_map(const Vec& p, const Vec& x) {
  if (p.size() != x.size()) throw InputError("blowup_map: dimension mismatch");
  const Vec d = x - p;
  const double len = d.norm();
  if (len == 0) throw InputError("blow-up chart is undefined at its center");
  return {x, d / len};
}

namespace {

Vec unit_last(Eigen::Index n) {
  Vec e = Vec::Zero(n);
  e(n - 1) = 1;
  return e;
}

// Direction at e_n of the image under eta of an upper half-space point.
Vec chart_direction(const Vec& u) {
  return blowup_map(unit_last(u.size()), standard_transformation(ExtPoint(u)).finite()).direction;
}

// Second order Richardson limit from samples at h, h/2, h/4.
Vec richardson(const Vec& d1, const Vec& d2, const Vec& d3) {
  const Vec r = (8 * d3 - 6 * d2 + d1) / 3;
  return r / r.norm();
}

LatticeVector times(const IntMatrix& M, const LatticeVector& v) {
  LatticeVector out(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out[i] += M(i, j) * v[j];
  return out;
}

nlohmann::json vec_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

nlohmann::json class_list(const std::vector<IsotropicClass>& cs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : cs) a.push_back(vector_to_json(c.vec));
  return a;
}

}  // namespace

StrictTransform strict_transform_direction(const Vec& v, const Vec& a) {
  const Eigen::Index n = a.size();
  if (n < 2 || v.size() != n - 1) throw InputError("strict transform: v must be tangent to the boundary of U^n");
  if (v.norm() == 0) throw InputError("strict transform: v = 0");
  if (a(n - 1) < 0) throw InputError("strict transform: base point below the boundary");
  Vec step = Vec::Zero(n);
  step.head(n - 1) = v;
  auto sample = [&](double t) { return chart_direction(a + t * step); };

  std::vector<Vec> d{sample(1), sample(2)};
  std::optional<Vec> prev;
  double diff = INFINITY;
  for (int k = 2; k <= 40; ++k) {
    const double t = std::ldexp(1.0, k);
    d.push_back(sample(t));
    const Vec est = richardson(d[k - 2], d[k - 1], d[k]);
    if (prev) {
      diff = (est - *prev).norm();
      if (diff < 1e-10) {
        Vec want = Vec::Zero(n);
        want.head(n - 1) = v / v.norm();
        StrictTransform out{est, (est - want).norm(), t, k};
        if (out.residual > 1e-6)
          throw InternalError("strict transform converged away from v/|v|: residual " + std::to_string(out.residual));
        return out;
      }
    }
    prev = est;
  }
  throw SearchExhausted("strict transform did not converge by t = 2^40; last change " + std::to_string(diff));
}

nlohmann::json CuspSphere::to_json() const {
  nlohmann::json j{{"class", vector_to_json(cls.vec)},
                   {"height", integer_to_json(cls.height)},
                   {"stabilizer_rank", rank},
                   {"parabolic_rank", parabolic_rank},
                   {"exceptional_dim", dim}};
  if (dim < 0) j["exceptional"] = "isolated point";
  return j;
}

CuspSphere cusp_exceptional_sphere(const GramLattice& L, const IsotropicClass& e) {
  const auto r = mw_rank(L, e);
  return {e, r.mw_rank, L.dim() - 2, static_cast<long>(r.mw_rank) - 1};
}

nlohmann::json OrbitAccumulation::to_json() const {
  nlohmann::json cl = nlohmann::json::array();
  for (std::size_t i = 0; i < clusters.size(); ++i) cl.push_back({{"direction", vec_json(clusters[i])}, {"size", cluster_sizes[i]}});
  return {{"cusp", vector_to_json(cusp.vec)},
          {"walls", {vector_to_json(d1), vector_to_json(d2)}},
          {"type", k3cone::to_string(type)},
          {"fixes_cusp", fixes_cusp},
          {"N", N},
          {"clusters", cl},
          {"spread", spread},
          {"subsphere_dim", subsphere_dim}};
}

OrbitAccumulation parabolic_orbit_accumulation(const Chamber& C, const LatticeVector& e, std::size_t N) {
  if (N < 4 || N % 4 != 0) throw InputError("orbit length must be a positive multiple of 4");
  const GramLattice& L = C.lattice;
  OrbitAccumulation out;
  out.N = N;
  bool found = false;
  for (std::size_t i = 0; i < C.walls.size() && !found; ++i)
    for (std::size_t j = i + 1; j < C.walls.size() && !found; ++j)
      if (L.inner(C.walls[i].vec, C.walls[j].vec) == 2 && (C.walls[i].vec + C.walls[j].vec).primitive() == e) {
        out.d1 = C.walls[i].vec;
        out.d2 = C.walls[j].vec;
        found = true;
      }
  if (!found) throw InputError("no pair of tangent walls meets at " + e.to_string());
  out.cusp = {e, L.inner(e, C.ample)};

  const IntMatrix R1 = reflection_matrix(L, out.d1), R2 = reflection_matrix(L, out.d2);
  out.g = R1 * R2;
  out.fixes_cusp = times(out.g, e) == e;
  const auto gl = gram_to_lorentz(L, C.ample);
  out.type = classify(gl.isometry(out.g));

  const CuspFrame frame(L, gl, e);
  for (const IntMatrix& h : {out.g, IntMatrix(R2 * R1)}) {
    for (long j = 0; j < 8; ++j) {
      LatticeVector x = C.ample + Integer(j) * e;
      std::vector<Vec> d;
      for (std::size_t k = 1; k <= N; ++k) {
        x = times(h, x);
        if (k == N / 4 || k == N / 2 || k == N) d.push_back(chart_direction(frame.upper_half(x)));
      }
      out.limits.push_back(richardson(d[0], d[1], d[2]));
    }
  }

  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < out.limits.size(); ++i) {
    bool placed = false;
    for (auto& m : members)
      if ((out.limits[m[0]] - out.limits[i]).norm() < 1e-4) {
        m.push_back(i);
        placed = true;
        break;
      }
    if (!placed) members.push_back({i});
  }
  for (const auto& m : members) {
    Vec mean = Vec::Zero(out.limits[0].size());
    for (auto i : m) mean += out.limits[i];
    mean /= static_cast<double>(m.size());
    for (auto i : m) out.spread = std::max(out.spread, (out.limits[i] - mean).norm());
    out.clusters.push_back(mean);
    out.cluster_sizes.push_back(m.size());
  }
  Mat span(out.clusters[0].size(), out.clusters.size());
  for (std::size_t i = 0; i < out.clusters.size(); ++i) span.col(i) = out.clusters[i];
  Eigen::JacobiSVD<Mat> svd(span);
  long rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-4) ++rank;
  out.subsphere_dim = rank - 1;
  return out;
}

std::string to_string(VcdMethod m) {
  switch (m) {
    case VcdMethod::sphere_packing: return "sphere_packing";
    case VcdMethod::cantor_assumed: return "cantor_assumed";
    case VcdMethod::inconclusive: return "inconclusive";
  }
  return "?";
}

BlownUpReport assemble_vcd_report(const Chamber& C, const PackingCertificate& packing,
                                  const std::optional<TangentCoverage>& coverage,
                                  const std::vector<FibrationReport>& fibrations, const VcdOptions& opt) {
  BlownUpReport r;
  r.rho = C.lattice.dim();
  r.height_bound = C.height_bound;
  r.options = opt;
  r.packing = packing;
  r.coverage = coverage;
  r.fibrations = fibrations;
  if (!fibrations.empty()) r.max_mw = max_mw_rank(fibrations);

  for (const auto& f : fibrations) {
    bool on_closure = true;
    for (const auto& w : C.walls)
      if (C.lattice.inner(f.cls.vec, w.vec) < 0) {
        on_closure = false;
        break;
      }
    if (!on_closure) continue;
    CuspSphere s{f.cls, f.mw_rank, r.rho - 2, static_cast<long>(f.mw_rank) - 1};
    r.boundary_dim_lower = std::max(r.boundary_dim_lower, s.dim);
    if (s.rank >= 1) r.c_x_weyl.push_back(f.cls);
    if (s.rank > 1) r.c_x_aut.push_back(f.cls);
    r.per_cusp.push_back(std::move(s));
  }

  if (packing.is_packing && packing.is_connected && coverage && coverage->pass) {
    r.method = VcdMethod::sphere_packing;
    r.vcd = static_cast<long>(r.rho) - 3;
  } else if (opt.assume_cantor) {
    if (!r.max_mw)
      throw SearchExhausted("no elliptic fibration up to height " + std::to_string(opt.iso_height));
    r.method = VcdMethod::cantor_assumed;
    r.vcd = static_cast<long>(r.max_mw->max);
  }
  return r;
}

BlownUpReport vcd_report(const Chamber& C, const VcdOptions& opt) {
  const auto packing = is_sphere_packing(C);
  std::optional<TangentCoverage> coverage;
  if (packing.is_packing)
    coverage = elliptic_divisors_at_tangents(C, tangency_graph(C), opt.iso_height, opt.word_bound);
  return assemble_vcd_report(C, packing, coverage, fibration_table(C.lattice, C.ample, opt.iso_height), opt);
}

BlownUpReport vcd_report(const GramLattice& L, const LatticeVector& a, std::int64_t H, const VcdOptions& opt) {
  return vcd_report(vinberg_walls(L, a, H), opt);
}

nlohmann::json BlownUpReport::to_json(const Chamber& C, bool debug) const {
  nlohmann::json cusps = nlohmann::json::array();
  for (const auto& s : per_cusp) cusps.push_back(s.to_json());
  nlohmann::json j{{"method", to_string(method)},
                   {"vcd", vcd ? nlohmann::json(*vcd) : nlohmann::json("unknown")},
                   {"rho", rho},
                   {"height_bound", height_bound},
                   {"iso_height", options.iso_height},
                   {"word_bound", options.word_bound},
                   {"assume_cantor", options.assume_cantor},
                   {"packing", packing.to_json(C)},
                   {"coverage", coverage ? coverage->to_json() : nlohmann::json(nullptr)},
                   {"per_cusp", cusps},
                   {"boundary_dim_lower", boundary_dim_lower}};
  if (max_mw)
    j["max_mw_rank"] = {{"max", max_mw->max},
                        {"witness", vector_to_json(max_mw->witness.vec)},
                        {"height", integer_to_json(max_mw->witness.height)}};
  if (vcd) j["boundary_dim_consistent"] = boundary_dim_lower <= *vcd - 1;
  if (debug) j["c_x"] = {{"weyl_stabilizer_small", class_list(c_x_weyl)}, {"aut_stabilizer_gt_1", class_list(c_x_aut)}};
  return j;
}

}  // namespace k3cone
