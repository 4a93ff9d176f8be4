#include "k3cone/packing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "k3cone/errors.hpp"
#include "k3cone/lattice_io.hpp"

namespace k3cone {

namespace {

nlohmann::json vec_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec vec_from_json(const nlohmann::json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

bool same_vec(const Vec& a, const Vec& b) { return a.size() == b.size() && (a.size() == 0 || a == b); }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

double BoundarySphere::curvature() const {
  if (kind == Kind::plane) return 0;
  return outward ? 1 / radius : -1 / radius;
}

nlohmann::json BoundarySphere::to_json() const {
  nlohmann::json j{{"source_root", vector_to_json(source)}, {"height", integer_to_json(height)}};
  if (kind == Kind::sphere) {
    j["kind"] = "sphere";
    j["center"] = vec_json(center);
    j["radius"] = radius;
    j["outward"] = outward;
  } else {
    j["kind"] = "plane";
    j["plane"] = {{"normal", vec_json(normal)}, {"offset", offset}};
  }
  return j;
}

BoundarySphere BoundarySphere::from_json(const nlohmann::json& j) {
  BoundarySphere s;
  s.source = vector_from_json(j.at("source_root"));
  s.height = integer_from_json(j.at("height"));
  if (j.at("kind") == "sphere") {
    s.kind = Kind::sphere;
    s.center = vec_from_json(j.at("center"));
    s.radius = j.at("radius").get<double>();
    s.outward = j.at("outward").get<bool>();
  } else {
    s.kind = Kind::plane;
    s.normal = vec_from_json(j.at("plane").at("normal"));
    s.offset = j.at("plane").at("offset").get<double>();
  }
  return s;
}

bool operator==(const BoundarySphere& a, const BoundarySphere& b) {
  return a.kind == b.kind && same_vec(a.center, b.center) && a.radius == b.radius && same_vec(a.normal, b.normal) &&
         a.offset == b.offset && a.outward == b.outward && a.source == b.source && a.height == b.height;
}

PackingFrame::PackingFrame(const GramLattice& L, const LatticeVector& a, const LatticeVector& cusp, double scale)
    : L_(L), g_(gram_to_lorentz(L, a)), frame_(L, g_, cusp), scale_(scale) {
  if (L.inner(cusp, a) <= 0) throw InputError("cusp " + cusp.to_string() + " does not face the ample class");
}

BoundarySphere PackingFrame::wall_to_sphere(const Root& d) const {
  if (L_.norm(d.vec) != -2) throw InputError("wall_to_sphere: " + d.vec.to_string() + " is not a (-2)-root");
  const Vec D = frame_.rotated(d.vec);
  const Eigen::Index n = D.size() - 1;
  const Vec dp = D.head(n - 1);
  const Integer h = L_.inner(d.vec, frame_.cusp());
  BoundarySphere s;
  s.source = d.vec;
  s.height = d.height;
  if (h == 0) {
    s.kind = BoundarySphere::Kind::plane;
    const double len = dp.norm();
    s.normal = -dp / len;
    s.offset = -scale_ * D(n) / len;
    return s;
  }
  const double k = h.get_d() / frame_.lambda();
  s.kind = BoundarySphere::Kind::sphere;
  s.center = scale_ * dp / k;
  s.radius = scale_ * std::sqrt(2.0) / std::abs(k);
  s.outward = k > 0;
  return s;
}

Vec PackingFrame::boundary_point(const LatticeVector& e) const { return scale_ * frame_.boundary(e); }

BoundarySphere wall_to_sphere(const GramLattice& L, const LatticeVector& a, const Root& d, const LatticeVector& cusp) {
  return PackingFrame(L, a, cusp).wall_to_sphere(d);
}

std::optional<IsotropicClass> choose_cusp(const Chamber& C, std::int64_t max_height) {
  for (auto& e : enumerate_isotropic(C.lattice, C.ample, max_height)) {
    bool nef = true;
    for (const auto& w : C.walls)
      if (C.lattice.inner(e.vec, w.vec) < 0) {
        nef = false;
        break;
      }
    if (nef) return e;
  }
  return std::nullopt;
}

std::vector<BoundarySphere> boundary_spheres(const Chamber& C, const LatticeVector& cusp) {
  PackingFrame F(C.lattice, C.ample, cusp);
  for (const auto& w : C.walls) {
    const auto s = F.wall_to_sphere(w);
    if (s.kind == BoundarySphere::Kind::sphere) {
      F.set_scale(1 / s.radius);
      break;
    }
  }
  std::vector<BoundarySphere> out;
  for (const auto& w : C.walls) out.push_back(F.wall_to_sphere(w));
  return out;
}

nlohmann::json PackingCertificate::to_json(const Chamber& C) const {
  nlohmann::json f = nlohmann::json::array();
  for (const auto& w : failures)
    f.push_back({{"walls", {vector_to_json(C.walls[w.i].vec), vector_to_json(C.walls[w.j].vec)}},
                 {"pairing", integer_to_json(w.pairing)}});
  return {{"is_packing", is_packing}, {"is_connected", is_connected}, {"height_bound", height_bound}, {"failures", f}};
}

namespace {

std::size_t find_root(std::vector<std::size_t>& p, std::size_t x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

bool connected_by(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (n <= 1) return true;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::size_t comps = n;
  for (const auto& [i, j] : edges) {
    const std::size_t a = find_root(p, i), b = find_root(p, j);
    if (a != b) {
      p[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

}  // namespace

PackingCertificate is_sphere_packing(const Chamber& C) {
  PackingCertificate cert;
  cert.height_bound = C.height_bound;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < C.walls.size(); ++i)
    for (std::size_t j = i + 1; j < C.walls.size(); ++j) {
      const Integer p = C.lattice.inner(C.walls[i].vec, C.walls[j].vec);
      if (p < 0) throw InternalError("accepted walls pair negatively");
      if (p < 2) cert.failures.push_back({i, j, p});
      if (p == 2) edges.emplace_back(i, j);
    }
  cert.is_packing = cert.failures.empty();
  cert.is_connected = connected_by(C.walls.size(), edges);
  return cert;
}

std::vector<std::size_t> TangencyGraph::neighbours(std::size_t i) const {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : edges) {
    if (a == i) out.push_back(b);
    if (b == i) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<std::size_t, 4>> TangencyGraph::four_cliques() const {
  std::vector<std::set<std::size_t>> adj(nodes);
  for (const auto& [a, b] : edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<std::array<std::size_t, 4>> out;
  for (std::size_t i = 0; i < nodes; ++i)
    for (std::size_t j : adj[i]) {
      if (j <= i) continue;
      for (std::size_t k : adj[j]) {
        if (k <= j || !adj[i].count(k)) continue;
        for (std::size_t l : adj[k])
          if (l > k && adj[i].count(l) && adj[j].count(l)) out.push_back({i, j, k, l});
      }
    }
  return out;
}

TangencyGraph tangency_graph(const Chamber& C) {
  const auto cert = is_sphere_packing(C);
  if (!cert.is_packing) throw InputError("tangency graph requested for walls that are not a sphere packing");
  TangencyGraph G;
  G.nodes = C.walls.size();
  for (std::size_t i = 0; i < C.walls.size(); ++i)
    for (std::size_t j = i + 1; j < C.walls.size(); ++j)
      if (C.lattice.inner(C.walls[i].vec, C.walls[j].vec) == 2) {
        G.edges.emplace_back(i, j);
        const LatticeVector e = (C.walls[i].vec + C.walls[j].vec).primitive();
        G.tangent_points.emplace(std::pair{i, j}, IsotropicClass{e, C.lattice.inner(e, C.ample)});
      }
  G.connected = connected_by(G.nodes, G.edges);
  return G;
}

nlohmann::json TangentCoverage::to_json() const {
  nlohmann::json u = nlohmann::json::array();
  for (const auto& c : uncovered)
    u.push_back({{"class", vector_to_json(c.cls.vec)},
                 {"height", integer_to_json(c.cls.height)},
                 {"reduced", vector_to_json(c.reduced)},
                 {"reflections", c.steps}});
  return {{"pass", pass},           {"iso_height", iso_height},
          {"word_bound", word_bound}, {"classes_checked", checked},
          {"direct", direct},       {"via_reflections", via_reflections},
          {"uncovered", u}};
}

TangentCoverage elliptic_divisors_at_tangents(const Chamber& C, const TangencyGraph& G, std::int64_t iso_height,
                                              std::size_t word_bound) {
  const GramLattice& L = C.lattice;
  std::set<LatticeVector> targets;
  for (const auto& [edge, e] : G.tangent_points) targets.insert(e.vec);

  TangentCoverage cov;
  cov.iso_height = iso_height;
  cov.word_bound = word_bound;
  for (const auto& e : enumerate_isotropic(L, C.ample, iso_height)) {
    ++cov.checked;
    LatticeVector w = e.vec;
    std::size_t steps = 0;
    for (;;) {
      const Root* neg = nullptr;
      for (const auto& r : C.walls)
        if (L.inner(w, r.vec) < 0) {
          neg = &r;
          break;
        }
      if (neg == nullptr || steps == word_bound) break;
      w = reflect(L, neg->vec, w);
      ++steps;
    }
    if (targets.count(w)) {
      ++(steps == 0 ? cov.direct : cov.via_reflections);
    } else {
      cov.uncovered.push_back({e, w, steps});
    }
  }
  cov.pass = cov.uncovered.empty();
  return cov;
}

double descartes_residual(const std::array<double, 4>& k) {
  const double s = k[0] + k[1] + k[2] + k[3];
  const double q = k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + k[3] * k[3];
  return std::abs(s * s - 2 * q);
}

double descartes_residual(const BoundarySphere& s1, const BoundarySphere& s2, const BoundarySphere& s3,
                          const BoundarySphere& s4) {
  for (const auto* s : {&s1, &s2, &s3, &s4}) {
    const Eigen::Index d = s->kind == BoundarySphere::Kind::sphere ? s->center.size() : s->normal.size();
    if (d != 2) throw InputError("Descartes relation needs circles in the plane");
  }
  return descartes_residual({s1.curvature(), s2.curvature(), s3.curvature(), s4.curvature()});
}

TangencyRelation numeric_relation(const BoundarySphere& a, const BoundarySphere& b, double tol) {
  using K = BoundarySphere::Kind;
  if (a.kind == K::plane && b.kind == K::plane) {
    return std::abs(a.normal.dot(b.normal)) >= 1 - tol ? TangencyRelation::tangent : TangencyRelation::crossing;
  }
  if (a.kind == K::plane || b.kind == K::plane) {
    const BoundarySphere& p = a.kind == K::plane ? a : b;
    const BoundarySphere& s = a.kind == K::plane ? b : a;
    const double d = std::abs(p.normal.dot(s.center) - p.offset);
    if (std::abs(d - s.radius) <= tol * std::max(1.0, s.radius)) return TangencyRelation::tangent;
    return d < s.radius ? TangencyRelation::crossing : TangencyRelation::disjoint;
  }
  const double d = (a.center - b.center).norm();
  const double scale = std::max({1.0, a.radius, b.radius});
  if (std::abs(d - (a.radius + b.radius)) <= tol * scale || std::abs(d - std::abs(a.radius - b.radius)) <= tol * scale)
    return TangencyRelation::tangent;
  return (d < a.radius + b.radius && d > std::abs(a.radius - b.radius)) ? TangencyRelation::crossing
                                                                        : TangencyRelation::disjoint;
}

std::string render_svg(const std::vector<BoundarySphere>& spheres) {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool any = false;
  for (const auto& s : spheres) {
    if (s.kind == BoundarySphere::Kind::plane) {
      if (s.normal.size() != 2) throw InputError("svg output needs a 2-dimensional boundary");
      continue;
    }
    if (s.center.size() != 2) throw InputError("svg output needs a 2-dimensional boundary");
    // svg y axis points down
    const double cx = s.center(0), cy = -s.center(1);
    if (!any) {
      x0 = cx - s.radius, x1 = cx + s.radius, y0 = cy - s.radius, y1 = cy + s.radius;
      any = true;
    } else {
      x0 = std::min(x0, cx - s.radius), x1 = std::max(x1, cx + s.radius);
      y0 = std::min(y0, cy - s.radius), y1 = std::max(y1, cy + s.radius);
    }
  }
  if (!any) x0 = y0 = -1, x1 = y1 = 1;
  const double m = 0.05 * std::max(x1 - x0, y1 - y0);
  x0 -= m, y0 -= m, x1 += m, y1 += m;
  const double w = x1 - x0, h = y1 - y0;
  const double stroke = 0.002 * std::max(w, h);

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(x0) << ' ' << num(y0) << ' '
    << num(w) << ' ' << num(h) << "\">\n"
    << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << num(stroke) << "\">\n";
  const double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2, reach = std::hypot(w, h);
  for (const auto& s : spheres) {
    const std::string root = s.source.to_string();
    if (s.kind == BoundarySphere::Kind::sphere) {
      o << "<circle cx=\"" << num(s.center(0)) << "\" cy=\"" << num(-s.center(1)) << "\" r=\"" << num(s.radius)
        << "\"><title>" << root << "</title></circle>\n";
    } else {
      // n . u = offset, in svg coordinates (n_x, -n_y) . p = offset
      const double nx = s.normal(0), ny = -s.normal(1);
      const double t = s.offset - (nx * cx + ny * cy);
      const double px = cx + t * nx, py = cy + t * ny;
      o << "<line x1=\"" << num(px - reach * ny) << "\" y1=\"" << num(py + reach * nx) << "\" x2=\""
        << num(px + reach * ny) << "\" y2=\"" << num(py - reach * nx) << "\"><title>" << root << "</title></line>\n";
    }
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

nlohmann::json render_json(const std::vector<BoundarySphere>& spheres) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& s : spheres) a.push_back(s.to_json());
  return {{"spheres", a}};
}

std::vector<BoundarySphere> spheres_from_json(const nlohmann::json& j) {
  std::vector<BoundarySphere> out;
  for (const auto& s : j.at("spheres")) out.push_back(BoundarySphere::from_json(s));
  return out;
}

void render(const std::vector<BoundarySphere>& spheres, const std::filesystem::path& out, RenderFormat format) {
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out.string());
  if (format == RenderFormat::svg)
    f << render_svg(spheres);
  else
    f << render_json(spheres).dump(2) << '\n';
  if (!f) throw InputError("write failed for " + out.string());
}

}  // namespace k3cone
