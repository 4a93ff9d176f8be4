#include "k3cone/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "k3cone/blowup.hpp"
#include "k3cone/errors.hpp"
#include "k3cone/lattice_io.hpp"
#include "k3cone/lorentz.hpp"

namespace k3cone {

namespace {

using nlohmann::json;

constexpr int kOk = 0, kBadInput = 1, kNotCertified = 2;

struct Result {
  json report;
  int code = kOk;
  std::string diagnostic;
  std::optional<std::string> raw;  // svg output bypasses the json writer
};

Result ok(json report) {
  Result r;
  r.report = std::move(report);
  return r;
}

json header(const RunConfig& cfg, const GramLattice& L, const LatticeVector& a) {
  return {{"tool", "k3cone"},
          {"version", kVersion},
          {"command", to_string(cfg.command)},
          {"lattice", L.name()},
          {"rank", L.dim()},
          {"gram", matrix_to_json(L.gram())},
          {"ample", vector_to_json(a)},
          {"height_bound", cfg.height},
          {"iso_height", cfg.iso_height},
          {"word_bound", cfg.word_bound},
          {"certified", "sides certified up to height " + std::to_string(cfg.height)}};
}

json witness_list(const Chamber& C, const PackingCertificate& cert) {
  return cert.to_json(C).at("failures");
}

std::string first_witness(const Chamber& C, const PackingCertificate& cert) {
  if (cert.failures.empty()) return "walls are not connected by tangencies";
  const auto& f = cert.failures[0];
  return "walls " + C.walls[f.i].vec.to_string() + " and " + C.walls[f.j].vec.to_string() + " pair to " +
         f.pairing.get_str() + " < 2";
}

json graph_json(const Chamber& C, const TangencyGraph& G) {
  json edges = json::array();
  for (const auto& [edge, e] : G.tangent_points)
    edges.push_back({{"walls", {edge.first, edge.second}}, {"tangent_point", vector_to_json(e.vec)}});
  return {{"nodes", C.walls.size()},
          {"edges", edges},
          {"connected", G.connected},
          {"four_cliques", G.four_cliques().size()}};
}

Result do_roots(const RunConfig& cfg, const Chamber& C) {
  json roots = json::array();
  for (const auto& d : enumerate_roots(C.lattice, C.ample, cfg.height))
    roots.push_back({{"root", vector_to_json(d)}, {"height", integer_to_json(C.lattice.inner(d, C.ample))}});
  return ok({{"roots", roots}, {"count", roots.size()}});
}

Result do_walls(const Chamber& C) {
  json walls = json::array();
  for (const auto& w : C.walls) walls.push_back({{"root", vector_to_json(w.vec)}, {"height", integer_to_json(w.height)}});
  return ok({{"walls", walls}, {"roots_examined", C.roots_examined}});
}

Result do_packing(const RunConfig& cfg, const Chamber& C) {
  const auto cert = is_sphere_packing(C);
  Result r = ok({{"packing", cert.to_json(C)}});
  if (!cert.is_packing) {
    r.code = kNotCertified;
    r.diagnostic = "not a sphere packing: " + first_witness(C, cert);
    r.report["witnesses"] = witness_list(C, cert);
    return r;
  }
  const auto G = tangency_graph(C);
  r.report["tangency_graph"] = graph_json(C, G);
  const auto cov = elliptic_divisors_at_tangents(C, G, cfg.iso_height, cfg.word_bound);
  r.report["coverage"] = cov.to_json();
  if (const auto cusp = choose_cusp(C, cfg.iso_height)) {
    r.report["cusp"] = vector_to_json(cusp->vec);
    r.report["spheres"] = render_json(boundary_spheres(C, cusp->vec)).at("spheres");
  }
  if (!cert.is_connected) {
    r.code = kNotCertified;
    r.diagnostic = "sphere packing is not connected up to height " + std::to_string(cfg.height);
  } else if (!cov.pass) {
    r.code = kNotCertified;
    r.diagnostic = std::to_string(cov.uncovered.size()) + " isotropic classes are not tangent points";
  }
  return r;
}

Result do_fibrations(const RunConfig& cfg, const Chamber& C) {
  const auto table = fibration_table(C.lattice, C.ample, cfg.iso_height);
  json rows = json::array();
  for (const auto& f : table) rows.push_back(f.to_json());
  Result r = ok({{"fibrations", rows}, {"rho", C.lattice.dim()}});
  if (table.empty()) {
    r.code = kBadInput;
    r.diagnostic = "no elliptic fibration up to height " + std::to_string(cfg.iso_height);
    return r;
  }
  const auto m = max_mw_rank(table);
  r.report["max_mw_rank"] = {{"max", m.max}, {"witness", vector_to_json(m.witness.vec)}};
  r.report["note"] = "ranks are lattice-theoretic; sections of non-jacobian fibrations are not modelled";
  return r;
}

VcdOptions vcd_options(const RunConfig& cfg) { return {cfg.iso_height, cfg.word_bound, cfg.assume_cantor}; }

Result do_vcd(const RunConfig& cfg, const Chamber& C) {
  const auto rep = vcd_report(C, vcd_options(cfg));
  Result r = ok(rep.to_json(C, cfg.dump_debug));
  if (rep.method == VcdMethod::inconclusive) {
    r.code = kNotCertified;
    r.diagnostic = "vcd not certified: " + (rep.packing.is_packing ? std::string("packing is disconnected or not covered")
                                                                    : first_witness(C, rep.packing));
  }
  return r;
}

Result do_render(const RunConfig& cfg, const Chamber& C, OutputFormat format) {
  const auto cusp = choose_cusp(C, cfg.iso_height);
  if (!cusp) throw SearchExhausted("no cusp on the chamber up to height " + std::to_string(cfg.iso_height));
  const auto spheres = boundary_spheres(C, cusp->vec);
  if (format == OutputFormat::svg) {
    Result r;
    r.raw = render_svg(spheres);
    return r;
  }
  if (format == OutputFormat::text) throw InputError("render writes svg or json");
  return ok({{"cusp", vector_to_json(cusp->vec)}, {"spheres", render_json(spheres).at("spheres")}});
}

Result do_analyze(const RunConfig& cfg, const Chamber& C) {
  const GramLattice& L = C.lattice;
  const auto disc = discriminant_group(L);
  json inv = json::array();
  for (const auto& d : disc.invariant_factors) inv.push_back(integer_to_json(d));
  Result r = do_vcd(cfg, C);
  r.report["signature"] = {L.signature().positive, L.signature().negative};
  r.report["det"] = integer_to_json(L.det());
  r.report["discriminant_group"] = inv;
  r.report["walls"] = do_walls(C).report.at("walls");
  r.report["roots_examined"] = C.roots_examined;
  return r;
}

std::string as_text(const json& j) {
  std::ostringstream o;
  for (const auto& [k, v] : j.items()) o << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  return o.str();
}

}  // namespace

std::optional<Command> parse_command(const std::string& s) {
  for (Command c : {Command::analyze, Command::roots, Command::walls, Command::packing, Command::fibrations,
                    Command::vcd, Command::render})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(const std::string& s) {
  if (s == "svg") return OutputFormat::svg;
  if (s == "json") return OutputFormat::json;
  if (s == "text") return OutputFormat::text;
  return std::nullopt;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::analyze: return "analyze";
    case Command::roots: return "roots";
    case Command::walls: return "walls";
    case Command::packing: return "packing";
    case Command::fibrations: return "fibrations";
    case Command::vcd: return "vcd";
    case Command::render: return "render";
  }
  return "?";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.height < 1) throw InputError("--height must be at least 1");
    if (cfg.iso_height < 1) throw InputError("--iso-height must be at least 1");
    const OutputFormat format = cfg.format.value_or(cfg.command == Command::render ? OutputFormat::svg : OutputFormat::json);
    if (format == OutputFormat::svg && cfg.command != Command::render) throw InputError("svg output is only for render");

    const auto in = load_lattice_file(cfg.input);
    const GramLattice& L = in.lattice;
    // Indefinite forms of the wrong signature are rejected before any enumeration;
    // definite ones fall through to the interior point search, which explains itself.
    if (L.signature().positive != 0) L.require_hyperbolic();
    LatticeVector a;
    if (in.ample) {
      a = *in.ample;
      if (a.size() != L.dim()) throw InputError("ample vector has the wrong length");
      L.require_hyperbolic();
      if (!is_generic_interior(L, a)) throw InputError("ample vector " + a.to_string() + " is not a generic interior point");
    } else {
      a = find_interior_point(L);
    }
    L.require_hyperbolic();

    const Chamber C = vinberg_walls(L, a, cfg.height);
    Result r;
    switch (cfg.command) {
      case Command::analyze: r = do_analyze(cfg, C); break;
      case Command::roots: r = do_roots(cfg, C); break;
      case Command::walls: r = do_walls(C); break;
      case Command::packing: r = do_packing(cfg, C); break;
      case Command::fibrations: r = do_fibrations(cfg, C); break;
      case Command::vcd: r = do_vcd(cfg, C); break;
      case Command::render: r = do_render(cfg, C, format); break;
    }

    std::string text;
    if (r.raw) {
      text = *r.raw;
    } else {
      json report = header(cfg, L, a);
      report.update(r.report);
      if (cfg.dump_debug) {
        report["debug"] = {{"lorentz_residual", gram_to_lorentz(L, a).residual(L.gram())},
                           {"roots_examined", C.roots_examined},
                           {"walls", C.walls.size()}};
      }
      if (r.code != kOk) report["diagnostic"] = r.diagnostic;
      text = format == OutputFormat::text ? as_text(report) : report.dump(2) + "\n";
    }
    if (cfg.out) {
      std::ofstream f(*cfg.out);
      if (!f) throw InputError("cannot write " + cfg.out->string());
      f << text;
    } else {
      out << text;
    }
    if (r.code != kOk) err << "k3cone: " << r.diagnostic << '\n';
    return r.code;
  } catch (const InputError& e) {
    err << "k3cone: " << e.what() << '\n';
  } catch (const SearchExhausted& e) {
    err << "k3cone: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "k3cone: malformed input: " << e.what() << '\n';
  }
  return kBadInput;
}

}  // namespace k3cone
