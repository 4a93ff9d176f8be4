#include "k3cone/lattice_io.hpp"

#include <fstream>
#include <limits>

#include "k3cone/errors.hpp"

namespace k3cone {

using nlohmann::json;

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) {
      const auto u = j.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<long>::max()))
        throw InputError("integer out of range; pass it as a decimal string");
      return Integer(static_cast<long>(u));
    }
    return Integer(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("not a decimal integer: " + j.get<std::string>());
    return x;
  }
  throw InputError("expected an integer, got " + j.dump());
}

json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

json vector_to_json(const LatticeVector& v) {
  json a = json::array();
  for (const auto& c : v.coords()) a.push_back(integer_to_json(c));
  return a;
}

LatticeVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an integer array, got " + j.dump());
  std::vector<Integer> c;
  for (const auto& x : j) c.push_back(integer_from_json(x));
  return LatticeVector(std::move(c));
}

json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(integer_to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

LatticeInput parse_lattice_json(const json& j, const std::string& fallback_name) {
  if (!j.is_object()) throw InputError("lattice file must be a JSON object");
  if (!j.contains("gram")) throw InputError("lattice file has no \"gram\" field");
  const json& g = j.at("gram");
  if (!g.is_array() || g.empty()) throw InputError("\"gram\" must be a non-empty array of rows");
  const std::size_t n = g.size();
  IntMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g[i].is_array() || g[i].size() != n) throw InputError("\"gram\" must be square");
    for (std::size_t k = 0; k < n; ++k) gram(i, k) = integer_from_json(g[i][k]);
  }
  if (!gram.is_symmetric()) throw InputError("\"gram\" is not symmetric");
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : fallback_name;

  LatticeInput in{GramLattice(std::move(gram), std::move(name)), std::nullopt};
  if (j.contains("ample") && !j.at("ample").is_null()) {
    LatticeVector a = vector_from_json(j.at("ample"));
    if (a.size() != n) throw InputError("\"ample\" has the wrong length");
    in.ample = std::move(a);
  }
  return in;
}

LatticeInput load_lattice_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_lattice_json(j, path.stem().string());
}

}  // namespace k3cone
