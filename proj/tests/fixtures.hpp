#pragma once

#include "k3cone/lattice.hpp"
#include "oracles.hpp"

namespace fixtures {

inline const oracle::Mat kY2 = {{-2, 2, 2, 4}, {2, -2, 2, 4}, {2, 2, -2, 0}, {4, 4, 0, 0}};
inline const oracle::Mat kY3 = {
    {-2, 2, 2, 2, 4}, {2, -2, 2, 2, 4}, {2, 2, -2, 2, 4}, {2, 2, 2, -2, 0}, {4, 4, 4, 0, 0}};
inline const oracle::Mat kCantor = {{2, 4, 1}, {4, 2, 0}, {1, 0, -2}};

inline k3cone::IntMatrix to_int(const oracle::Mat& m) {
  k3cone::IntMatrix out(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = static_cast<long>(m[i][j]);
  return out;
}

inline k3cone::GramLattice lattice(const oracle::Mat& m, const char* name = "") {
  return k3cone::GramLattice(to_int(m), name);
}

inline k3cone::LatticeVector vec(const oracle::Vec& v) {
  std::vector<k3cone::Integer> c;
  for (auto x : v) c.emplace_back(static_cast<long>(x));
  return k3cone::LatticeVector(std::move(c));
}

inline oracle::Vec plain(const k3cone::LatticeVector& v) {
  oracle::Vec out;
  for (const auto& c : v.coords()) out.push_back(c.get_si());
  return out;
}

}  // namespace fixtures
