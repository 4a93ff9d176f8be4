#include "k3cone/fibrations.hpp"

#include <string>

#include "k3cone/errors.hpp"
#include "k3cone/integer_linalg.hpp"
#include "k3cone/lattice_io.hpp"

namespace k3cone {

namespace {

LatticeVector times(const IntMatrix& M, const LatticeVector& v) {
  LatticeVector out(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out[i] += M(i, j) * v[j];
  return out;
}

}  // namespace

FiberQuotient fiber_quotient(const GramLattice& L, const LatticeVector& e) {
  const std::size_t n = L.dim();
  if (e.size() != n) throw InputError("isotropic class has the wrong dimension");
  if (e.is_zero() || L.norm(e) != 0 || e.content() != 1)
    throw InputError(e.to_string() + " is not a primitive isotropic vector");

  // Columns 1..n-1 of U span the integral kernel of x -> <e, x>.
  const auto R = reduce_row(L.functional(e));
  IntMatrix K(n, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) K(i, j - 1) = R.U(i, j);

  // Coordinates c of e in that basis, then a unimodular W with first column c.
  const LatticeVector full = times(R.U_inv, e);
  if (full[0] != 0) throw InternalError("isotropic vector outside its own orthogonal complement");
  std::vector<Integer> c(full.coords().begin() + 1, full.coords().end());
  const auto Rc = reduce_row(c);
  if (Rc.gcd != 1) throw InternalError("basis completion failed for " + e.to_string());
  const IntMatrix B = K * Rc.U_inv.transpose();
  const IntMatrix Q = B.transpose() * L.gram() * B;

  FiberQuotient out;
  out.gram = IntMatrix(n - 2, n - 2);
  for (std::size_t i = 2; i < n; ++i) {
    for (std::size_t j = 2; j < n; ++j) out.gram(i - 2, j - 2) = Q(i - 1, j - 1);
    out.lifts.emplace_back(B.column(i - 1));
  }
  if (n > 2 && signature(out.gram).negative != n - 2)
    throw InternalError("quotient lattice of " + e.to_string() + " is not negative definite");
  return out;
}

nlohmann::json FibrationReport::to_json() const {
  return {{"class", vector_to_json(cls.vec)},
          {"height", integer_to_json(cls.height)},
          {"fiber_root_rank", fiber_root_rank},
          {"mw_rank", mw_rank}};
}

FibrationReport mw_rank(const GramLattice& L, const IsotropicClass& e) {
  const std::size_t rho = L.dim();
  FibrationReport r{e, definite_root_rank(quotient_lattice(L, e.vec)), 0};
  if (r.fiber_root_rank > rho - 2) throw InternalError("fiber root rank exceeds rho - 2");
  r.mw_rank = rho - 2 - r.fiber_root_rank;
  return r;
}

FibrationReport mw_rank(const GramLattice& L, const LatticeVector& e) { return mw_rank(L, IsotropicClass{e, 0}); }

std::pair<std::size_t, std::size_t> parabolic_rank_decomposition(const GramLattice& L, const LatticeVector& e) {
  const auto r = mw_rank(L, e);
  if (r.fiber_root_rank + r.mw_rank != L.dim() - 2) throw InternalError("l + m != rho - 2");
  return {r.fiber_root_rank, r.mw_rank};
}

std::vector<FibrationReport> fibration_table(const GramLattice& L, const LatticeVector& a, std::int64_t H) {
  std::vector<FibrationReport> out;
  for (const auto& e : enumerate_isotropic(L, a, H)) out.push_back(mw_rank(L, e));
  return out;
}

MaxMordellWeil max_mw_rank(const std::vector<FibrationReport>& table) {
  if (table.empty()) throw SearchExhausted("no elliptic fibration in the table");
  MaxMordellWeil best{table[0].mw_rank, table[0].cls};
  for (const auto& r : table)
    if (r.mw_rank > best.max) best = {r.mw_rank, r.cls};
  return best;
}

MaxMordellWeil max_mw_rank(const GramLattice& L, const LatticeVector& a, std::int64_t H) {
  const auto table = fibration_table(L, a, H);
  if (table.empty()) throw SearchExhausted("no elliptic fibration up to height " + std::to_string(H));
  return max_mw_rank(table);
}

}  // namespace k3cone
