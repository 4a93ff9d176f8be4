#include "k3cone/integer_linalg.hpp"

#include <algorithm>
#include <utility>

#include "k3cone/errors.hpp"

namespace k3cone {

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& rows) {
  IntMatrix a = rows;
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t p = r;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      Integer f = a(i, col), g = a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = a(i, j) * g - a(r, j) * f;
      Integer c = gcd_of(a.row(i));
      if (c > 1)
        for (std::size_t j = col; j < a.cols(); ++j) mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), c.get_mpz_t());
    }
    ++r;
  }
  return r;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

}  // namespace

std::vector<Integer> smith_diagonal(IntMatrix m) {
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t pi = m.rows(), pj = m.cols();
      for (std::size_t i = t; i < m.rows(); ++i)
        for (std::size_t j = t; j < m.cols(); ++j)
          if (m(i, j) != 0 && (pi == m.rows() || abs(m(i, j)) < abs(m(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m.rows()) {
        std::vector<Integer> out;
        for (std::size_t k = 0; k < n; ++k) out.push_back(abs(m(k, k)));
        return out;
      }
      swap_rows(m, t, pi);
      swap_cols(m, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i) {
        if (m(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t j = t; j < m.cols(); ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m.cols(); ++j) {
        if (m(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t i = t; i < m.rows(); ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Pivot must divide the whole trailing block.
      std::size_t bad = m.rows();
      for (std::size_t i = t + 1; i < m.rows() && bad == m.rows(); ++i)
        for (std::size_t j = t + 1; j < m.cols(); ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m.rows()) break;
      for (std::size_t j = t; j < m.cols(); ++j) m(t, j) += m(bad, j);
    }
  }
  std::vector<Integer> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(abs(m(k, k)));
  return out;
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw InputError("matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(c, j), a(p, j));
        std::swap(inv(c, j), inv(p, j));
      }
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RowReduction reduce_row(const std::vector<Integer>& row) {
  const std::size_t n = row.size();
  RowReduction out{IntMatrix::identity(n), IntMatrix::identity(n), 0};
  if (n == 0) return out;
  std::vector<Integer> r = row;
  auto& U = out.U;
  auto& V = out.U_inv;

  auto col_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(r[a], r[b]);
    swap_cols(U, a, b);
    swap_rows(V, a, b);
  };

  for (;;) {
    std::size_t piv = n;
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] != 0 && (piv == n || abs(r[j]) < abs(r[piv]))) piv = j;
    if (piv == n) break;  // zero row
    col_swap(0, piv);
    bool done = true;
    for (std::size_t j = 1; j < n; ++j) {
      if (r[j] == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), r[j].get_mpz_t(), r[0].get_mpz_t());
      if (q != 0) {
        // col_j -= q col_0 ; inverse: row_0 += q row_j
        r[j] -= q * r[0];
        for (std::size_t i = 0; i < n; ++i) U(i, j) -= q * U(i, 0);
        for (std::size_t k = 0; k < n; ++k) V(0, k) += q * V(j, k);
      }
      if (r[j] != 0) done = false;
    }
    if (done) break;
  }
  if (r[0] < 0) {
    r[0] = -r[0];
    for (std::size_t i = 0; i < n; ++i) U(i, 0) = -U(i, 0);
    for (std::size_t k = 0; k < n; ++k) V(0, k) = -V(0, k);
  }
  out.gcd = r[0];
  return out;
}

CongruenceForm congruence_diagonalize(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw InputError("Gram matrix is not symmetric");
  const std::size_t n = gram.rows();
  RatMatrix a = to_rational(gram);
  CongruenceForm out{RatMatrix::identity(n), std::vector<Rational>(n), false};
  RatMatrix& P = out.P;
  std::vector<bool> done(n, false);

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && a(i, i) != 0) piv = i;

    if (piv == n) {
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n && bi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[j] && a(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
      }
      if (bi == n) {
        out.degenerate = true;
        return out;
      }
      // e_i <- e_i + e_j
      for (std::size_t k = 0; k < n; ++k) a(bi, k) += a(bj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, bi) += a(k, bj);
      for (std::size_t k = 0; k < n; ++k) P(k, bi) += P(k, bj);
      piv = bi;
    }

    const Rational d = a(piv, piv);
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] || j == piv || a(j, piv) == 0) continue;
      const Rational c = a(j, piv) / d;
      for (std::size_t k = 0; k < n; ++k) a(j, k) -= c * a(piv, k);
      for (std::size_t k = 0; k < n; ++k) a(k, j) -= c * a(k, piv);
      for (std::size_t k = 0; k < n; ++k) P(k, j) -= c * P(k, piv);
    }
    done[piv] = true;
    out.diagonal[piv] = d;
  }
  return out;
}

}  // namespace k3cone
