#pragma once

// Smith normal form over the integers with a transformation certificate:
// U * M * V = D with U, V unimodular and D diagonal satisfying the
// divisibility chain d1 | d2 | ... All arithmetic is exact.

#include <vector>

#include "kirbycalc/bigint.hpp"

namespace kirbycalc {

using IntMat = std::vector<std::vector<BigInt>>;

inline IntMat identity_matrix(int n) {
  IntMat m(n, std::vector<BigInt>(n, BigInt(0)));
  for (int i = 0; i < n; ++i) m[i][i] = BigInt(1);
  return m;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  int n = static_cast<int>(a.size());
  int k = n ? static_cast<int>(a[0].size()) : 0;
  int m = b.empty() ? 0 : static_cast<int>(b[0].size());
  IntMat r(n, std::vector<BigInt>(m, BigInt(0)));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (int j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

// Bareiss fraction-free determinant.
inline BigInt mat_det(IntMat m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return BigInt(1);
  BigInt denom(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) { piv = i; break; }
      if (piv < 0) return BigInt(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        BigInt num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        BigInt q, r;
        BigInt::divmod(num, denom, q, r);
        if (!r.is_zero()) throw std::logic_error("Bareiss: inexact division");
        m[i][j] = q;
      }
    denom = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

struct AbelianInvariants {
  int free_rank = 0;
  std::vector<BigInt> torsion;  // d1 | d2 | ..., each >= 2
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_free_of_rank(int n) const { return free_rank == n && torsion.empty(); }
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    if (free_rank == 1) s = "Z";
    else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
    for (const BigInt& d : torsion) {
      if (!s.empty()) s += " + ";
      s += "Z/" + d.to_string();
    }
    return s;
  }
};

struct SmithResult {
  IntMat input;  // M
  IntMat D, U, V;

  // checkable by multiplication: U*M*V == D, det(U), det(V) = +-1
  bool certificate_valid() const {
    if (mat_mul(mat_mul(U, input), V) != D) return false;
    if (!(mat_det(U).abs() == BigInt(1))) return false;
    if (!(mat_det(V).abs() == BigInt(1))) return false;
    int n = static_cast<int>(D.size());
    int m = n ? static_cast<int>(D[0].size()) : 0;
    BigInt prev;
    bool have_prev = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        if (i != j && !D[i][j].is_zero()) return false;
        if (i == j) {
          if (D[i][i].is_negative()) return false;
          if (have_prev && !D[i][i].is_zero()) {
            if (prev.is_zero()) return false;
            if (!(D[i][i] % prev).is_zero()) return false;
          }
          if (!D[i][i].is_zero()) { prev = D[i][i]; have_prev = true; }
        }
      }
    // zero diagonal entries must come after all nonzero ones
    bool seen_zero = false;
    for (int i = 0; i < std::min(n, m); ++i) {
      if (D[i][i].is_zero()) seen_zero = true;
      else if (seen_zero) return false;
    }
    return true;
  }

  // cokernel invariants of a square presentation matrix
  AbelianInvariants cokernel() const {
    AbelianInvariants inv;
    int n = static_cast<int>(D.size());
    int m = n ? static_cast<int>(D[0].size()) : 0;
    if (n != m) throw std::logic_error("cokernel needs a square matrix");
    for (int i = 0; i < n; ++i) {
      if (D[i][i].is_zero()) ++inv.free_rank;
      else if (D[i][i] > BigInt(1)) inv.torsion.push_back(D[i][i]);
    }
    return inv;
  }
};

inline SmithResult smith_normal_form(const IntMat& m_in) {
  SmithResult res;
  res.input = m_in;
  int rows = static_cast<int>(m_in.size());
  int cols = rows ? static_cast<int>(m_in[0].size()) : 0;
  IntMat m = m_in;
  res.U = identity_matrix(rows);
  res.V = identity_matrix(cols);
  auto row_add = [&](int dst, int src, const BigInt& f) {  // row dst += f*src
    for (int j = 0; j < cols; ++j) m[dst][j] += f * m[src][j];
    for (int j = 0; j < rows; ++j) res.U[dst][j] += f * res.U[src][j];
  };
  auto col_add = [&](int dst, int src, const BigInt& f) {
    for (int i = 0; i < rows; ++i) m[i][dst] += f * m[i][src];
    for (int i = 0; i < cols; ++i) res.V[i][dst] += f * res.V[i][src];
  };
  auto row_swap = [&](int a, int b) {
    std::swap(m[a], m[b]);
    std::swap(res.U[a], res.U[b]);
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < rows; ++i) std::swap(m[i][a], m[i][b]);
    for (int i = 0; i < cols; ++i) std::swap(res.V[i][a], res.V[i][b]);
  };
  auto row_neg = [&](int a) {
    for (int j = 0; j < cols; ++j) m[a][j] = -m[a][j];
    for (int j = 0; j < rows; ++j) res.U[a][j] = -res.U[a][j];
  };

  int k = 0;
  int lim = std::min(rows, cols);
  while (k < lim) {
    // find a pivot: smallest nonzero magnitude in the trailing block
    int pi = -1, pj = -1;
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j)
        if (!m[i][j].is_zero() &&
            (pi < 0 || m[i][j].abs() < m[pi][pj].abs())) { pi = i; pj = j; }
    if (pi < 0) break;
    row_swap(k, pi);
    col_swap(k, pj);
    bool clean = true;
    for (int i = k + 1; i < rows; ++i) {
      if (m[i][k].is_zero()) continue;
      BigInt q = m[i][k] / m[k][k];
      row_add(i, k, -q);
      if (!m[i][k].is_zero()) clean = false;
    }
    for (int j = k + 1; j < cols; ++j) {
      if (m[k][j].is_zero()) continue;
      BigInt q = m[k][j] / m[k][k];
      col_add(j, k, -q);
      if (!m[k][j].is_zero()) clean = false;
    }
    if (!clean) continue;  // smaller remainders now exist; repick pivot
    // divisibility: fold any non-divisible entry into row k and redo
    bool redo = false;
    for (int i = k + 1; i < rows && !redo; ++i)
      for (int j = k + 1; j < cols && !redo; ++j)
        if (!(m[i][j] % m[k][k]).is_zero()) {
          row_add(k, i, BigInt(1));
          redo = true;
        }
    if (redo) continue;
    if (m[k][k].is_negative()) row_neg(k);
    ++k;
  }
  res.D = m;
  return res;
}

}  // namespace kirbycalc
