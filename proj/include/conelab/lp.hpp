#pragma once

// Exact two-phase simplex over the rationals, Bland's rule.

#include "conelab/rational.hpp"

namespace conelab {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Vec x;
  Q value = 0;
};

namespace detail {

struct Tableau {
  std::size_t m = 0, n = 0;  // n columns excluding rhs
  std::vector<Vec> t;        // m rows of length n + 1
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t c) {
    Q inv = 1 / t[r][c];
    for (auto& e : t[r]) e *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Q f = t[i][c];
      for (std::size_t j = 0; j <= n; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Maximize w.x over columns allowed[j]; returns false when unbounded.
  bool run(const Vec& w, const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < n && !enter; ++j) {
        if (!allowed[j]) continue;
        Q r = w[j];
        for (std::size_t i = 0; i < m; ++i)
          if (t[i][j] != 0 && w[basis[i]] != 0) r -= w[basis[i]] * t[i][j];
        if (r > 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Q best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][*enter] <= 0) continue;
        Q ratio = t[i][n] / t[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }
};

}  // namespace detail

// maximize c.x subject to A x = b, x >= 0
inline LpResult lp_maximize(const Mat& A, const Vec& b, const Vec& c) {
  if (A.rows != b.size() || A.cols != c.size()) throw DimensionMismatch("lp shape");
  std::size_t m = A.rows, n = A.cols;
  detail::Tableau T;
  T.m = m;
  T.n = n + m;
  T.t.assign(m, zeros(n + m + 1));
  T.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool neg = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) T.t[i][j] = neg ? Q(-A(i, j)) : A(i, j);
    T.t[i][n + i] = 1;
    T.t[i][n + m] = neg ? Q(-b[i]) : b[i];
    T.basis[i] = n + i;
  }
  Vec w1 = zeros(n + m);
  for (std::size_t i = 0; i < m; ++i) w1[n + i] = -1;
  std::vector<bool> all(n + m, true);
  T.run(w1, all);
  LpResult res;
  for (std::size_t i = 0; i < m; ++i)
    if (T.basis[i] >= n && T.t[i][n + m] != 0) return res;  // infeasible

  // drive remaining artificials out; drop redundant rows
  for (std::size_t i = 0; i < T.m;) {
    if (T.basis[i] < n) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j)
      if (T.t[i][j] != 0) col = j;
    if (col) {
      T.pivot(i, *col);
      ++i;
    } else {
      T.t.erase(T.t.begin() + static_cast<long>(i));
      T.basis.erase(T.basis.begin() + static_cast<long>(i));
      --T.m;
    }
  }
  Vec w2 = zeros(n + m);
  for (std::size_t j = 0; j < n; ++j) w2[j] = c[j];
  std::vector<bool> orig(n + m, false);
  for (std::size_t j = 0; j < n; ++j) orig[j] = true;
  if (!T.run(w2, orig)) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }
  res.status = LpResult::Status::Optimal;
  res.x = zeros(n);
  for (std::size_t i = 0; i < T.m; ++i)
    if (T.basis[i] < n) res.x[T.basis[i]] = T.t[i][n + m];
  res.value = dot(c, res.x);
  return res;
}

// x >= 0 with A x = b
inline std::optional<Vec> lp_feasible(const Mat& A, const Vec& b) {
  LpResult r = lp_maximize(A, b, zeros(A.cols));
  if (r.status == LpResult::Status::Infeasible) return std::nullopt;
  return r.x;
}

// free f in R^n with rows[i].f >= rhs[i]
inline std::optional<Vec> lp_free_ge(const std::vector<Vec>& rows, const Vec& rhs, std::size_t n) {
  std::size_t m = rows.size();
  if (m == 0) return zeros(n);
  Mat A(m, 2 * n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      A(i, k) = rows[i][k];
      A(i, n + k) = -rows[i][k];
    }
    A(i, 2 * n + i) = -1;
  }
  auto x = lp_feasible(A, rhs);
  if (!x) return std::nullopt;
  Vec f(n);
  for (std::size_t k = 0; k < n; ++k) f[k] = (*x)[k] - (*x)[n + k];
  return f;
}

}  // namespace conelab
