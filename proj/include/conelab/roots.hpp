#pragma once

// Roots relative to a compactly embedded Cartan subalgebra, in real form.
// For a root alpha we store s_alpha(t) := i*alpha(t) (real) on the t basis.
// The real root space R_alpha = g cap (g_C^alpha + g_C^-alpha) carries the
// complex structure J_alpha, and z = a - i J_alpha a runs over g_C^alpha.

#include "conelab/convex.hpp"
#include "conelab/lie_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <functional>

namespace conelab {

class NonCompactCartan : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class TolFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CartanData {
  std::vector<Element> t;
  bool compactness_checked = false;
};

enum class RootKind { Compact, Noncompact, Solvable };

inline const char* kind_name(RootKind k) {
  switch (k) {
    case RootKind::Compact: return "semisimple-compact";
    case RootKind::Noncompact: return "semisimple-noncompact";
    default: return "solvable";
  }
}

struct Root {
  Vec s;                     // i*alpha(t_j)
  RootKind kind = RootKind::Solvable;
  std::vector<Vec> space;    // real basis of R_alpha (shared with -alpha)
  Mat J;                     // complex structure, valid on span(space)
  std::optional<Vec> coroot; // -i alpha^vee in t coordinates, s(coroot) = 2
  GenCone cone;              // C_alpha in t coordinates
  bool cone_exact = true;    // false: sampled cone, flagged APPROXIMATE
  std::size_t pair = 0;      // index of {alpha, -alpha}
  int sign = 1;              // +1 for the pair representative
  std::size_t complex_dim() const { return space.size() / 2; }
};

struct RootSystem {
  std::size_t dim_t = 0;
  std::vector<Element> t;
  std::vector<Root> roots;  // both signs, representative first in each pair
  std::size_t centralizer_dim = 0;

  std::optional<std::size_t> find(const Vec& s) const {
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (roots[i].s == s) return i;
    return std::nullopt;
  }
  Q value(std::size_t i, const Vec& y) const { return dot(roots[i].s, y); }
};

namespace detail {

inline std::optional<Q> snap(double v, double tol, long max_den = 1000) {
  for (long d = 1; d <= max_den; ++d) {
    double n = std::round(v * static_cast<double>(d));
    if (std::abs(v - n / static_cast<double>(d)) <= tol)
      return Q(static_cast<long>(n), d);
  }
  return std::nullopt;
}

inline Eigen::MatrixXd to_eigen(const Mat& m) {
  Eigen::MatrixXd e(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) e(i, j) = to_double(m(i, j));
  return e;
}

// coordinates of an element of span(t)
inline std::optional<Vec> t_coords(const std::vector<Element>& t, const Element& x) {
  if (t.empty()) return is_zero(x) ? std::optional<Vec>(Vec{}) : std::nullopt;
  return solve(Mat::from_cols(t, x.size()), x);
}

inline std::vector<Vec> pair_samples(const std::vector<Vec>& basis) {
  std::vector<Vec> out = basis;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      out.push_back(basis[i] + basis[j]);
      out.push_back(basis[i] - basis[j]);
    }
  return out;
}

}  // namespace detail

// q_alpha(a) = [a, J_alpha a] in t coordinates
inline Vec root_bracket(const LieAlgebra& g, const RootSystem& rs, const Root& r, const Vec& a) {
  auto c = detail::t_coords(rs.t, g.bracket(a, r.J * a));
  if (!c) throw std::logic_error("[a, Ja] left the Cartan subalgebra");
  return *c;
}

// Gram matrix of y -> d . q_alpha(y) on the basis r.space
inline Mat root_form(const LieAlgebra& g, const RootSystem& rs, const Root& r, const Vec& d) {
  std::size_t m = r.space.size();
  Mat G(m, m);
  std::vector<Q> diag(m);
  for (std::size_t a = 0; a < m; ++a) diag[a] = dot(d, root_bracket(g, rs, r, r.space[a]));
  for (std::size_t a = 0; a < m; ++a) {
    G(a, a) = diag[a];
    for (std::size_t b = a + 1; b < m; ++b) {
      Q v = dot(d, root_bracket(g, rs, r, r.space[a] + r.space[b]));
      G(a, b) = G(b, a) = (v - diag[a] - diag[b]) / 2;
    }
  }
  return G;
}

inline RootSystem root_decomposition(const LieAlgebra& g, const CartanData& cd, double tol = 1e-9) {
  RootSystem rs;
  rs.t = cd.t;
  rs.dim_t = cd.t.size();
  std::size_t n = g.dim();
  for (const auto& x : cd.t) g.check(x);
  for (std::size_t i = 0; i < cd.t.size(); ++i)
    for (std::size_t j = i + 1; j < cd.t.size(); ++j)
      if (!is_zero(g.bracket(cd.t[i], cd.t[j])))
        throw std::invalid_argument("Cartan basis elements do not commute");
  if (rank(cd.t, n) != cd.t.size()) throw std::invalid_argument("Cartan basis is dependent");

  std::vector<Mat> A;
  for (const auto& x : cd.t) A.push_back(g.ad(x));
  // centralizer of t
  {
    std::vector<Vec> rows;
    for (const auto& a : A)
      for (std::size_t r = 0; r < n; ++r) rows.push_back(a.row(r));
    rs.centralizer_dim = rows.empty() ? n : n - rank(rows, n);
  }
  if (cd.t.empty() || n == 0) return rs;

  // generic exact combination T = sum c_j ad t_j, c_j ~ sqrt(prime_j)
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  std::vector<Q> c(cd.t.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    c[j] = Q(static_cast<long>(std::lround(std::sqrt(primes[j % 16] + 16.0 * (j / 16)) * 997)), 997);
  Mat T(n, n);
  for (std::size_t j = 0; j < A.size(); ++j) T = T + c[j] * A[j];

  Eigen::MatrixXd Td = detail::to_eigen(T);
  double scale = std::max(1.0, Td.cwiseAbs().maxCoeff());
  Eigen::EigenSolver<Eigen::MatrixXd> es(Td, true);
  if (es.info() != Eigen::Success) throw TolFailure("eigen-decomposition failed");
  std::vector<Eigen::MatrixXd> Ad;
  for (const auto& a : A) Ad.push_back(detail::to_eigen(a));

  std::vector<Vec> thetas;  // alpha(t_j) = i theta_j
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    std::complex<double> lam = es.eigenvalues()[k];
    if (std::abs(lam.real()) > tol * scale * 1e3)
      throw NonCompactCartan("ad(t) has an eigenvalue with real part " +
                             std::to_string(lam.real()));
    if (std::abs(lam.imag()) <= tol * scale * 1e3) continue;
    Eigen::VectorXcd w = es.eigenvectors().col(k);
    Eigen::Index piv = 0;
    w.cwiseAbs().maxCoeff(&piv);
    Vec th(cd.t.size());
    for (std::size_t j = 0; j < Ad.size(); ++j) {
      std::complex<double> mu = (Ad[j].cast<std::complex<double>>() * w)(piv) / w(piv);
      if (std::abs(mu.real()) > 1e-6 * std::max(1.0, std::abs(mu)))
        throw NonCompactCartan("ad(t_j) has an eigenvalue with nonzero real part");
      auto q = detail::snap(mu.imag(), std::max(tol, 1e-7));
      if (!q) throw TolFailure("root value " + std::to_string(mu.imag()) + " does not snap");
      th[j] = *q;
    }
    if (is_zero(th)) continue;
    if (std::find(thetas.begin(), thetas.end(), th) == thetas.end()) thetas.push_back(th);
  }

  std::size_t covered = rs.centralizer_dim;
  std::vector<Q> seen_t;
  for (const auto& th : thetas) {
    Vec s = -th;
    if (rs.find(s) || rs.find(th)) continue;
    Q theta_T = dot(c, th);
    for (const auto& v : seen_t)
      if (v == theta_T || v == -theta_T)
        throw TolFailure("generic Cartan combination separates no root pair");
    seen_t.push_back(theta_T);
    Mat K = T * T;
    for (std::size_t i = 0; i < n; ++i) K(i, i) += theta_T * theta_T;
    std::vector<Vec> R = nullspace(K);
    if (R.empty() || R.size() % 2 != 0) throw TolFailure("root space has odd real dimension");
    for (const auto& a : R)
      for (std::size_t j = 0; j < A.size(); ++j)
        if (A[j] * a != (th[j] / theta_T) * (T * a))
          throw TolFailure("snapped root values inconsistent with ad(t)");
    covered += R.size();

    Root r;
    r.s = s;
    r.space = R;
    r.J = (1 / theta_T) * T;
    r.pair = rs.roots.size() / 2;
    r.sign = 1;
    rs.roots.push_back(r);
    Root m = r;
    m.s = th;
    m.J = (-1) * r.J;
    m.sign = -1;
    rs.roots.push_back(m);
  }
  if (covered != n)
    throw TolFailure("root spaces and centralizer cover " + std::to_string(covered) + " of " +
                     std::to_string(n) + " dimensions");

  for (std::size_t p = 0; p + 1 < rs.roots.size(); p += 2) {
    Root& r = rs.roots[p];
    Mat F = root_form(g, rs, r, r.s);
    if (F.is_zero()) {
      r.kind = RootKind::Solvable;
    } else {
      FormCheck pc = check_psd(F), nc = check_psd((-1) * F);
      if (pc.psd == nc.psd) throw TolFailure("root form is indefinite");
      r.kind = pc.psd ? RootKind::Noncompact : RootKind::Compact;
      for (const auto& a : r.space) {
        Vec q = root_bracket(g, rs, r, a);
        Q v = dot(r.s, q);
        if (v != 0) {
          r.coroot = (2 / v) * q;
          break;
        }
      }
    }
    // C_alpha from sampled real combinations, then an exactness check
    std::vector<Vec> gens;
    for (const auto& a : detail::pair_samples(r.space)) gens.push_back(root_bracket(g, rs, r, a));
    detail::dedupe_rays(gens);
    r.cone = irredundant(GenCone(rs.dim_t, gens));
    if (rs.dim_t <= kConeDimBudget) {
      for (const auto& d : dual_cone(r.cone).gens)
        if (!check_psd(root_form(g, rs, r, d)).psd) {
          r.cone_exact = false;
          break;
        }
    } else {
      r.cone_exact = false;
    }
    Root& m = rs.roots[p + 1];
    m.kind = r.kind;
    if (r.coroot) m.coroot = -*r.coroot;
    std::vector<Vec> neg;
    for (const auto& v : r.cone.gens) neg.push_back(-v);
    m.cone = GenCone(rs.dim_t, neg);
    m.cone_exact = r.cone_exact;
  }
  return rs;
}

struct PositiveSystem {
  Vec x0;                          // y in t with s_alpha(y) != 0 for all roots
  std::vector<std::size_t> positive;
  bool adapted = false;
};

inline bool is_noncompact(const Root& r) { return r.kind != RootKind::Compact; }

namespace detail {

inline bool chamber_feasible(const RootSystem& rs, const std::vector<int>& sig,
                             std::vector<Vec> extra_rows = {}) {
  std::vector<Vec> rows = std::move(extra_rows);
  for (std::size_t p = 0; p < sig.size(); ++p)
    rows.push_back(Q(sig[p]) * rs.roots[2 * p].s);
  return lp_free_ge(rows, Vec(rows.size(), Q(1)), rs.dim_t).has_value();
}

}  // namespace detail

// Chambers of the arrangement {ker s_alpha}, by LP-pruned sign search.
inline std::vector<PositiveSystem> positive_systems(const RootSystem& rs) {
  std::size_t np = rs.roots.size() / 2;
  std::vector<PositiveSystem> out;
  std::vector<int> sig;
  std::function<void()> rec = [&]() {
    if (!detail::chamber_feasible(rs, sig)) return;
    if (sig.size() < np) {
      for (int s : {1, -1}) {
        sig.push_back(s);
        rec();
        sig.pop_back();
      }
      return;
    }
    PositiveSystem ps;
    std::vector<Vec> rows;
    for (std::size_t p = 0; p < np; ++p) {
      rows.push_back(Q(sig[p]) * rs.roots[2 * p].s);
      ps.positive.push_back(2 * p + (sig[p] > 0 ? 0 : 1));
    }
    ps.x0 = *lp_free_ge(rows, Vec(rows.size(), Q(1)), rs.dim_t);
    // adapted: s_beta(y) > s_gamma(y) for gamma compact, beta noncompact positive
    std::vector<Vec> extra;
    for (std::size_t b : ps.positive) {
      if (!is_noncompact(rs.roots[b])) continue;
      for (const auto& g : rs.roots)
        if (g.kind == RootKind::Compact) extra.push_back(rs.roots[b].s - g.s);
    }
    ps.adapted = detail::chamber_feasible(rs, sig, extra);
    out.push_back(std::move(ps));
  };
  rec();
  return out;
}

struct MinMax {
  GenCone c_min;                  // t coordinates
  std::vector<Vec> c_max_halfspaces;  // s_alpha >= 0
  bool c_min_pointed = false;
};

inline MinMax c_min_max(const RootSystem& rs, const PositiveSystem& ps) {
  MinMax mm;
  std::vector<Vec> gens;
  for (std::size_t i : ps.positive) {
    const Root& r = rs.roots[i];
    if (!is_noncompact(r)) continue;
    if (r.kind == RootKind::Solvable) gens.insert(gens.end(), r.cone.gens.begin(), r.cone.gens.end());
    else gens.push_back(*r.coroot);
    mm.c_max_halfspaces.push_back(r.s);
  }
  detail::dedupe_rays(gens);
  mm.c_min = GenCone(rs.dim_t, gens);
  mm.c_min_pointed = is_pointed_cone(mm.c_min).pointed;
  return mm;
}

inline bool in_c_max(const MinMax& mm, const Vec& y) {
  for (const auto& h : mm.c_max_halfspaces)
    if (dot(h, y) < 0) return false;
  return true;
}

// x -> x - s_alpha(x) h_alpha on t coordinates, one per compact pair
inline std::vector<Mat> weyl_reflections(const RootSystem& rs) {
  std::vector<Mat> out;
  for (std::size_t p = 0; p < rs.roots.size(); p += 2) {
    const Root& r = rs.roots[p];
    if (r.kind != RootKind::Compact) continue;
    Mat S = Mat::identity(rs.dim_t);
    for (std::size_t i = 0; i < rs.dim_t; ++i)
      for (std::size_t j = 0; j < rs.dim_t; ++j) S(i, j) -= (*r.coroot)[i] * r.s[j];
    out.push_back(S);
  }
  return out;
}

inline std::vector<Mat> weyl_group(const RootSystem& rs, std::size_t cap = 100000) {
  std::vector<Mat> gens = weyl_reflections(rs);
  std::vector<Mat> group{Mat::identity(rs.dim_t)};
  for (std::size_t i = 0; i < group.size(); ++i)
    for (const auto& s : gens) {
      Mat w = s * group[i];
      if (std::find(group.begin(), group.end(), w) == group.end()) {
        group.push_back(w);
        if (group.size() > cap) throw BudgetExceeded("Weyl group orbit closure exceeded cap");
      }
    }
  return group;
}

}  // namespace conelab
