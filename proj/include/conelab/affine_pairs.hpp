#pragma once

#include "conelab/pointedness.hpp"

namespace conelab {

class NoTriple : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotReduced : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotEuler : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Sl2Triple {
  Element h, e, f;
  Element half_h() const { return Q(1, 2) * h; }
};

inline bool triple_relations_hold(const LieAlgebra& g, const Sl2Triple& t) {
  return g.bracket(t.h, t.e) == Q(2) * t.e && g.bracket(t.h, t.f) == Q(-2) * t.f &&
         g.bracket(t.e, t.f) == t.h;
}

namespace detail {

inline std::optional<Vec> solve_stacked(const std::vector<std::pair<Mat, Vec>>& eqs, std::size_t n) {
  std::size_t rows = 0;
  for (const auto& [A, b] : eqs) rows += A.rows;
  Mat M(rows, n);
  Vec rhs(rows);
  std::size_t r = 0;
  for (const auto& [A, b] : eqs)
    for (std::size_t i = 0; i < A.rows; ++i, ++r) {
      for (std::size_t j = 0; j < n; ++j) M(r, j) = A(i, j);
      rhs[r] = b[i];
    }
  return solve(M, rhs);
}

inline Mat shifted(const Mat& A, const Q& c) {
  Mat m = A;
  for (std::size_t i = 0; i < m.rows; ++i) m(i, i) += c;
  return m;
}

}  // namespace detail

// Jacobson-Morozov: e = x, h = [e, w] with -ad(e)^2 w = 2e, then f.
inline Sl2Triple jm_triple(const LieAlgebra& g, const Element& x) {
  g.check(x);
  if (is_zero(x)) throw NoTriple("x = 0 has no sl2-triple");
  if (!g.is_ad_nilpotent(x)) throw NoTriple("x is not ad-nilpotent");
  std::size_t n = g.dim();
  Mat E = g.ad(x);
  Mat E2 = Q(-1) * (E * E);
  auto w0 = solve(E2, Q(2) * x);
  if (!w0) throw NoTriple("no h in [x, g] with [h, x] = 2x");
  std::vector<Vec> alts{*w0};
  for (const auto& k : nullspace(E2)) alts.push_back(*w0 + k);
  for (const auto& w : alts) {
    Element h = g.bracket(x, w);
    Mat H = g.ad(h);
    auto f = detail::solve_stacked({{E, h}, {detail::shifted(H, 2), zeros(n)}}, n);
    if (!f) continue;
    Sl2Triple t{h, x, *f};
    if (triple_relations_hold(g, t)) return t;
  }
  throw NoTriple("linear systems for f are inconsistent");
}

struct JordanLimit {
  bool ok = false;
  JordanSplit split;
  Element h;  // [h, x_s] = 0, [h, x_n] = 2 x_n
};

inline JordanLimit jordan_limit_check(const LieAlgebra& g, const Element& x) {
  JordanLimit out;
  out.split = jordan_decomposition(g, x);
  std::size_t n = g.dim();
  const Element& xs = out.split.semisimple;
  const Element& xn = out.split.nilpotent;
  // [h, x_s] = -ad(x_s) h
  auto h = detail::solve_stacked(
      {{Q(-1) * g.ad(xs), zeros(n)}, {Q(-1) * g.ad(xn), Q(2) * xn}}, n);
  if (!h) return out;
  out.h = *h;
  out.ok = is_zero(g.bracket(out.h, xs)) && g.bracket(out.h, xn) == Q(2) * xn;
  return out;
}

struct Derivation {
  Mat map;
  std::vector<std::pair<Q, std::size_t>> spectrum;  // eigenvalue, eigenspace dim
  bool diagonalizable = false;
  bool leibniz = false;
  bool euler = false;
};

inline Poly roots_poly(const std::vector<Q>& rs) {
  Poly p{{Q(1)}};
  for (const auto& r : rs) p = poly_mul(p, Poly{{-r, Q(1)}});
  return p;
}

// spectrum restricted to the candidate eigenvalues
inline Derivation analyze_derivation(const LieAlgebra& g, const Mat& D,
                                     const std::vector<Q>& candidates) {
  Derivation d;
  d.map = D;
  d.leibniz = g.is_derivation(D);
  std::size_t total = 0;
  for (const auto& c : candidates) {
    std::size_t k = nullspace(detail::shifted(D, -c)).size();
    if (k > 0) d.spectrum.push_back({c, k});
    total += k;
  }
  d.diagonalizable = total == D.rows;
  d.euler = poly_eval(roots_poly({Q(-1), Q(0), Q(1)}), D).is_zero();
  return d;
}

inline const std::vector<Q>& half_spectrum() {
  static const std::vector<Q> s{Q(-1), Q(-1, 2), Q(0), Q(1, 2), Q(1)};
  return s;
}

struct BuildD {
  Derivation D;
  Element h_s;  // in l
  bool dx_equals_x = false;
  bool spectrum_ok = false;  // Spec(D) in {0, +-1/2, +-1}
};

inline BuildD build_D(const SpindlerAlgebra& g, const Element& x) {
  g.algebra.check(x);
  if (!is_zero(g.pv(x))) throw NotReduced("x has a V-component; reduce to z + l first");
  Vec xl = g.pl(x);
  if (!g.data.l.is_ad_nilpotent(xl) || !is_nilpotent(g.rho(xl)))
    throw NotNilpotent("x_l is not nilpotent");
  Mat Dc = canonical_derivation(g);
  std::vector<Vec> hs;
  if (is_zero(xl)) {
    hs.push_back(zeros(g.nl()));
  } else {
    Sl2Triple t = jm_triple(g.data.l, xl);
    hs.push_back(t.half_h());
    // alternatives: shift by the centralizer of x_l inside the solution set
    Mat A = Q(-1) * g.data.l.ad(xl);
    for (const auto& k : nullspace(A)) hs.push_back(t.half_h() + k);
  }
  BuildD out;
  for (const auto& h : hs) {
    Mat D = Dc + g.algebra.ad(g.from_l(h));
    BuildD cand;
    cand.h_s = h;
    cand.D = analyze_derivation(g.algebra, D, half_spectrum());
    cand.dx_equals_x = D * x == x;
    cand.spectrum_ok = cand.D.diagonalizable;
    if (cand.dx_equals_x && cand.spectrum_ok) return cand;
    if (h == hs.front()) out = cand;
  }
  return out;
}

enum class Tri { Yes, No, Undecided };

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "YES";
    case Tri::No: return "NO";
    default: return "UNDECIDED";
  }
}

struct Membership {
  Tri value = Tri::Undecided;
  Vec lambda;       // member: combination of orbit samples
  Vec functional;   // non-member: phi >= 0 on W, phi(y) < 0
};

struct DcanReport {
  Tri value = Tri::Undecided;
  std::vector<std::string> failures;
  std::size_t samples = 0;
};

namespace detail {

// phi(e^{ad v} w) as a quadratic polynomial in v: v^T S v + lin.v + c
inline std::tuple<Mat, Vec, Q> orbit_poly(const SpindlerAlgebra& g, const Vec& phi, const Element& w) {
  ZHamiltonian H = hamiltonian_of(g, w);
  Vec pz = g.pz(phi), pv = g.pv(phi), pl = g.pl(phi);
  Mat S(g.nv(), g.nv());
  for (std::size_t k = 0; k < g.nz(); ++k)
    if (pz[k] != 0) S = S + pz[k] * H.quad[k];
  Vec lin = transpose(H.linear) * pz;
  // V-part: w_V - rho(w_l) v
  lin = lin - transpose(g.rho(g.pl(w))) * pv;
  Q c = dot(pz, H.constant) + dot(pv, g.pv(w)) + dot(pl, g.pl(w));
  return {S, lin, c};
}

}  // namespace detail

// Is y in W = cone(e^{ad V} gens)?
inline Membership orbit_cone_member(const SpindlerAlgebra& g, const std::vector<Element>& gens,
                                    const Element& y, std::size_t budget) {
  Membership m;
  std::vector<Vec> vs = detail::sample_grid(g.nv(), budget);
  vs.insert(vs.begin(), zeros(g.nv()));
  std::vector<Vec> pts;
  for (const auto& w : gens)
    for (const auto& v : vs) pts.push_back(conj_formula(g, v, w));
  for (std::size_t round = 0; round < budget; ++round) {
    if (auto lam = cone_member(GenCone(g.dim(), pts), y)) {
      m.value = Tri::Yes;
      m.lambda = *lam;
      return m;
    }
    std::vector<Vec> rows = pts;
    rows.push_back(-y);
    // margin 1 on the samples keeps phi off the sampled boundary, so the cuts
    // terminate when y is strictly separated; fall back to margin 0
    Vec rhs(rows.size(), Q(1));
    auto phi = lp_free_ge(rows, rhs, g.dim());
    if (!phi) {
      std::fill(rhs.begin(), rhs.end() - 1, Q(0));
      phi = lp_free_ge(rows, rhs, g.dim());
    }
    if (!phi) return m;
    bool added = false;
    for (const auto& w : gens) {
      auto [S, lin, c] = detail::orbit_poly(g, *phi, w);
      SemiBound sb = scalar_semibounded(S, lin, c);
      if (sb.kind == SemiKind::Constant && *sb.bound >= 0) continue;
      if (sb.kind == SemiKind::Below && *sb.bound >= 0) continue;
      // add a point where phi is negative
      auto value = [&](const Vec& v) { return quad(S, v) + dot(lin, v) + c; };
      Vec v;
      if (sb.kind == SemiKind::Below) {
        v = *sb.argopt;
      } else {
        FormCheck fc = check_psd(S);
        Vec dir;
        if (!fc.psd) dir = *fc.negative;
        else
          for (const auto& k : fc.kernel)
            if (dot(lin, k) != 0) dir = dot(lin, k) > 0 ? Vec(-k) : k;
        if (!dir.empty()) {
          Q t = 1;
          while (value(t * dir) >= 0) t *= 2;
          v = t * dir;
        }
      }
      if (v.empty()) continue;
      pts.push_back(conj_formula(g, v, w));
      added = true;
    }
    if (!added) {
      m.value = Tri::No;
      m.functional = *phi;
      return m;
    }
  }
  return m;
}

// Criterion: p_z(W) in W and p_l(W) in W for W = cone(e^{ad V} gens), gens in z + l.
inline DcanReport dcan_invariance(const SpindlerAlgebra& g, const std::vector<Element>& gens,
                                  std::size_t budget = 64) {
  DcanReport rep;
  rep.value = Tri::Yes;
  if (gens.empty()) return rep;
  for (const auto& w : gens)
    if (!is_zero(g.pv(w))) throw NotReduced("cone generators must lie in z + l");
  auto consider = [&](const Element& y, const std::string& label) {
    if (is_zero(y) || rep.value == Tri::No) return;
    Membership m = orbit_cone_member(g, gens, y, budget);
    if (m.value == Tri::No) {
      rep.value = Tri::No;
      rep.failures.push_back(label);
    } else if (m.value == Tri::Undecided && rep.value == Tri::Yes) {
      rep.value = Tri::Undecided;
      rep.failures.push_back(label + " (undecided)");
    }
  };
  for (std::size_t i = 0; i < gens.size(); ++i) {
    consider(g.from_z(g.pz(gens[i])), "p_z(gen " + std::to_string(i) + ")");
    consider(g.from_l(g.pl(gens[i])), "p_l(gen " + std::to_string(i) + ")");
    // z-parts of orbit points: constant + quadratic values
    ZHamiltonian H = hamiltonian_of(g, gens[i]);
    for (const auto& v : detail::sample_grid(g.nv(), 0))
      consider(g.from_z(H(v)), "p_z(e^{ad v} gen " + std::to_string(i) + ")");
  }
  return rep;
}

struct ModuleSplit {
  std::vector<Vec> v_eff, v_fix;
  std::vector<Vec> v_h, v_h0;  // image and kernel of rho(h)
  bool omega_orthogonal = false;
  bool involution = false;     // (2 rho(h))^2 = id on V_eff
};

inline bool is_euler_map(const Mat& A) {
  return poly_eval(roots_poly({Q(-1), Q(0), Q(1)}), A).is_zero();
}

// s given by l basis indices; h in l
inline ModuleSplit module_split(const SpindlerAlgebra& g, const std::vector<std::size_t>& s,
                                const Vec& h, const std::optional<Vec>& f = std::nullopt) {
  if (!is_euler_map(g.data.l.ad(h))) throw NotEuler("ad h is not an Euler map on l");
  ModuleSplit ms;
  std::size_t n = g.nv();
  std::vector<Vec> img, rows;
  for (std::size_t i : s) {
    for (std::size_t a = 0; a < n; ++a) {
      img.push_back(g.data.rho[i].col(a));
      rows.push_back(g.data.rho[i].row(a));
    }
  }
  ms.v_eff = span_basis(img, n);
  if (rows.empty())
    for (std::size_t a = 0; a < n; ++a) ms.v_fix.push_back(unit(n, a));
  else ms.v_fix = nullspace(Mat::from_rows(rows, n));
  Mat rh = g.rho(h);
  ms.v_h = column_space(rh);
  ms.v_h0 = nullspace(rh);
  Vec fz = f ? *f : (g.data.witness ? g.data.witness->f : Vec(g.nz(), Q(1)));
  Mat om = g.beta_f(fz);
  ms.omega_orthogonal = true;
  for (const auto& a : ms.v_eff)
    for (const auto& b : ms.v_fix)
      if (bilin(om, a, b) != 0) ms.omega_orthogonal = false;
  Mat inv = Q(4) * rh * rh;
  ms.involution = true;
  for (const auto& a : ms.v_eff)
    if (inv * a != a) ms.involution = false;
  return ms;
}

struct EulerAttempt {
  std::string label;  // candidate and assignment
  Vec h;
  std::vector<std::size_t> plus, minus;  // indices into blocks
  bool a = false, b = false, c = false;
  std::optional<Vec> c_witness;        // nonzero z vector in two of the subspaces
  bool vh_brackets_in_pm1 = true;      // beta(V_h, V_h) in z_1 + z_-1
  std::optional<Vec> overlap_witness;  // beta(p, q) outside z_1 + z_-1
  bool derivation_ok = false;
};

struct EulerResult {
  Tri value = Tri::No;
  std::optional<Derivation> D;
  std::vector<EulerAttempt> attempts;
  std::vector<std::vector<Vec>> blocks;  // l-submodules of V_h
  std::string note;
  bool graded_ok = false;  // g_0(D) = [g_1(D), g_-1(D)]
};

namespace detail {

inline std::vector<Vec> bracket_span(const SpindlerAlgebra& g, const std::vector<Vec>& A,
                                     const std::vector<Vec>& B) {
  std::vector<Vec> out;
  for (const auto& a : A)
    for (const auto& b : B) {
      Vec z = g.beta(a, b);
      if (!is_zero(z)) out.push_back(z);
    }
  return span_basis(out, g.nz());
}

inline std::vector<std::vector<std::size_t>> coordinate_components(const SpindlerAlgebra& g) {
  std::size_t n = g.nv();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  for (const auto& r : g.data.rho)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (r(a, b) != 0) parent[find(a)] = find(b);
  std::map<std::size_t, std::vector<std::size_t>> comp;
  for (std::size_t i = 0; i < n; ++i) comp[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [k, v] : comp) out.push_back(v);
  return out;
}

inline bool l_invariant(const SpindlerAlgebra& g, const std::vector<Vec>& W) {
  for (const auto& r : g.data.rho)
    for (const auto& w : W)
      if (!in_span(W, r * w)) return false;
  return true;
}

// eigenspaces of D for eigenvalue c
inline std::vector<Vec> eigenspace(const Mat& D, const Q& c) {
  return nullspace(shifted(D, -c));
}

}  // namespace detail

inline bool graded_condition(const LieAlgebra& g, const Mat& D) {
  auto g1 = detail::eigenspace(D, 1), gm = detail::eigenspace(D, -1), g0 = detail::eigenspace(D, 0);
  std::vector<Vec> br;
  for (const auto& a : g1)
    for (const auto& b : gm) br.push_back(g.bracket(a, b));
  return same_span(span_basis(br, g.dim()), g0, g.dim());
}

inline EulerResult euler_exists(const SpindlerAlgebra& g, const Element& x,
                                const std::vector<Vec>& h_candidates = {}) {
  g.algebra.check(x);
  EulerResult res;
  Vec xz = g.pz(x), xv = g.pv(x), xl = g.pl(x);
  std::vector<Vec> cands;
  if (!is_zero(xl)) {
    try {
      cands.push_back(jm_triple(g.data.l, xl).half_h());
    } catch (const NoTriple&) {
    }
  } else {
    cands.push_back(zeros(g.nl()));
  }
  for (const auto& h : h_candidates) {
    if (h.size() != g.nl()) throw DimensionMismatch("candidate h must lie in l");
    cands.push_back(h);
  }
  std::vector<Vec> uniq;
  for (const auto& h : cands)
    if (std::find(uniq.begin(), uniq.end(), h) == uniq.end()) uniq.push_back(h);
  if (uniq.empty()) {
    res.note = "no Euler candidates";
    return res;
  }
  auto comps = detail::coordinate_components(g);
  for (const auto& h : uniq) {
    std::string hl = "h#" + std::to_string(&h - uniq.data());
    if (!is_euler_map(g.data.l.ad(h))) {
      res.attempts.push_back({hl + ": ad_l h not Euler", h});
      continue;
    }
    Mat rh = g.rho(h);
    if (!poly_eval(roots_poly({Q(-1, 2), Q(0), Q(1, 2)}), rh).is_zero()) {
      res.attempts.push_back({hl + ": rho(h) spectrum outside {0, +-1/2}", h});
      continue;
    }
    std::vector<std::vector<Vec>> blocks;
    for (const auto& comp : comps) {
      std::vector<Vec> img;
      for (std::size_t a : comp) img.push_back(rh * unit(g.nv(), a));
      auto b = span_basis(img, g.nv());
      if (!b.empty()) blocks.push_back(b);
    }
    bool inv = true;
    for (const auto& b : blocks) inv = inv && detail::l_invariant(g, b);
    if (!inv) {
      res.attempts.push_back({hl + ": V_h blocks are not l-invariant", h});
      continue;
    }
    std::vector<Vec> v0 = nullspace(rh);
    std::size_t k = blocks.size();
    if (k > 16) throw BudgetExceeded("too many V_h blocks to enumerate");
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
      EulerAttempt at;
      at.h = h;
      std::vector<Vec> vp, vm;
      for (std::size_t j = 0; j < k; ++j) {
        if (mask >> j & 1) {
          at.minus.push_back(j);
          vm.insert(vm.end(), blocks[j].begin(), blocks[j].end());
        } else {
          at.plus.push_back(j);
          vp.insert(vp.end(), blocks[j].begin(), blocks[j].end());
        }
      }
      auto set_str = [](const std::vector<std::size_t>& ix) {
        std::string s;
        for (auto j : ix) s += (s.empty() ? "" : ",") + std::to_string(j);
        return "{" + s + "}";
      };
      at.label = hl + " V+=" + set_str(at.plus) + " V-=" + set_str(at.minus);
      at.a = g.data.l.bracket(h, xl) == xl;
      auto zp = detail::bracket_span(g, vp, vp);
      auto zm = detail::bracket_span(g, vm, vm);
      auto z0a = detail::bracket_span(g, vp, vm);
      auto z0b = detail::bracket_span(g, v0, v0);
      z0a.insert(z0a.end(), z0b.begin(), z0b.end());
      auto z0 = span_basis(z0a, g.nz());
      at.b = in_span(zp, xz) && in_span(vp, xv);
      std::vector<Vec> all = zp;
      all.insert(all.end(), zm.begin(), zm.end());
      all.insert(all.end(), z0.begin(), z0.end());
      at.c = rank(all, g.nz()) == zp.size() + zm.size() + z0.size();
      if (!at.c) {
        for (const auto* pr : {&zm, &z0}) {
          auto w = intersect_spans(zp, *pr, g.nz());
          if (!w.empty()) {
            at.c_witness = w[0];
            break;
          }
        }
        if (!at.c_witness) {
          auto w = intersect_spans(zm, z0, g.nz());
          if (!w.empty()) at.c_witness = w[0];
        }
      }
      // diagnostic: do brackets of V_h land in z_1 + z_-1
      std::vector<Vec> pm = zp;
      pm.insert(pm.end(), zm.begin(), zm.end());
      std::vector<Vec> vh = vp;
      vh.insert(vh.end(), vm.begin(), vm.end());
      for (const auto& p : vh) {
        for (const auto& q : vh) {
          Vec z = g.beta(p, q);
          if (!in_span(pm, z)) {
            at.vh_brackets_in_pm1 = false;
            at.overlap_witness = z;
            break;
          }
        }
        if (!at.vh_brackets_in_pm1) break;
      }
      if (at.a && at.b && at.c && !res.D) {
        // D(z, v, y) = (D_z z, [h, v] + D_V v, [h, y])
        std::vector<Vec> vb = vp;
        vb.insert(vb.end(), vm.begin(), vm.end());
        vb.insert(vb.end(), v0.begin(), v0.end());
        Mat P = Mat::from_cols(vb, g.nv());
        Mat Dg(g.nv(), g.nv());
        for (std::size_t i = 0; i < vb.size(); ++i)
          Dg(i, i) = i < vp.size() ? Q(1, 2) : (i < vp.size() + vm.size() ? Q(-1, 2) : Q(0));
        auto Pi = inverse(P);
        std::vector<Vec> zb = all;
        for (std::size_t i = 0; i < g.nz() && zb.size() < g.nz(); ++i)
          if (!in_span(zb, unit(g.nz(), i))) zb.push_back(unit(g.nz(), i));
        Mat Pz = Mat::from_cols(zb, g.nz());
        Mat Dzd(g.nz(), g.nz());
        for (std::size_t i = 0; i < zp.size() + zm.size(); ++i) Dzd(i, i) = i < zp.size() ? 1 : -1;
        auto Pzi = inverse(Pz);
        if (Pi && Pzi) {
          Mat DV = P * Dg * (*Pi);
          Mat Dz = Pz * Dzd * (*Pzi);
          Mat D = g.algebra.ad(g.from_l(h));
          for (std::size_t i = 0; i < g.nz(); ++i)
            for (std::size_t j = 0; j < g.nz(); ++j) D(i, j) += Dz(i, j);
          for (std::size_t i = 0; i < g.nv(); ++i)
            for (std::size_t j = 0; j < g.nv(); ++j) D(g.off_v() + i, g.off_v() + j) += DV(i, j);
          Derivation der = analyze_derivation(g.algebra, D, {Q(-1), Q(0), Q(1)});
          at.derivation_ok = der.leibniz && der.euler && D * x == x && !D.is_zero();
          if (at.derivation_ok) {
            res.D = der;
            res.graded_ok = graded_condition(g.algebra, D);
          }
        }
      }
      res.attempts.push_back(std::move(at));
    }
    if (res.blocks.empty()) res.blocks = blocks;
  }
  res.value = res.D ? Tri::Yes : Tri::No;
  return res;
}

struct AffinePairReport {
  bool dx_equals_x = false;
  bool nilpotent = false;
  bool leibniz = false;
  std::optional<Tri> invariance;
  Vec residual;  // Dx - x
  bool ok() const {
    return dx_equals_x && nilpotent && leibniz && (!invariance || *invariance == Tri::Yes);
  }
};

inline AffinePairReport verify_affine_pair(const LieAlgebra& g, const Element& x, const Mat& D,
                                           const SpindlerAlgebra* sg = nullptr,
                                           const std::vector<Element>* cone = nullptr) {
  AffinePairReport r;
  r.residual = D * x - x;
  r.dx_equals_x = is_zero(r.residual);
  r.nilpotent = g.is_ad_nilpotent(x);
  r.leibniz = g.is_derivation(D);
  if (sg && cone) r.invariance = dcan_invariance(*sg, *cone).value;
  return r;
}

}  // namespace conelab
