#pragma once

// g(l, V, z, beta): basis ordered z-block, V-block, l-block.

#include "conelab/lie_algebra.hpp"

namespace conelab {

class InvalidAction : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidBeta : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct AdmissibilityWitness {
  Vec f;  // functional on z
  Vec x;  // element of l
};

struct SpindlerData {
  LieAlgebra l;
  std::size_t dim_V = 0, dim_z = 0;
  std::vector<Mat> rho;   // one per l basis element
  std::vector<Mat> beta;  // one skew matrix per z coordinate
  std::vector<std::size_t> cartan;  // l basis indices spanning t_l
  std::optional<AdmissibilityWitness> witness;
  std::vector<std::string> v_names, z_names;
  bool l_reductive = true;  // metadata, not derived
};

class SpindlerAlgebra {
public:
  SpindlerData data;
  LieAlgebra algebra;

  std::size_t nz() const { return data.dim_z; }
  std::size_t nv() const { return data.dim_V; }
  std::size_t nl() const { return data.l.dim(); }
  std::size_t dim() const { return algebra.dim(); }
  std::size_t off_v() const { return nz(); }
  std::size_t off_l() const { return nz() + nv(); }

  Vec pz(const Element& x) const { return slice(x, 0, nz()); }
  Vec pv(const Element& x) const { return slice(x, off_v(), nv()); }
  Vec pl(const Element& x) const { return slice(x, off_l(), nl()); }

  Element assemble(const Vec& z, const Vec& v, const Vec& l) const {
    if (z.size() != nz() || v.size() != nv() || l.size() != nl())
      throw DimensionMismatch("component lengths do not match (z, V, l)");
    return concat({&z, &v, &l});
  }
  Element from_z(const Vec& z) const { return assemble(z, zeros(nv()), zeros(nl())); }
  Element from_v(const Vec& v) const { return assemble(zeros(nz()), v, zeros(nl())); }
  Element from_l(const Vec& l) const { return assemble(zeros(nz()), zeros(nv()), l); }

  Mat projection_z() const { return block_projection(0, nz()); }
  Mat projection_v() const { return block_projection(off_v(), nv()); }
  Mat projection_l() const { return block_projection(off_l(), nl()); }

  // x.v for x in l
  Mat rho(const Vec& xl) const {
    if (xl.size() != nl()) throw DimensionMismatch("l element length");
    Mat m(nv(), nv());
    for (std::size_t i = 0; i < nl(); ++i)
      if (xl[i] != 0) m = m + xl[i] * data.rho[i];
    return m;
  }

  Vec beta(const Vec& v, const Vec& w) const {
    Vec r(nz());
    for (std::size_t k = 0; k < nz(); ++k) r[k] = bilin(data.beta[k], v, w);
    return r;
  }

  // scalar form f o beta
  Mat beta_f(const Vec& f) const {
    Mat m(nv(), nv());
    for (std::size_t k = 0; k < nz(); ++k)
      if (f[k] != 0) m = m + f[k] * data.beta[k];
    return m;
  }

private:
  static Vec slice(const Element& x, std::size_t off, std::size_t n) {
    return Vec(x.begin() + static_cast<long>(off), x.begin() + static_cast<long>(off + n));
  }
  Mat block_projection(std::size_t off, std::size_t n) const {
    Mat p(dim(), dim());
    for (std::size_t i = off; i < off + n; ++i) p(i, i) = 1;
    return p;
  }
};

inline void validate(const SpindlerData& d) {
  std::size_t nl = d.l.dim(), nv = d.dim_V;
  if (d.rho.size() != nl)
    throw InvalidAction("rho has " + std::to_string(d.rho.size()) + " matrices, l has dim " +
                        std::to_string(nl));
  for (std::size_t i = 0; i < nl; ++i)
    if (d.rho[i].rows != nv || d.rho[i].cols != nv)
      throw InvalidAction("rho[" + std::to_string(i) + "] has wrong shape");
  if (d.beta.size() != d.dim_z)
    throw InvalidBeta("beta has " + std::to_string(d.beta.size()) + " matrices, dim_z is " +
                      std::to_string(d.dim_z));
  for (std::size_t k = 0; k < d.dim_z; ++k) {
    if (d.beta[k].rows != nv || d.beta[k].cols != nv)
      throw InvalidBeta("beta[" + std::to_string(k) + "] has wrong shape");
    if (!is_skew(d.beta[k])) throw InvalidBeta("beta[" + std::to_string(k) + "] is not skew");
  }
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i + 1; j < nl; ++j) {
      Mat lhs(nv, nv);
      for (const auto& t : d.l.structure(i, j)) lhs = lhs + t.c * d.rho[t.k];
      if (!(lhs == commutator(d.rho[i], d.rho[j])))
        throw InvalidAction("rho is not a homomorphism on basis pair (" + std::to_string(i) +
                            ", " + std::to_string(j) + ")");
    }
  for (std::size_t k = 0; k < d.dim_z; ++k)
    for (std::size_t i = 0; i < nl; ++i)
      if (!(d.beta[k] * d.rho[i] + transpose(d.rho[i]) * d.beta[k]).is_zero())
        throw InvalidBeta("beta[" + std::to_string(k) + "] is not invariant under l basis " +
                          std::to_string(i));
}

inline SpindlerAlgebra build(SpindlerData d) {
  validate(d);
  std::size_t nz = d.dim_z, nv = d.dim_V, nl = d.l.dim();
  if (d.z_names.empty()) {
    if (nz == 1) d.z_names = {"z"};
    else
      for (std::size_t k = 0; k < nz; ++k) d.z_names.push_back("z" + std::to_string(k + 1));
  }
  if (d.v_names.empty())
    for (std::size_t a = 0; a < nv; ++a) d.v_names.push_back("v" + std::to_string(a + 1));
  if (d.z_names.size() != nz || d.v_names.size() != nv)
    throw InvalidAlgebra("name list lengths do not match dim_z / dim_V");
  std::vector<std::string> names = d.z_names;
  names.insert(names.end(), d.v_names.begin(), d.v_names.end());
  names.insert(names.end(), d.l.names().begin(), d.l.names().end());

  std::vector<BracketEntry> br;
  std::size_t ov = nz, ol = nz + nv;
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = a + 1; b < nv; ++b) {
      BracketEntry e{ov + a, ov + b, {}};
      for (std::size_t k = 0; k < nz; ++k)
        if (d.beta[k](a, b) != 0) e.coeffs[k] = d.beta[k](a, b);
      if (!e.coeffs.empty()) br.push_back(std::move(e));
    }
  // [v_a, x_i] = -x_i.v_a
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t i = 0; i < nl; ++i) {
      BracketEntry e{ov + a, ol + i, {}};
      for (std::size_t c = 0; c < nv; ++c)
        if (d.rho[i](c, a) != 0) e.coeffs[ov + c] = -d.rho[i](c, a);
      if (!e.coeffs.empty()) br.push_back(std::move(e));
    }
  for (const auto& e : d.l.bracket_entries()) {
    BracketEntry f{ol + e.i, ol + e.j, {}};
    for (const auto& [k, c] : e.coeffs) f.coeffs[ol + k] = c;
    br.push_back(std::move(f));
  }
  SpindlerAlgebra g;
  g.algebra = LieAlgebra(std::move(names), br);
  g.data = std::move(d);
  return g;
}

// D_can = 1 on z, 1/2 on V, 0 on l
inline Mat canonical_derivation(const SpindlerAlgebra& g) {
  Mat D(g.dim(), g.dim());
  for (std::size_t i = 0; i < g.nz(); ++i) D(i, i) = 1;
  for (std::size_t i = 0; i < g.nv(); ++i) D(g.off_v() + i, g.off_v() + i) = Q(1, 2);
  return D;
}

// e^{ad y} x for y in V
inline Element conj_formula(const SpindlerAlgebra& g, const Vec& y, const Element& x) {
  g.algebra.check(x);
  if (y.size() != g.nv()) throw DimensionMismatch("conjugator must lie in V");
  Vec xz = g.pz(x), xv = g.pv(x), xl = g.pl(x);
  Vec ry = g.rho(xl) * y;
  Vec z = xz + g.beta(y, xv);
  axpy(z, Q(-1, 2), g.beta(y, ry));
  return g.assemble(z, xv - ry, xl);
}

struct FixedAndImage {
  std::vector<Vec> fixed;  // V_{x,0} = ker rho(x_l)
  std::vector<Vec> image;  // V_x = im rho(x_l)
};

inline FixedAndImage v_fixed_and_image(const SpindlerAlgebra& g, const Vec& xl) {
  Mat r = g.rho(xl);
  return {nullspace(r), column_space(r)};
}

// V_x = V_{x,0}^{perp beta}, meaningful when beta is non-degenerate
inline bool image_is_beta_orthogonal_of_fixed(const SpindlerAlgebra& g, const FixedAndImage& fi) {
  std::vector<Vec> rows;
  for (const auto& k : fi.fixed)
    for (std::size_t c = 0; c < g.nz(); ++c) rows.push_back(transpose(g.data.beta[c]) * k);
  std::vector<Vec> perp =
      rows.empty() ? std::vector<Vec>{} : nullspace(Mat::from_rows(rows, g.nv()));
  if (rows.empty())
    for (std::size_t a = 0; a < g.nv(); ++a) perp.push_back(unit(g.nv(), a));
  return same_span(perp, fi.image, g.nv());
}

inline bool beta_nondegenerate(const SpindlerAlgebra& g) {
  std::vector<Vec> rows;
  for (std::size_t c = 0; c < g.nz(); ++c)
    for (std::size_t a = 0; a < g.nv(); ++a) rows.push_back(g.data.beta[c].row(a));
  return g.nv() == 0 || rank(rows, g.nv()) == g.nv();
}

struct Reduction {
  bool reduced = false;
  Vec y;              // conjugator in V
  Element result;     // e^{ad y} x, zero V-component
  // obstruction data
  std::optional<Vec> v0;  // in ker rho(x_l), beta(v0, x_V) != 0
  Vec line_direction;     // beta(v0, x_V) in z
};

// Conjugate x into z + l, or certify that x_V is not in [x_l, V].
inline Reduction reduce_to_zl(const SpindlerAlgebra& g, const Element& x) {
  g.algebra.check(x);
  Reduction out;
  Vec xv = g.pv(x), xl = g.pl(x);
  Mat r = g.rho(xl);
  auto sol = solve(r, xv);
  if (sol) {
    out.reduced = true;
    out.y = reject_from(nullspace(r), *sol);
    out.result = conj_formula(g, out.y, x);
    return out;
  }
  for (const auto& k : nullspace(r)) {
    Vec d = g.beta(k, xv);
    if (!is_zero(d)) {
      out.v0 = k;
      out.line_direction = d;
      break;
    }
  }
  return out;
}

struct AdmissibilityReport {
  bool ok = false;
  std::string failed;  // item label "(a)".."(e)" or empty
  std::string detail;
};

inline AdmissibilityReport check_admissibility(const SpindlerAlgebra& g,
                                               const AdmissibilityWitness& w) {
  AdmissibilityReport rep;
  auto fail = [&](std::string item, std::string why) {
    rep.failed = std::move(item);
    rep.detail = std::move(why);
    return rep;
  };
  // (a) z central
  for (std::size_t k = 0; k < g.nz(); ++k)
    if (!g.algebra.ad_basis(k).is_zero()) return fail("(a)", "z is not central");
  // (b) l reductive is metadata
  if (!g.data.l_reductive) return fail("(b)", "l not declared reductive");
  // (c) Cartan elements commute
  for (std::size_t i : g.data.cartan)
    for (std::size_t j : g.data.cartan)
      if (!is_zero(g.data.l.bracket(g.data.l.basis(i), g.data.l.basis(j))))
        return fail("(c)", "declared Cartan basis does not commute");
  // (d) no nonzero t_l-fixed vectors in V
  if (g.nv() > 0) {
    std::vector<Vec> rows;
    for (std::size_t i : g.data.cartan)
      for (std::size_t a = 0; a < g.nv(); ++a) rows.push_back(g.data.rho[i].row(a));
    if (rows.empty() || rank(rows, g.nv()) < g.nv())
      return fail("(d)", "V contains nonzero t_l-fixed vectors");
  }
  // (e) f(beta(x.v, v)) positive definite
  if (w.f.size() != g.nz() || w.x.size() != g.nl())
    return fail("(e)", "witness has wrong shape");
  Mat H = symmetrize(transpose(g.rho(w.x)) * g.beta_f(w.f));
  if (!is_positive_definite(H)) return fail("(e)", "witness form is not positive definite");
  rep.ok = true;
  return rep;
}

// Largest l-invariant subspace I of V with beta(I, V) = 0.
inline std::vector<Vec> v_ideal(const SpindlerAlgebra& g) {
  std::vector<Vec> rows;
  for (std::size_t c = 0; c < g.nz(); ++c)
    for (std::size_t a = 0; a < g.nv(); ++a) rows.push_back(g.data.beta[c].row(a));
  std::vector<Vec> rad;
  if (rows.empty())
    for (std::size_t a = 0; a < g.nv(); ++a) rad.push_back(unit(g.nv(), a));
  else rad = nullspace(Mat::from_rows(rows, g.nv()));
  // the radical of an invariant form is invariant
  return rad;
}

}  // namespace conelab
