#pragma once

#include "conelab/pointedness.hpp"

namespace conelab {

class UnknownName : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Basis of sp_2n(R) (X^T J + J X = 0): u_i, then E_ij - E_{n+j,n+i},
// then E_{i,n+j} + E_{j,n+i} (i <= j, diagonal single), then E_{n+i,j} + E_{n+j,i} (i < j).
struct SpBasis {
  std::vector<std::string> names;
  std::vector<Mat> mats;
};

inline SpBasis sp_basis(std::size_t n) {
  SpBasis b;
  std::size_t d = 2 * n;
  auto E = [&](std::size_t i, std::size_t j) {
    Mat m(d, d);
    m(i, j) = 1;
    return m;
  };
  auto idx = [&](std::size_t i) { return std::to_string(i + 1); };
  for (std::size_t i = 0; i < n; ++i) {
    b.names.push_back(n == 1 ? "u" : "u" + idx(i));
    b.mats.push_back(E(i, n + i) - E(n + i, i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      b.names.push_back(n == 1 ? "h" : "a" + idx(i) + idx(j));
      b.mats.push_back(E(i, j) - E(n + j, n + i));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      b.names.push_back(n == 1 ? "e" : "b" + idx(i) + idx(j));
      b.mats.push_back(i == j ? E(i, n + i) : E(i, n + j) + E(j, n + i));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      b.names.push_back("c" + idx(i) + idx(j));
      b.mats.push_back(E(n + i, j) + E(n + j, i));
    }
  return b;
}

struct CatalogEntry {
  std::string name;
  std::string description;
  LieAlgebra algebra;
  std::optional<SpindlerAlgebra> spindler;
  std::optional<ReductiveModel> reductive;
  CartanData cartan;
  std::size_t expected_roots = 0;  // regression value: number of roots
};

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{
      "jacobi1", "jacobi2", "jacobi3", "jacobi4", "counterexample", "gl2_module",
      "heisenberg", "sl2", "sp4", "sp6", "su2"};
  return names;
}

inline SpindlerAlgebra jacobi(std::size_t n) {
  if (n < 1 || n > 4) throw std::invalid_argument("jacobi(n) supports 1 <= n <= 4");
  SpBasis sp = sp_basis(n);
  SpindlerData d;
  d.l = LieAlgebra::from_matrices(sp.names, sp.mats);
  d.dim_V = 2 * n;
  d.dim_z = 1;
  d.rho = sp.mats;
  d.beta = {symplectic_J(n)};
  for (std::size_t i = 0; i < n; ++i) d.cartan.push_back(i);
  for (const char* p : {"q", "p"})
    for (std::size_t i = 0; i < n; ++i)
      d.v_names.push_back(n == 1 ? std::string(p) : p + std::to_string(i + 1));
  d.z_names = {"z"};
  Vec x = zeros(d.l.dim());
  for (std::size_t i = 0; i < n; ++i) x[i] = 1;
  d.witness = AdmissibilityWitness{{Q(1)}, x};
  return build(std::move(d));
}

namespace detail {

// i on the real plane (re, im)
inline void put_i(Mat& m, std::size_t re, const Q& s) {
  m(re, re + 1) -= s;
  m(re + 1, re) += s;
}

inline void put_omega(Mat& m, std::size_t a, std::size_t b) {
  m(a, b) += 1;
  m(b, a) -= 1;
}

}  // namespace detail

// l = R^2 on C + C + C^2, z = R^2
inline SpindlerAlgebra counterexample() {
  SpindlerData d;
  d.l = LieAlgebra({"x1", "x2"}, {});
  d.dim_V = 8;
  d.dim_z = 2;
  Mat r1(8, 8), r2(8, 8);
  detail::put_i(r1, 0, 1);
  detail::put_i(r2, 2, 1);
  for (std::size_t b : {4u, 6u}) {
    detail::put_i(r1, b, 1);
    detail::put_i(r2, b, 1);
  }
  d.rho = {r1, r2};
  Mat b1(8, 8), b2(8, 8);
  // Im(conj(z) w) = re_z im_w - im_z re_w
  detail::put_omega(b1, 0, 1);
  detail::put_omega(b1, 4, 5);
  detail::put_omega(b2, 2, 3);
  detail::put_omega(b2, 6, 7);
  d.beta = {b1, b2};
  d.cartan = {0, 1};
  d.v_names = {"re1", "im1", "re2", "im2", "re3", "im3", "re4", "im4"};
  d.z_names = {"z1", "z2"};
  d.witness = AdmissibilityWitness{{Q(1), Q(1)}, {Q(-1), Q(-1)}};
  return build(std::move(d));
}

// l = R zeta + sl2(R) on V1 + V2 + V3, z = R^3, beta = (beta_+, beta_-, beta_0)
inline SpindlerAlgebra gl2_module() {
  auto m3 = [](std::initializer_list<std::pair<std::size_t, std::size_t>> ones,
               std::initializer_list<std::pair<std::size_t, std::size_t>> minus) {
    Mat m(3, 3);
    for (auto [i, j] : ones) m(i, j) += 1;
    for (auto [i, j] : minus) m(i, j) -= 1;
    return m;
  };
  std::vector<Mat> lm{m3({{2, 2}}, {}), m3({{0, 1}}, {{1, 0}}), m3({{0, 0}}, {{1, 1}}),
                      m3({{0, 1}}, {})};
  SpindlerData d;
  d.l = LieAlgebra::from_matrices({"zeta", "u", "h", "e"}, lm);
  d.dim_V = 6;
  d.dim_z = 3;
  for (std::size_t i = 0; i < 4; ++i) {
    Mat r(6, 6);
    if (i == 0) {
      r(4, 5) = 1;
      r(5, 4) = -1;
    } else {
      for (std::size_t blk : {0u, 2u})
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) r(blk + a, blk + b) = lm[i](a, b);
    }
    d.rho.push_back(r);
  }
  Mat bp(6, 6), bm(6, 6), b0(6, 6);
  detail::put_omega(bp, 0, 1);
  detail::put_omega(bm, 2, 3);
  detail::put_omega(b0, 0, 3);
  b0(1, 2) -= 1;
  b0(2, 1) += 1;
  detail::put_omega(b0, 4, 5);
  d.beta = {bp, bm, b0};
  d.cartan = {0, 1};
  d.v_names = {"v1", "v2", "v3", "v4", "v5", "v6"};
  d.z_names = {"z1", "z2", "z3"};
  d.witness = AdmissibilityWitness{{Q(2), Q(2), Q(1)}, {Q(1), Q(1), Q(0), Q(0)}};
  return build(std::move(d));
}

// oscillator algebra g(R u, R^2, R, omega)
inline SpindlerAlgebra heisenberg() {
  SpindlerData d;
  d.l = LieAlgebra({"u"}, {});
  d.dim_V = 2;
  d.dim_z = 1;
  d.rho = {symplectic_J(1)};
  d.beta = {symplectic_J(1)};
  d.cartan = {0};
  d.v_names = {"q", "p"};
  d.z_names = {"z"};
  d.witness = AdmissibilityWitness{{Q(1)}, {Q(1)}};
  return build(std::move(d));
}

inline CatalogEntry simple_entry(const std::string& name) {
  CatalogEntry e;
  e.name = name;
  ReductiveModel m;
  IdealBlock b;
  if (name == "sl2") {
    Mat h(2, 2), ep(2, 2), f(2, 2);
    h(0, 0) = 1;
    h(1, 1) = -1;
    ep(0, 1) = 1;
    f(1, 0) = 1;
    m.g = LieAlgebra::from_matrices({"h", "e", "f"}, {h, ep, f});
    b = {IdealKind::Symplectic, {0, 1, 2}, {h, ep, f}, "sl2"};
    e.cartan.t = {Vec{Q(0), Q(1), Q(-1)}};
    e.description = "sl2(R) = sp2(R), basis (h, e, f)";
    e.expected_roots = 2;
  } else if (name == "sp4" || name == "sp6") {
    std::size_t n = name == "sp4" ? 2 : 3;
    SpBasis sp = sp_basis(n);
    m.g = LieAlgebra::from_matrices(sp.names, sp.mats);
    b.kind = IdealKind::Symplectic;
    for (std::size_t i = 0; i < sp.mats.size(); ++i) b.indices.push_back(i);
    b.matrices = sp.mats;
    b.label = name;
    for (std::size_t i = 0; i < n; ++i) e.cartan.t.push_back(unit(m.g.dim(), i));
    e.description = name + "(R), hermitian of tube type";
    e.expected_roots = 2 * n * n;
  } else if (name == "su2") {
    m.g = LieAlgebra({"X1", "X2", "X3"},
                     {{0, 1, {{2, Q(1)}}}, {1, 2, {{0, Q(1)}}}, {0, 2, {{1, Q(-1)}}}});
    b = {IdealKind::Compact, {0, 1, 2}, {}, "su2"};
    e.cartan.t = {unit(3, 2)};
    e.description = "su(2), compact";
    e.expected_roots = 2;
  } else {
    throw UnknownName("unknown simple algebra: " + name);
  }
  m.blocks.push_back(b);
  e.algebra = m.g;
  e.reductive = m;
  return e;
}

inline CatalogEntry spindler_entry(std::string name, std::string desc, SpindlerAlgebra g,
                                   std::size_t roots) {
  CatalogEntry e;
  e.name = std::move(name);
  e.description = std::move(desc);
  e.algebra = g.algebra;
  e.cartan = spindler_cartan(g);
  e.spindler = std::move(g);
  e.expected_roots = roots;
  return e;
}

inline CatalogEntry catalog(const std::string& name) {
  if (name.rfind("jacobi", 0) == 0 && name.size() == 7 && name[6] >= '1' && name[6] <= '4') {
    std::size_t n = static_cast<std::size_t>(name[6] - '0');
    // V: 2n roots; sp_2n: 2n^2
    return spindler_entry(name, "Jacobi algebra hsp_" + std::to_string(2 * n) + "(R)", jacobi(n),
                          2 * n + 2 * n * n);
  }
  if (name == "counterexample")
    return spindler_entry(name, "l = R^2 on C + C + C^2, z = R^2", counterexample(), 6);
  if (name == "gl2_module")
    return spindler_entry(name, "l = gl2(R) on V1 + V2 + V3, z = R^3", gl2_module(), 6);
  if (name == "heisenberg")
    return spindler_entry(name, "oscillator algebra g(R u, R^2, R, omega)", heisenberg(), 2);
  return simple_entry(name);
}

struct EntryValidation {
  bool jacobi = false;
  bool beta_invariant = false;
  bool witness_psd = false;
  bool cartan_commutes = false;
  bool roots_match = false;
  std::string detail;
  bool ok() const { return jacobi && beta_invariant && witness_psd && cartan_commutes && roots_match; }
};

inline EntryValidation validate_entry(const CatalogEntry& e) {
  EntryValidation v;
  v.jacobi = e.algebra.jacobi_holds();
  v.cartan_commutes = true;
  for (const auto& a : e.cartan.t)
    for (const auto& b : e.cartan.t)
      if (!is_zero(e.algebra.bracket(a, b))) v.cartan_commutes = false;
  if (e.spindler) {
    try {
      validate(e.spindler->data);
      v.beta_invariant = true;
    } catch (const std::exception& ex) {
      v.detail = ex.what();
    }
    if (e.spindler->data.witness) {
      AdmissibilityReport r = check_admissibility(*e.spindler, *e.spindler->data.witness);
      v.witness_psd = r.ok;
      if (!r.ok) v.detail += r.failed + " " + r.detail;
    }
  } else {
    v.beta_invariant = true;
    v.witness_psd = true;
  }
  RootSystem rs = root_decomposition(e.algebra, e.cartan);
  v.roots_match = rs.roots.size() == e.expected_roots;
  if (!v.roots_match) v.detail += " root count " + std::to_string(rs.roots.size());
  return v;
}

}  // namespace conelab
