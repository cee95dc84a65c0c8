#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace conelab;

namespace {

Vec z1() { return Vec{Q(1)}; }

// l = 0, beta = 0
SpindlerAlgebra abelian_zv() {
  SpindlerData d;
  d.l = LieAlgebra(std::vector<std::string>{}, {});
  d.dim_V = 2;
  d.dim_z = 1;
  d.beta = {Mat(2, 2)};
  return build(d);
}

}  // namespace

// ---- spindler ----

TEST(Spindler, BuildDimensions) {
  EXPECT_EQ(jacobi(1).dim(), 6u);
  EXPECT_EQ(jacobi(2).dim(), 15u);
  EXPECT_EQ(jacobi(4).dim(), 1u + 8u + 36u);
  EXPECT_EQ(counterexample().dim(), 12u);
  EXPECT_EQ(gl2_module().dim(), 13u);
  SpindlerAlgebra a = abelian_zv();
  EXPECT_EQ(a.dim(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(a.algebra.ad_basis(i).is_zero());
}

TEST(Spindler, BracketFormula) {
  SpindlerAlgebra g = jacobi(1);
  Vec q = g.from_v({1, 0}), p = g.from_v({0, 1});
  EXPECT_EQ(g.algebra.bracket(q, p), g.from_z(z1()));  // omega(e1, e2) = 1
  std::mt19937_64 rng(1);
  SpindlerAlgebra c = counterexample();
  for (int it = 0; it < 20; ++it) {
    Vec v = oracle::rand_vec(rng, c.nv(), -2, 2), w = oracle::rand_vec(rng, c.nv(), -2, 2);
    Vec x = oracle::rand_vec(rng, c.nl(), -2, 2), y = oracle::rand_vec(rng, c.nl(), -2, 2);
    Element a = c.assemble(zeros(2), v, x), b = c.assemble(zeros(2), w, y);
    Element expect = c.assemble(c.beta(v, w), c.rho(x) * w - c.rho(y) * v,
                                c.data.l.bracket(x, y));
    EXPECT_EQ(c.algebra.bracket(a, b), expect);
  }
}

TEST(Spindler, ValidationErrors) {
  SpindlerData d = jacobi(1).data;
  SpindlerData bad_beta = d;
  bad_beta.beta[0](0, 0) = 1;
  EXPECT_THROW(build(bad_beta), InvalidBeta);
  SpindlerData bad_rho = d;
  bad_rho.rho[1] = Mat::identity(2);
  EXPECT_THROW(build(bad_rho), InvalidAction);
  // beta skew but not invariant under the action
  SpindlerData bad_inv = d;
  bad_inv.l = LieAlgebra({"s"}, {});
  bad_inv.rho = {Mat::identity(2)};
  bad_inv.cartan = {0};
  bad_inv.witness.reset();
  EXPECT_THROW(build(bad_inv), InvalidBeta);
}

TEST(Spindler, CanonicalDerivation) {
  SpindlerAlgebra g = jacobi(1);
  Mat D = canonical_derivation(g);
  EXPECT_EQ(D, Mat::from_rows({{1, 0, 0, 0, 0, 0},
                               {0, Q(1, 2), 0, 0, 0, 0},
                               {0, 0, Q(1, 2), 0, 0, 0},
                               {0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0}},
                              6));
  for (const char* n : {"jacobi2", "counterexample", "gl2_module", "heisenberg"}) {
    SpindlerAlgebra s = *catalog(n).spindler;
    EXPECT_TRUE(s.algebra.is_derivation(canonical_derivation(s))) << n;
  }
}

TEST(Spindler, ConjFormulaMatchesSeries) {
  for (const char* n : {"jacobi1", "jacobi2", "counterexample", "gl2_module"}) {
    SpindlerAlgebra g = *catalog(n).spindler;
    std::mt19937_64 rng(7);
    for (int it = 0; it < 20; ++it) {
      Vec y = oracle::rand_vec(rng, g.nv(), -2, 2);
      Vec x = oracle::rand_vec(rng, g.dim(), -2, 2);
      EXPECT_EQ(conj_formula(g, y, x), g.algebra.exp_ad(g.from_v(y), x, 4)) << n;
    }
  }
  // x = e, y = (0, 1): z-part -1/2 omega(y, e.y) = 1/2, V-part -e.y
  SpindlerAlgebra g = jacobi(1);
  Element x = g.from_l({0, 0, 1});
  Element r = conj_formula(g, {0, 1}, x);
  EXPECT_EQ(g.pz(r), Vec{Q(1, 2)});
  EXPECT_EQ(g.pv(r), (Vec{-1, 0}));
  EXPECT_EQ(g.pl(r), g.pl(x));
  Element c = g.from_z(z1());
  EXPECT_EQ(conj_formula(g, {3, 4}, c), c);
  Element v = g.from_v({1, 2});
  EXPECT_EQ(conj_formula(g, {3, 4}, v), v + g.from_z(g.beta({3, 4}, {1, 2})));
}

TEST(Spindler, ConjFormulaComposes) {
  SpindlerAlgebra g = jacobi(2);
  std::mt19937_64 rng(9);
  for (int it = 0; it < 50; ++it) {
    Vec y = oracle::rand_vec(rng, g.nv(), -2, 2), w = oracle::rand_vec(rng, g.nv(), -2, 2);
    Vec x = oracle::rand_vec(rng, g.dim(), -2, 2);
    EXPECT_EQ(conj_formula(g, y, conj_formula(g, w, x)), conj_formula(g, y + w, x));
  }
}

TEST(Spindler, FixedAndImage) {
  SpindlerAlgebra g = counterexample();
  FixedAndImage fi = v_fixed_and_image(g, {1, -1});
  std::vector<Vec> v12, v1v2;
  for (std::size_t a = 4; a < 8; ++a) v12.push_back(unit(8, a));
  for (std::size_t a = 0; a < 4; ++a) v1v2.push_back(unit(8, a));
  EXPECT_TRUE(same_span(fi.fixed, v12, 8));
  EXPECT_TRUE(same_span(fi.image, v1v2, 8));
  EXPECT_TRUE(image_is_beta_orthogonal_of_fixed(g, fi));
  FixedAndImage z = v_fixed_and_image(g, {0, 0});
  EXPECT_EQ(z.fixed.size(), 8u);
  EXPECT_TRUE(z.image.empty());
  FixedAndImage u = v_fixed_and_image(jacobi(1), {1, 0, 0});
  EXPECT_TRUE(u.fixed.empty());
  EXPECT_EQ(u.image.size(), 2u);
}

TEST(Spindler, ReduceRotation) {
  SpindlerAlgebra g = jacobi(1);
  Element x = g.assemble({0}, {1, 0}, {1, 0, 0});
  Reduction r = reduce_to_zl(g, x);
  ASSERT_TRUE(r.reduced);
  EXPECT_EQ(r.y, (Vec{0, 1}));
  EXPECT_TRUE(is_zero(g.pv(r.result)));
  EXPECT_EQ(r.result, g.algebra.exp_ad(g.from_v(r.y), x, 4));
  // already reduced
  Element xr = g.assemble({2}, {0, 0}, {1, 0, 0});
  Reduction same = reduce_to_zl(g, xr);
  ASSERT_TRUE(same.reduced);
  EXPECT_TRUE(is_zero(same.y));
  EXPECT_EQ(same.result, xr);
}

TEST(Spindler, ReduceObstruction) {
  SpindlerAlgebra g = jacobi(1);
  Element x = g.assemble({0}, {1, 2}, {0, 0, 0});
  Reduction r = reduce_to_zl(g, x);
  ASSERT_FALSE(r.reduced);
  ASSERT_TRUE(r.v0);
  EXPECT_FALSE(is_zero(g.beta(*r.v0, g.pv(x))));
  ZHamiltonian H = hamiltonian_of(g, x);
  for (int t = -3; t <= 3; ++t)
    EXPECT_EQ(H(Q(t) * *r.v0), g.pz(x) + Q(t) * r.line_direction);
}

TEST(Spindler, Admissibility) {
  SpindlerAlgebra j = jacobi(1);
  EXPECT_TRUE(check_admissibility(j, {z1(), {1, 0, 0}}).ok);
  auto bad = check_admissibility(j, {{Q(0)}, {1, 0, 0}});
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.failed, "(e)");
  SpindlerAlgebra gl = gl2_module();
  EXPECT_TRUE(check_admissibility(gl, *gl.data.witness).ok);
  EXPECT_EQ(gl.data.witness->f, (Vec{2, 2, 1}));
  EXPECT_TRUE(check_admissibility(counterexample(), *counterexample().data.witness).ok);
}

TEST(Spindler, NoIdealsInV) {
  for (const char* n : {"jacobi1", "jacobi3", "counterexample", "gl2_module", "heisenberg"}) {
    SpindlerAlgebra g = *catalog(n).spindler;
    EXPECT_TRUE(v_ideal(g).empty()) << n;
    EXPECT_TRUE(beta_nondegenerate(g)) << n;
  }
}

// ---- hamiltonian ----

TEST(Hamiltonian, Sl2Example) {
  SpindlerAlgebra g = jacobi(1);
  std::mt19937_64 rng(13);
  for (int it = 0; it < 30; ++it) {
    Q a = oracle::rand_q(rng, -4, 4), b = oracle::rand_q(rng, -4, 4), c = oracle::rand_q(rng, -4, 4);
    Vec xl = oracle::sl2_coords(a, b, c);
    EXPECT_EQ(g.rho(xl), Mat::from_rows({{a, b}, {c, -a}}, 2));
    // beta(x.v, v) = b p^2 - c q^2 + 2 a p q in (q, p)
    EXPECT_EQ(cxz_forms(g, xl)[0], Mat::from_rows({{-c, a}, {a, b}}, 2));
    ZHamiltonian H = hamiltonian_of(g, g.from_l(xl));
    EXPECT_EQ(Q(2) * H.quad[0], cxz_forms(g, xl)[0]);
  }
}

TEST(Hamiltonian, ComponentsAndCovariance) {
  for (const char* n : {"jacobi1", "jacobi2", "counterexample", "gl2_module"}) {
    SpindlerAlgebra g = *catalog(n).spindler;
    std::mt19937_64 rng(17);
    for (int it = 0; it < 30; ++it) {
      Vec x = oracle::rand_vec(rng, g.dim(), -2, 2);
      Vec v = oracle::rand_vec(rng, g.nv(), -2, 2), w = oracle::rand_vec(rng, g.nv(), -2, 2);
      ZHamiltonian H = hamiltonian_of(g, x);
      EXPECT_EQ(H(v), oracle::conj_z(g, v, x)) << n;
      ZHamiltonian Hw = hamiltonian_of(g, conj_formula(g, w, x));
      EXPECT_EQ(Hw(v), H(v + w)) << n;
    }
  }
  SpindlerAlgebra g = jacobi(1);
  ZHamiltonian Hz = hamiltonian_of(g, g.from_z({5}));
  EXPECT_EQ(Hz({7, -3}), Vec{5});
  ZHamiltonian Hv = hamiltonian_of(g, g.from_v({1, 2}));
  EXPECT_EQ(Hv({3, 1}), g.beta({3, 1}, {1, 2}));
}

TEST(Hamiltonian, ScalarSemibounded) {
  Mat I = Mat::identity(2);
  auto a = scalar_semibounded(I, {0, 0}, 0);
  EXPECT_EQ(a.kind, SemiKind::Below);
  EXPECT_EQ(*a.bound, 0);
  Mat P = Mat::from_rows({{0, 0}, {0, 1}}, 2);  // p^2 + q: q direction unbounded
  EXPECT_EQ(scalar_semibounded(P, {1, 0}, 0).kind, SemiKind::Unbounded);
  EXPECT_EQ(scalar_semibounded(Q(-1) * I, {1, 1}, 3).kind, SemiKind::Above);
  EXPECT_EQ(scalar_semibounded(Mat(2, 2), {0, 0}, 3).kind, SemiKind::Constant);
  std::mt19937_64 rng(19);
  for (int it = 0; it < 200; ++it) {
    Q a2 = oracle::rand_q(rng, -3, 3), b2 = oracle::rand_q(rng, -3, 3), c2 = oracle::rand_q(rng, -3, 3);
    Mat S = Mat::from_rows({{a2, b2}, {b2, c2}}, 2);
    Vec l = oracle::rand_vec(rng, 2, -1, 1);
    auto s = scalar_semibounded(S, l, 0);
    auto o = oracle::semibounded_2x2(S, l);
    bool lib_below = s.kind == SemiKind::Below || s.kind == SemiKind::Constant;
    bool lib_above = s.kind == SemiKind::Above || s.kind == SemiKind::Constant;
    if (o.below && o.above) EXPECT_TRUE(lib_below && lib_above);
    else {
      EXPECT_EQ(lib_below, o.below);
      EXPECT_EQ(lib_above, o.above);
    }
  }
}

// ---- pointedness ----

TEST(Pointedness, CxzExamples) {
  SpindlerAlgebra c = counterexample();
  auto v = cxz_cone(c, {1, -1});
  ASSERT_EQ(v.value, Verdict::Pointed);
  EXPECT_TRUE(verify_cxz_certificate(c, {1, -1}, v));
  auto t = cxz_cone(c, {0, 0});
  EXPECT_EQ(t.value, Verdict::Pointed);
  SpindlerAlgebra j = jacobi(1);
  auto r = cxz_cone(j, {1, 0, 0});
  ASSERT_EQ(r.value, Verdict::Pointed);
  EXPECT_EQ(r.cert.f.size(), 1u);
  EXPECT_GT(r.cert.f[0], 0);
  auto h = cxz_cone(j, {0, 1, 0});
  ASSERT_EQ(h.value, Verdict::NotPointed);
  EXPECT_TRUE(verify_cxz_certificate(j, {0, 1, 0}, h));
}

TEST(Pointedness, CoExamples) {
  SpindlerAlgebra j = jacobi(1);
  // H = p^2 + q^2 and H = pq
  EXPECT_EQ(co_pointed(j, j.from_l(oracle::sl2_coords(0, 1, -1))).verdict.value, Verdict::Pointed);
  EXPECT_EQ(co_pointed(j, j.from_l(oracle::sl2_coords(Q(1, 2), 0, 0))).verdict.value,
            Verdict::NotPointed);
  EXPECT_EQ(co_pointed(j, j.from_z({3})).verdict.value, Verdict::Pointed);
  auto line = co_pointed(j, j.from_v({1, 0}));
  EXPECT_EQ(line.verdict.value, Verdict::NotPointed);
  EXPECT_EQ(line.verdict.cert.kind, "affine_line");
}

TEST(Pointedness, CxExamples) {
  SpindlerAlgebra j = jacobi(1);
  Vec e = {0, 0, 1};
  EXPECT_EQ(cx_pointed(j, j.assemble({1}, {0, 0}, e)).verdict.value, Verdict::Pointed);
  EXPECT_EQ(cx_pointed(j, j.assemble({0}, {0, 0}, e)).verdict.value, Verdict::Pointed);
  auto neg = cx_pointed(j, j.assemble({-1}, {0, 0}, e));
  EXPECT_EQ(neg.verdict.value, Verdict::NotPointed);
  EXPECT_EQ(neg.verdict.cert.kind, "shift_in_cone");
  EXPECT_EQ(cx_pointed(j, j.from_z({-2})).verdict.value, Verdict::Pointed);
  SpindlerAlgebra c = counterexample();
  auto cx = cx_pointed(c, c.from_l({1, -1}));
  EXPECT_EQ(cx.verdict.value, Verdict::Pointed);
  EXPECT_FALSE(cx.nilpotent);
}

TEST(Pointedness, CxImpliesCoAndOrbitInvariance) {
  SpindlerAlgebra g = jacobi(1);
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    Vec x = oracle::rand_vec(rng, g.dim(), -2, 2);
    auto co = co_pointed(g, x);
    auto cx = cx_pointed(g, x);
    if (cx.verdict.value == Verdict::Pointed) EXPECT_EQ(co.verdict.value, Verdict::Pointed);
    Vec y = oracle::rand_vec(rng, g.nv(), -2, 2);
    EXPECT_EQ(co_pointed(g, conj_formula(g, y, x)).verdict.value, co.verdict.value);
    // certificates replay and f is nonnegative on sampled values of C_{x,z}
    if (co.verdict.value == Verdict::Pointed && co.reduction.reduced) {
      Vec xl = g.pl(co.reduction.result);
      EXPECT_TRUE(verify_cxz_certificate(g, xl, co.cxz));
      if (co.cxz.cert.kind == "functional")
        for (int k = 0; k < 10; ++k) {
          Vec v = oracle::rand_vec(rng, g.nv(), -3, 3);
          EXPECT_GE(dot(co.cxz.cert.f, eval_forms(cxz_forms(g, xl), v)), 0);
        }
    }
  }
}

TEST(Pointedness, Reductive) {
  CatalogEntry s = catalog("sl2");  // h, e, f
  const ReductiveModel& m = *s.reductive;
  EXPECT_EQ(reductive_co(m, {0, 1, -1}).verdict.value, Verdict::Pointed);   // rotation
  EXPECT_EQ(reductive_co(m, {1, 0, 0}).verdict.value, Verdict::NotPointed);  // h
  EXPECT_EQ(reductive_cx(m, {0, 1, 0}).verdict.value, Verdict::Pointed);     // e
  EXPECT_EQ(reductive_cx(m, {0, 0, 0}).verdict.value, Verdict::Pointed);
  CatalogEntry su = catalog("su2");
  EXPECT_EQ(reductive_co(*su.reductive, {1, 2, 3}).verdict.value, Verdict::Pointed);
  auto cx = reductive_cx(*su.reductive, {1, 2, 3});
  EXPECT_EQ(cx.verdict.value, Verdict::NotPointed);
  EXPECT_EQ(cx.verdict.cert.kind, "compact_commutator");
  ReductiveModel bad = m;
  bad.blocks[0].matrices.clear();
  EXPECT_THROW(reductive_co(bad, {1, 0, 0}), UnsupportedSimpleIdeal);
}

TEST(Pointedness, Obstruction) {
  SpindlerAlgebra c = counterexample();
  RootSystem rs = root_decomposition(c.algebra, spindler_cartan(c));
  auto ob = extension_obstruction(c, rs, c.from_l({1, -1}));
  EXPECT_EQ(ob.value, Obstruction::Obstructed);
  EXPECT_EQ(ob.checks.size(), 6u);
  EXPECT_TRUE(cone_equal(ob.cxz, GenCone(4, {{0, 1, 0, 0}, {-1, 0, 0, 0}})));
  auto ok = extension_obstruction(c, rs, c.from_l({1, 1}));
  EXPECT_EQ(ok.value, Obstruction::NoObstruction);
  auto zero = extension_obstruction(c, rs, zeros(12));
  EXPECT_EQ(zero.value, Obstruction::NoObstruction);
}

// ---- roots ----

TEST(Roots, Jacobi1) {
  SpindlerAlgebra g = jacobi(1);
  RootSystem rs = root_decomposition(g.algebra, spindler_cartan(g));
  ASSERT_EQ(rs.roots.size(), 4u);
  auto eps = rs.find({0, 1});
  auto two = rs.find({0, 2});
  ASSERT_TRUE(eps && two);
  EXPECT_EQ(rs.roots[*eps].kind, RootKind::Solvable);
  EXPECT_EQ(rs.roots[*two].kind, RootKind::Noncompact);
  ASSERT_TRUE(rs.roots[*two].coroot);
  EXPECT_EQ(dot(rs.roots[*two].s, *rs.roots[*two].coroot), 2);
  const GenCone& ce = rs.roots[*eps].cone;
  EXPECT_TRUE(cone_equal(ce, GenCone(2, {{1, 0}})) || cone_equal(ce, GenCone(2, {{-1, 0}})));
  auto meps = rs.find({0, -1});
  ASSERT_TRUE(meps);
  EXPECT_TRUE(cone_equal(rs.roots[*meps].cone, GenCone(2, {-ce.gens[0]})));
  auto ps = positive_systems(rs);
  EXPECT_EQ(ps.size(), 2u);
  for (const auto& p : ps) {
    EXPECT_TRUE(p.adapted);
    MinMax mm = c_min_max(rs, p);
    EXPECT_TRUE(mm.c_min_pointed);
    EXPECT_EQ(mm.c_min.gens.size(), 2u);  // quarter plane
    EXPECT_TRUE(is_pointed_cone(mm.c_min).pointed);
    for (const auto& gen : mm.c_min.gens) EXPECT_TRUE(in_c_max(mm, gen));
  }
  EXPECT_EQ(weyl_group(rs).size(), 1u);
}

TEST(Roots, Counterexample) {
  SpindlerAlgebra c = counterexample();
  RootSystem rs = root_decomposition(c.algebra, spindler_cartan(c));
  ASSERT_EQ(rs.roots.size(), 6u);
  for (const auto& r : rs.roots) EXPECT_EQ(r.kind, RootKind::Solvable);
  // i eps_1(y) = -y_1 in (z1, z2, x1, x2) coordinates
  auto e1 = rs.find({0, 0, -1, 0});
  auto e12 = rs.find({0, 0, -1, -1});
  ASSERT_TRUE(e1 && e12);
  EXPECT_TRUE(cone_equal(rs.roots[*e1].cone, GenCone(4, {{1, 0, 0, 0}})));
  EXPECT_TRUE(cone_equal(rs.roots[*e12].cone, GenCone(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})));
  // C_{-alpha} = -C_alpha
  for (const auto& r : rs.roots) {
    auto m = rs.find(-r.s);
    ASSERT_TRUE(m);
    std::vector<Vec> neg;
    for (const auto& gv : r.cone.gens) neg.push_back(-gv);
    EXPECT_TRUE(cone_equal(rs.roots[*m].cone, GenCone(4, neg)));
  }
  auto ps = positive_systems(rs);
  EXPECT_EQ(ps.size(), 6u);
  for (const auto& p : ps) {
    MinMax mm = c_min_max(rs, p);
    EXPECT_EQ(mm.c_min_pointed, oracle::cone_pointed(mm.c_min.gens, 4));
  }
  EXPECT_EQ(rs.centralizer_dim, 4u);
}

TEST(Roots, CoverageAndKinds) {
  for (const auto& n : catalog_names()) {
    CatalogEntry e = catalog(n);
    RootSystem rs = root_decomposition(e.algebra, e.cartan);
    std::size_t total = rs.centralizer_dim;
    for (const auto& r : rs.roots) total += r.space.size();
    EXPECT_EQ(total, 2 * e.algebra.dim() - rs.centralizer_dim) << n;
    EXPECT_EQ(rs.roots.size(), e.expected_roots) << n;
  }
  CatalogEntry sl = catalog("sl2");
  RootSystem r1 = root_decomposition(sl.algebra, sl.cartan);
  for (const auto& r : r1.roots) EXPECT_EQ(r.kind, RootKind::Noncompact);
  EXPECT_EQ(weyl_group(r1).size(), 1u);
  CatalogEntry su = catalog("su2");
  RootSystem r2 = root_decomposition(su.algebra, su.cartan);
  for (const auto& r : r2.roots) EXPECT_EQ(r.kind, RootKind::Compact);
  EXPECT_EQ(weyl_group(r2).size(), 2u);
}

TEST(Roots, CxzViaRoots) {
  // sampled [y,[y,x]] for x in t lie in the sum of C_alpha with s_alpha(x) > 0
  SpindlerAlgebra c = counterexample();
  RootSystem rs = root_decomposition(c.algebra, spindler_cartan(c));
  std::mt19937_64 rng(29);
  for (int it = 0; it < 10; ++it) {
    Vec xl = oracle::rand_vec(rng, 2, -3, 3);
    Vec y = c.from_l(xl);
    std::vector<Vec> gens;
    auto ty = detail::t_coords(rs.t, y);
    ASSERT_TRUE(ty);
    for (const auto& r : rs.roots)
      if (dot(r.s, *ty) > 0) gens.insert(gens.end(), r.cone.gens.begin(), r.cone.gens.end());
    for (int k = 0; k < 10; ++k) {
      Vec v = oracle::rand_vec(rng, c.nv(), -2, 2);
      Vec val = eval_forms(cxz_forms(c, xl), v);
      Vec full = {val[0], val[1], 0, 0};
      EXPECT_TRUE(oracle::in_cone(gens, full, 4));
    }
  }
}

TEST(Roots, NoncompactCartanRejected) {
  CatalogEntry sl = catalog("sl2");
  CartanData bad;
  bad.t = {unit(3, 0)};  // h: real spectrum
  EXPECT_THROW(root_decomposition(sl.algebra, bad), NonCompactCartan);
}

// ---- catalog and io ----

TEST(Catalog, EntriesValidate) {
  for (const auto& n : catalog_names()) {
    auto v = validate_entry(catalog(n));
    EXPECT_TRUE(v.ok()) << n << ": " << v.detail;
  }
  EXPECT_THROW(catalog("nope"), UnknownName);
  EXPECT_EQ(catalog("sl2").algebra.dim(), 3u);
  EXPECT_EQ(catalog("sp4").algebra.dim(), 10u);
  EXPECT_EQ(catalog("su2").reductive->blocks[0].kind, IdealKind::Compact);
}

TEST(Catalog, Gl2Forms) {
  SpindlerAlgebra g = gl2_module();
  Vec rot = g.data.l.parse_element("u");
  Vec zeta = g.data.l.parse_element("zeta");
  std::mt19937_64 rng(31);
  for (int it = 0; it < 10; ++it) {
    Vec v = oracle::rand_vec(rng, 6, -3, 3);
    Vec hv = g.beta(g.rho(rot) * v, v);
    EXPECT_EQ(hv[0], v[0] * v[0] + v[1] * v[1]);
    EXPECT_EQ(hv[1], v[2] * v[2] + v[3] * v[3]);
    EXPECT_EQ(hv[2], Q(2) * (v[0] * v[2] + v[1] * v[3]));
    EXPECT_EQ(g.beta(g.rho(zeta) * v, v)[2], v[4] * v[4] + v[5] * v[5]);
  }
}

TEST(Io, RoundTrip) {
  for (const auto& n : catalog_names()) {
    CatalogEntry e = catalog(n);
    json j = entry_to_json(e);
    CatalogEntry back = entry_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.algebra.bracket_entries().size(), e.algebra.bracket_entries().size()) << n;
    for (std::size_t i = 0; i < e.algebra.dim(); ++i)
      EXPECT_EQ(back.algebra.ad_basis(i), e.algebra.ad_basis(i)) << n;
    EXPECT_EQ(back.cartan.t, e.cartan.t) << n;
  }
  EXPECT_THROW(algebra_from_json(json::parse(R"({"dim": 2, "basis": ["a"]})")), ParseError);
  EXPECT_THROW(load_algebra("/nonexistent/file.json"), ParseError);
  LieAlgebra g = algebra_from_json(json::parse(
      R"({"dim": 3, "basis": ["h","e","f"], "brackets": [
          {"i":0,"j":1,"coeffs":{"1":"2"}}, {"i":0,"j":2,"coeffs":{"2":-2}},
          {"i":1,"j":2,"coeffs":{"0":"1"}}]})"));
  EXPECT_EQ(g.ad_basis(0), catalog("sl2").algebra.ad_basis(0));
}
