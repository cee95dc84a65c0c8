#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace conelab;

namespace {

LieAlgebra sl2() { return catalog("sl2").algebra; }  // h, e, f

Vec e_(std::size_t n, std::size_t i) { return unit(n, i); }

}  // namespace

// ---- rationals and linear algebra ----

TEST(Rational, ParseForms) {
  EXPECT_EQ(parse_rational("3/4"), Q(3, 4));
  EXPECT_EQ(parse_rational("-2"), Q(-2));
  EXPECT_EQ(parse_rational("0.25"), Q(1, 4));
  EXPECT_EQ(parse_rational("-1.5"), Q(-3, 2));
  EXPECT_EQ(parse_rational("010"), Q(10));
  EXPECT_EQ(parse_rational("07/010"), Q(7, 10));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(to_string(Q(-6, 4)), "-3/2");
}

TEST(Rational, NullspaceAndSolve) {
  Mat m = Mat::from_rows({{1, 2, 3}, {2, 4, 6}}, 3);
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_TRUE(is_zero(m * v));
  EXPECT_FALSE(solve(m, Vec{1, 1}).has_value());
  auto x = solve(m, Vec{1, 2});
  ASSERT_TRUE(x);
  EXPECT_EQ(m * *x, (Vec{1, 2}));
}

TEST(Rational, PsdWitnesses) {
  FormCheck a = check_psd(Mat::from_rows({{1, 1}, {1, 1}}, 2));
  EXPECT_TRUE(a.psd);
  ASSERT_EQ(a.kernel.size(), 1u);
  EXPECT_EQ(quad(Mat::from_rows({{1, 1}, {1, 1}}, 2), a.kernel[0]), 0);
  Mat ind = Mat::from_rows({{0, 1}, {1, 0}}, 2);
  FormCheck b = check_psd(ind);
  EXPECT_FALSE(b.psd);
  ASSERT_TRUE(b.negative);
  EXPECT_LT(quad(ind, *b.negative), 0);
}

TEST(Rational, PsdAgreesWithMinorsOn2x2) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    Q a = oracle::rand_q(rng, -3, 3), b = oracle::rand_q(rng, -3, 3), c = oracle::rand_q(rng, -3, 3);
    Mat S = Mat::from_rows({{a, b}, {b, c}}, 2);
    bool expect = a >= 0 && c >= 0 && a * c >= b * b;
    EXPECT_EQ(check_psd(S).psd, expect);
  }
}

TEST(Rational, CharpolyOfRotation) {
  Poly p = charpoly(Mat::from_rows({{0, 1}, {-1, 0}}, 2));
  EXPECT_EQ(p.c, (Vec{1, 0, 1}));
}

// ---- LP ----

TEST(Lp, MaximizeSimple) {
  // max x + y, x + 2y + s = 4, 3x + y + t = 6
  Mat A = Mat::from_rows({{1, 2, 1, 0}, {3, 1, 0, 1}}, 4);
  auto r = lp_maximize(A, Vec{4, 6}, Vec{1, 1, 0, 0});
  ASSERT_EQ(r.status, LpResult::Status::Optimal);
  EXPECT_EQ(r.value, Q(14, 5));
}

TEST(Lp, InfeasibleAndUnbounded) {
  Mat A = Mat::from_rows({{1, 1}}, 2);
  EXPECT_FALSE(lp_feasible(A, Vec{-1}).has_value());
  Mat B = Mat::from_rows({{1, -1}}, 2);
  EXPECT_EQ(lp_maximize(B, Vec{0}, Vec{1, 0}).status, LpResult::Status::Unbounded);
}

TEST(Lp, FreeVariables) {
  auto f = lp_free_ge({{1, 0}, {0, 1}, {-1, -1}}, Vec{1, 1, 1}, 2);
  EXPECT_FALSE(f.has_value());
  auto g = lp_free_ge({{1, 0}, {-1, 1}}, Vec{1, 1}, 2);
  ASSERT_TRUE(g);
  EXPECT_GE((*g)[0], 1);
  EXPECT_GE((*g)[1] - (*g)[0], 1);
}

// ---- algebra core ----

TEST(Lie, Sl2Relations) {
  LieAlgebra g = sl2();
  Vec h = e_(3, 0), e = e_(3, 1), f = e_(3, 2);
  EXPECT_EQ(g.bracket(h, e), Q(2) * e);
  EXPECT_EQ(g.bracket(h, f), Q(-2) * f);
  EXPECT_EQ(g.bracket(e, f), h);
  EXPECT_TRUE(is_zero(g.bracket(e, e)));
  EXPECT_TRUE(g.jacobi_holds());
  Mat adh = g.ad(h);
  EXPECT_EQ(adh, Mat::from_rows({{0, 0, 0}, {0, 2, 0}, {0, 0, -2}}, 3));
  EXPECT_TRUE(g.ad(zeros(3)).is_zero());
}

TEST(Lie, KillingForm) {
  LieAlgebra g = sl2();
  Vec h = e_(3, 0), e = e_(3, 1);
  EXPECT_EQ(g.killing_form(h, h, KillingSign::NegTrace), Q(-8));
  EXPECT_EQ(g.killing_form(h, h, KillingSign::Trace), Q(8));
  EXPECT_EQ(g.killing_form(e, e, KillingSign::NegTrace), Q(0));
  SpindlerAlgebra hs = jacobi(1);
  EXPECT_EQ(hs.algebra.killing_form(hs.from_z({Q(1)}), hs.algebra.basis(4), KillingSign::Trace), 0);
}

TEST(Lie, KillingInvariance) {
  LieAlgebra g = catalog("sp4").algebra;
  std::mt19937_64 rng(3);
  for (int it = 0; it < 20; ++it) {
    Vec x = oracle::rand_vec(rng, g.dim(), -2, 2), y = oracle::rand_vec(rng, g.dim(), -2, 2),
        z = oracle::rand_vec(rng, g.dim(), -2, 2);
    EXPECT_EQ(g.killing_form(g.bracket(z, x), y, KillingSign::Trace) +
                  g.killing_form(x, g.bracket(z, y), KillingSign::Trace),
              0);
  }
}

TEST(Lie, AdIsHomomorphism) {
  for (const char* name : {"sp4", "jacobi2", "gl2_module"}) {
    LieAlgebra g = catalog(name).algebra;
    std::mt19937_64 rng(5);
    for (int it = 0; it < 10; ++it) {
      Vec x = oracle::rand_vec(rng, g.dim(), -2, 2), y = oracle::rand_vec(rng, g.dim(), -2, 2);
      EXPECT_EQ(g.ad(g.bracket(x, y)), commutator(g.ad(x), g.ad(y))) << name;
      EXPECT_TRUE(g.is_derivation(g.ad(x))) << name;
    }
  }
}

TEST(Lie, ExpAd) {
  LieAlgebra g = sl2();
  Vec h = e_(3, 0), e = e_(3, 1), f = e_(3, 2);
  EXPECT_EQ(g.exp_ad(e, f, 3), f + h - e);
  EXPECT_THROW(g.exp_ad(h, e, 3), NotNilpotent);
  // automorphism on nilpotent directions
  SpindlerAlgebra hs = jacobi(2);
  std::mt19937_64 rng(8);
  for (int it = 0; it < 10; ++it) {
    Vec y = hs.from_v(oracle::rand_vec(rng, hs.nv(), -2, 2));
    Vec a = oracle::rand_vec(rng, hs.dim(), -2, 2), b = oracle::rand_vec(rng, hs.dim(), -2, 2);
    const LieAlgebra& G = hs.algebra;
    EXPECT_EQ(G.exp_ad(y, G.bracket(a, b), 4), G.bracket(G.exp_ad(y, a, 4), G.exp_ad(y, b, 4)));
  }
}

TEST(Lie, Nilpotency) {
  LieAlgebra g = sl2();
  EXPECT_TRUE(g.is_ad_nilpotent(e_(3, 1)));
  EXPECT_FALSE(g.is_ad_nilpotent(e_(3, 0)));
  SpindlerAlgebra hs = jacobi(1);
  EXPECT_TRUE(hs.algebra.is_ad_nilpotent(hs.from_z({Q(1)})));
  LieAlgebra heis = catalog("heisenberg").algebra;
  EXPECT_TRUE(heis.ad(heis.basis(0)).is_zero());
}

TEST(Lie, JordanDecomposition) {
  LieAlgebra g = sl2();
  Vec h = e_(3, 0), e = e_(3, 1);
  auto j1 = jordan_decomposition(g, e);
  EXPECT_TRUE(is_zero(j1.semisimple));
  EXPECT_EQ(j1.nilpotent, e);
  auto j2 = jordan_decomposition(g, h);
  EXPECT_EQ(j2.semisimple, h);
  EXPECT_TRUE(is_zero(j2.nilpotent));
  // h + e is semisimple in sl2 (distinct eigenvalues of ad)
  Vec x = h + e;
  auto j3 = jordan_decomposition(g, x);
  EXPECT_EQ(j3.semisimple + j3.nilpotent, x);
  EXPECT_TRUE(is_zero(g.bracket(j3.semisimple, j3.nilpotent)));
  EXPECT_TRUE(g.is_ad_nilpotent(j3.nilpotent));
}

TEST(Lie, JordanDecompositionProperties) {
  SpindlerAlgebra hs = jacobi(1);
  LieAlgebra l = hs.data.l;
  std::mt19937_64 rng(21);
  for (int it = 0; it < 30; ++it) {
    Vec x = oracle::rand_vec(rng, l.dim(), -2, 2);
    auto j = jordan_decomposition(l, x);
    EXPECT_EQ(j.semisimple + j.nilpotent, x);
    EXPECT_TRUE(is_zero(l.bracket(j.semisimple, j.nilpotent)));
    EXPECT_TRUE(l.is_ad_nilpotent(j.nilpotent));
    // minimal polynomial of ad x_s squarefree: gcd(p, p') constant for the charpoly's radical
    Mat S = l.ad(j.semisimple);
    Poly p = charpoly(S);
    Poly rad = poly_divmod(p, poly_gcd(p, poly_derivative(p))).first;
    EXPECT_TRUE(poly_eval(rad, S).is_zero());
  }
}

TEST(Lie, ParseElement) {
  SpindlerAlgebra hs = jacobi(1);
  Vec x = hs.algebra.parse_element("e+z");
  EXPECT_EQ(x, hs.from_z({Q(1)}) + hs.from_l(Vec{0, 0, 1}));
  EXPECT_EQ(hs.algebra.parse_element("1/2*q-p"), hs.from_v(Vec{Q(1, 2), Q(-1)}));
  EXPECT_THROW(hs.algebra.parse_element("w"), ParseError);
  EXPECT_THROW(hs.algebra.parse_element("1,2"), ParseError);
}

TEST(Lie, RejectsInvalid) {
  EXPECT_THROW(LieAlgebra({"a", "b"}, {{1, 0, {{0, Q(1)}}}}), InvalidAlgebra);
  // [a,b] = a, [a,c] = b, [b,c] = 0 violates Jacobi
  EXPECT_THROW(LieAlgebra({"a", "b", "c"}, {{0, 1, {{0, Q(1)}}}, {0, 2, {{1, Q(1)}}}}), InvalidAlgebra);
}

// ---- convex geometry ----

TEST(Convex, PointedExamples) {
  GenCone q(2, {{1, 0}, {0, 1}});
  auto c1 = is_pointed_cone(q);
  EXPECT_TRUE(c1.pointed);
  EXPECT_TRUE(verify_pointed_certificate(q, c1));
  GenCone line(2, {{1, 0}, {-1, 0}});
  auto c2 = is_pointed_cone(line);
  EXPECT_FALSE(c2.pointed);
  EXPECT_TRUE(verify_pointed_certificate(line, c2));
  auto [u, w] = c2.opposite_pair(line);
  EXPECT_TRUE(is_zero(u + w));
  EXPECT_TRUE(is_pointed_cone(GenCone(2, {{0, 1}, {-1, 0}})).pointed);
}

TEST(Convex, DualExamples) {
  GenCone q(2, {{1, 0}, {0, 1}});
  EXPECT_TRUE(cone_equal(dual_cone(q), q));
  GenCone line(2, {{1, 0}, {-1, 0}});
  EXPECT_TRUE(cone_equal(dual_cone(line), GenCone(2, {{0, 1}, {0, -1}})));
  GenCone c(2, {{0, 1}, {-1, 0}});
  GenCone d = dual_cone(c);
  EXPECT_TRUE(cone_equal(d, GenCone(2, {{0, 1}, {-1, 0}})));
  EXPECT_TRUE(cone_equal(dual_cone(d), c));
}

TEST(Convex, EdgeAndRecession) {
  GenCone half(2, {{1, 0}, {-1, 0}, {0, 1}});
  GenCone ed = edge(half);
  EXPECT_TRUE(cone_equal(ed, GenCone(2, {{1, 0}, {-1, 0}})));
  ConvexBody b{2, {{0, 1}}, {{1, 0}}};
  EXPECT_TRUE(cone_equal(recession_cone(b), GenCone(2, {{1, 0}})));
}

TEST(Convex, ShiftedAndLimitExamples) {
  GenCone c(1, {{1}});
  EXPECT_TRUE(cone_of_shifted({0}, c));
  EXPECT_TRUE(cone_of_shifted({1}, c));
  EXPECT_FALSE(cone_of_shifted({-1}, c));
  EXPECT_THROW(cone_of_shifted({1}, GenCone(1, {{1}, {-1}})), ConeNotPointed);
  EXPECT_TRUE(pointedness_from_limit(ConvexBody{2, {{1, 0}}, {}}).pointed);
  auto r = pointedness_from_limit(ConvexBody{2, {{0, 1}}, {{1, 0}}});
  EXPECT_TRUE(r.pointed);
  EXPECT_TRUE(r.by_limit);
  EXPECT_FALSE(pointedness_from_limit(ConvexBody{2, {{1, 0}, {-1, 0}}, {}}).pointed);
}

TEST(Convex, Irredundant) {
  GenCone c(2, {{1, 0}, {0, 1}, {1, 1}, {2, 0}});
  GenCone r = irredundant(c);
  EXPECT_EQ(r.gens.size(), 2u);
  EXPECT_TRUE(cone_equal(r, c));
  GenCone line(1, {{1}, {-1}, {3}});
  EXPECT_EQ(irredundant(line).gens.size(), 2u);
}

TEST(Convex, BudgetGuard) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < 13; ++i) gens.push_back(unit(13, i));
  EXPECT_THROW(dual_cone(GenCone(13, gens)), BudgetExceeded);
}

using oracle::random_gens;
using oracle::random_pointed;

TEST(ConvexProperty, PointedMatchesCaratheodoryAndEdge) {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 500; ++it) {
    std::size_t d = 1 + it % 4;
    std::size_t m = 1 + std::uniform_int_distribution<std::size_t>(0, d + 2)(rng);
    GenCone c(d, it % 2 ? random_gens(rng, d, m, 2) : random_pointed(rng, d, m));
    auto cert = is_pointed_cone(c);
    ASSERT_EQ(cert.pointed, oracle::cone_pointed(c.gens, d)) << "instance " << it;
    ASSERT_TRUE(verify_pointed_certificate(c, cert));
    ASSERT_EQ(cert.pointed, edge(c).gens.empty());
  }
}

TEST(ConvexProperty, ShiftedMatchesBruteForceConing) {
  std::mt19937_64 rng(202);
  for (int it = 0; it < 500; ++it) {
    std::size_t d = 1 + it % 4;
    GenCone c(d, random_pointed(rng, d, 1 + it % 3));
    Vec x = oracle::rand_vec(rng, d, -3, 3);
    std::vector<Vec> all = c.gens;
    all.push_back(x);
    ASSERT_EQ(cone_of_shifted(x, c), oracle::cone_pointed(all, d)) << "instance " << it;
  }
}

TEST(ConvexProperty, LimitMatchesBruteForce) {
  std::mt19937_64 rng(303);
  for (int it = 0; it < 500; ++it) {
    std::size_t d = 1 + it % 4;
    ConvexBody b;
    b.dim = d;
    b.points = random_gens(rng, d, 1 + it % 3, 3);
    b.rays = it % 3 ? random_pointed(rng, d, it % 3) : random_gens(rng, d, it % 2, 2);
    std::vector<Vec> all = b.points;
    all.insert(all.end(), b.rays.begin(), b.rays.end());
    auto r = pointedness_from_limit(b);
    ASSERT_EQ(r.pointed, oracle::cone_pointed(all, d)) << "instance " << it;
    if (r.by_limit) {
      ASSERT_TRUE(oracle::cone_pointed(b.rays, d));
      ASSERT_FALSE(oracle::origin_in_hull(b.points, d) && b.rays.empty());
    }
  }
}

TEST(ConvexProperty, DoubleDual) {
  std::mt19937_64 rng(404);
  for (int it = 0; it < 200; ++it) {
    std::size_t d = 1 + it % 6;
    std::size_t m = 1 + std::uniform_int_distribution<std::size_t>(0, d + 1)(rng);
    GenCone c(d, random_gens(rng, d, m, 2));
    GenCone dd = dual_cone(dual_cone(c));
    ASSERT_TRUE(cone_equal(dd, c)) << "instance " << it;
  }
}

TEST(ConvexProperty, DualGeneratorsAreNonnegative) {
  std::mt19937_64 rng(505);
  for (int it = 0; it < 100; ++it) {
    std::size_t d = 2 + it % 3;
    GenCone c(d, random_gens(rng, d, 3, 2));
    GenCone du = dual_cone(c);
    for (const auto& a : du.gens)
      for (const auto& g : c.gens) ASSERT_GE(dot(a, g), 0);
    // every vector nonnegative on c lies in the dual (brute force over a small lattice)
    for (int k = 0; k < 20; ++k) {
      Vec a = oracle::rand_vec(rng, d, -2, 2);
      bool nonneg = true;
      for (const auto& g : c.gens)
        if (dot(a, g) < 0) nonneg = false;
      if (nonneg) ASSERT_TRUE(oracle::in_cone(du.gens, a, d));
    }
  }
}
