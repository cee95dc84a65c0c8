#pragma once

// Finitely generated cones and V-represented convex sets.

#include "conelab/lp.hpp"

#include <algorithm>
#include <set>

namespace conelab {

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConeNotPointed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kConeDimBudget = 12;

struct GenCone {
  std::size_t dim = 0;
  std::vector<Vec> gens;

  GenCone() = default;
  GenCone(std::size_t d, std::vector<Vec> g) : dim(d) {
    for (auto& v : g) {
      if (v.size() != d) throw DimensionMismatch("generator length");
      if (!is_zero(v)) gens.push_back(std::move(v));
    }
  }
};

struct ConvexBody {
  std::size_t dim = 0;
  std::vector<Vec> points;
  std::vector<Vec> rays;
};

// lambda >= 0 with sum lambda_i gens_i = v
inline std::optional<Vec> cone_member(const GenCone& c, const Vec& v) {
  if (v.size() != c.dim) throw DimensionMismatch("membership vector length");
  if (is_zero(v)) return zeros(c.gens.size());
  if (c.gens.empty()) return std::nullopt;
  return lp_feasible(Mat::from_cols(c.gens, c.dim), v);
}

inline bool cone_contains(const GenCone& outer, const GenCone& inner) {
  for (const auto& g : inner.gens)
    if (!cone_member(outer, g)) return false;
  return true;
}

inline bool cone_equal(const GenCone& a, const GenCone& b) {
  return cone_contains(a, b) && cone_contains(b, a);
}

struct PointedCertificate {
  bool pointed = false;
  Vec functional;        // f.g >= 1 on every generator
  Vec lambda;            // nonnegative, sums to 1, sum lambda_i g_i = 0
  std::size_t split = 0; // first index with lambda > 0

  // u = lambda_split g_split, w = rest; u + w = 0
  std::pair<Vec, Vec> opposite_pair(const GenCone& c) const {
    Vec u = lambda[split] * c.gens[split];
    Vec w = zeros(c.dim);
    for (std::size_t i = 0; i < c.gens.size(); ++i)
      if (i != split) axpy(w, lambda[i], c.gens[i]);
    return {u, w};
  }
};

inline PointedCertificate is_pointed_cone(const GenCone& c) {
  PointedCertificate cert;
  Vec ones(c.gens.size(), Q(1));
  if (auto f = lp_free_ge(c.gens, ones, c.dim)) {
    cert.pointed = true;
    cert.functional = *f;
    return cert;
  }
  std::size_t m = c.gens.size();
  Mat A(c.dim + 1, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < c.dim; ++k) A(k, j) = c.gens[j][k];
    A(c.dim, j) = 1;
  }
  Vec b = zeros(c.dim + 1);
  b[c.dim] = 1;
  auto lam = lp_feasible(A, b);
  if (!lam) throw std::logic_error("pointedness LP: neither certificate found");
  cert.lambda = *lam;
  for (std::size_t i = 0; i < m; ++i)
    if (cert.lambda[i] != 0) {
      cert.split = i;
      break;
    }
  return cert;
}

inline bool verify_pointed_certificate(const GenCone& c, const PointedCertificate& cert) {
  if (cert.pointed) {
    if (cert.functional.size() != c.dim) return false;
    for (const auto& g : c.gens)
      if (dot(cert.functional, g) <= 0) return false;
    return true;
  }
  if (cert.lambda.size() != c.gens.size()) return false;
  Q s = 0;
  Vec sum = zeros(c.dim);
  for (std::size_t i = 0; i < c.gens.size(); ++i) {
    if (cert.lambda[i] < 0) return false;
    s += cert.lambda[i];
    axpy(sum, cert.lambda[i], c.gens[i]);
  }
  return s == 1 && is_zero(sum);
}

// Largest linear subspace in the cone: spanned by the generators whose negatives lie in it.
inline GenCone edge(const GenCone& c) {
  std::vector<Vec> in_lin;
  for (const auto& g : c.gens)
    if (cone_member(c, -g)) in_lin.push_back(g);
  std::vector<Vec> gens;
  for (const auto& b : span_basis(in_lin, c.dim)) {
    Vec p = primitive(b);
    gens.push_back(p);
    gens.push_back(-p);
  }
  return GenCone(c.dim, gens);
}

namespace detail {

struct DDRay {
  Vec v;
  std::set<std::size_t> tight;
};

inline void dedupe_rays(std::vector<Vec>& rs) {
  for (auto& r : rs) r = primitive(r);
  std::vector<Vec> out;
  for (auto& r : rs) {
    if (is_zero(r)) continue;
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  rs = std::move(out);
}

}  // namespace detail

// Generators of {f : A f >= 0} by the double description method
// (the generator-side dual of Fourier-Motzkin elimination).
inline GenCone halfspaces_to_generators(const std::vector<Vec>& A, std::size_t d) {
  if (d > kConeDimBudget)
    throw BudgetExceeded("ambient dimension " + std::to_string(d) + " exceeds budget " +
                         std::to_string(kConeDimBudget));
  std::vector<Vec> lin;
  for (std::size_t i = 0; i < d; ++i) lin.push_back(unit(d, i));
  std::vector<detail::DDRay> rays;
  std::set<std::size_t> done;
  for (std::size_t ci = 0; ci < A.size(); ++ci) {
    const Vec& a = A[ci];
    if (is_zero(a)) continue;
    std::optional<std::size_t> li;
    for (std::size_t k = 0; k < lin.size() && !li; ++k)
      if (dot(a, lin[k]) != 0) li = k;
    if (li) {
      Vec l = lin[*li];
      Q al = dot(a, l);
      if (al < 0) {
        l = -l;
        al = -al;
      }
      std::vector<Vec> nl;
      for (std::size_t k = 0; k < lin.size(); ++k) {
        if (k == *li) continue;
        Vec w = lin[k];
        axpy(w, -dot(a, w) / al, l);
        nl.push_back(primitive(w));
      }
      lin = std::move(nl);
      for (auto& r : rays) {
        axpy(r.v, -dot(a, r.v) / al, l);
        r.v = primitive(r.v);
        r.tight.insert(ci);
      }
      rays.push_back({primitive(l), done});
    } else {
      std::vector<detail::DDRay> pos, neg, zer;
      for (auto& r : rays) {
        Q s = dot(a, r.v);
        if (s > 0) pos.push_back(r);
        else if (s < 0) neg.push_back(r);
        else {
          r.tight.insert(ci);
          zer.push_back(r);
        }
      }
      std::vector<detail::DDRay> next = zer;
      for (const auto& p : pos) next.push_back(p);
      for (const auto& p : pos)
        for (const auto& n : neg) {
          std::set<std::size_t> common;
          std::set_intersection(p.tight.begin(), p.tight.end(), n.tight.begin(), n.tight.end(),
                                std::inserter(common, common.begin()));
          bool adjacent = true;
          for (const auto& r : rays) {
            if (r.v == p.v || r.v == n.v) continue;
            if (std::includes(r.tight.begin(), r.tight.end(), common.begin(), common.end())) {
              adjacent = false;
              break;
            }
          }
          if (!adjacent) continue;
          Vec w = dot(a, p.v) * n.v - dot(a, n.v) * p.v;
          common.insert(ci);
          next.push_back({primitive(w), common});
        }
      rays = std::move(next);
    }
    done.insert(ci);
  }
  std::vector<Vec> gens;
  for (const auto& r : rays) gens.push_back(r.v);
  for (const auto& l : lin) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  detail::dedupe_rays(gens);
  return GenCone(d, gens);
}

// Drop generators that lie in the cone of the remaining ones.
inline GenCone irredundant(const GenCone& c) {
  std::vector<Vec> g = c.gens;
  for (std::size_t i = g.size(); i-- > 0;) {
    std::vector<Vec> rest;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i) rest.push_back(g[j]);
    if (cone_member(GenCone(c.dim, rest), g[i])) g = std::move(rest);
  }
  return GenCone(c.dim, g);
}

inline GenCone dual_cone(const GenCone& c) { return halfspaces_to_generators(c.gens, c.dim); }

inline GenCone recession_cone(const ConvexBody& b) { return GenCone(b.dim, b.rays); }

// pointedness of cone(x + C) for pointed C
inline bool cone_of_shifted(const Vec& x, const GenCone& c) {
  if (!is_pointed_cone(c).pointed) throw ConeNotPointed("cone_of_shifted requires a pointed cone");
  if (is_zero(x)) return true;
  return !cone_member(c, -x).has_value();
}

inline bool body_contains_origin(const ConvexBody& b) {
  // sum mu_i p_i + sum nu_j r_j = 0, sum mu = 1
  std::size_t m = b.points.size() + b.rays.size();
  Mat A(b.dim + 1, m);
  for (std::size_t j = 0; j < b.points.size(); ++j) {
    for (std::size_t k = 0; k < b.dim; ++k) A(k, j) = b.points[j][k];
    A(b.dim, j) = 1;
  }
  for (std::size_t j = 0; j < b.rays.size(); ++j)
    for (std::size_t k = 0; k < b.dim; ++k) A(k, b.points.size() + j) = b.rays[j][k];
  Vec rhs = zeros(b.dim + 1);
  rhs[b.dim] = 1;
  return lp_feasible(A, rhs).has_value();
}

struct LimitPointedness {
  bool pointed = false;
  bool by_limit = false;  // decided by: lim(C) pointed and 0 not in C
};

inline LimitPointedness pointedness_from_limit(const ConvexBody& b) {
  if (b.points.empty()) throw std::invalid_argument("convex body needs at least one point");
  LimitPointedness out;
  if (is_pointed_cone(recession_cone(b)).pointed && !body_contains_origin(b)) {
    out.pointed = true;
    out.by_limit = true;
    return out;
  }
  std::vector<Vec> gens = b.points;
  gens.insert(gens.end(), b.rays.begin(), b.rays.end());
  out.pointed = is_pointed_cone(GenCone(b.dim, gens)).pointed;
  return out;
}

}  // namespace conelab
