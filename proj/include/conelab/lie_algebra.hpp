#pragma once

#include "conelab/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace conelab {

using Element = Vec;

class InvalidAlgebra : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotNilpotent : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotPullbackable : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class KillingSign { Trace, NegTrace };

struct SparseTerm {
  std::size_t k;
  Q c;
};
using SparseVec = std::vector<SparseTerm>;

struct BracketEntry {
  std::size_t i, j;
  std::map<std::size_t, Q> coeffs;
};

class LieAlgebra {
public:
  LieAlgebra() = default;

  // brackets: only i < j; omitted pairs are zero
  LieAlgebra(std::vector<std::string> names, const std::vector<BracketEntry>& brackets)
      : names_(std::move(names)) {
    std::size_t n = names_.size();
    sc_.assign(n, std::vector<SparseVec>(n));
    for (const auto& b : brackets) {
      if (b.i >= n || b.j >= n) throw InvalidAlgebra("bracket index out of range");
      if (b.i >= b.j) throw InvalidAlgebra("brackets must be stored with i < j");
      if (!sc_[b.i][b.j].empty()) throw InvalidAlgebra("duplicate bracket entry");
      for (const auto& [k, c] : b.coeffs) {
        if (k >= n) throw InvalidAlgebra("coefficient index out of range");
        if (c == 0) continue;
        sc_[b.i][b.j].push_back({k, c});
        sc_[b.j][b.i].push_back({k, -c});
      }
    }
    finish();
  }

  // Linear span of matrices closed under commutator; basis given by the matrices.
  static LieAlgebra from_matrices(std::vector<std::string> names, const std::vector<Mat>& mats) {
    std::size_t n = mats.size();
    if (names.size() != n) throw InvalidAlgebra("names/matrices count mismatch");
    if (n == 0) return LieAlgebra(std::move(names), {});
    std::size_t d = mats[0].rows * mats[0].cols;
    Mat basis(d, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < d; ++k) basis(k, j) = mats[j].a[k];
    if (rank(basis) != n) throw InvalidAlgebra("matrices are linearly dependent");
    std::vector<BracketEntry> br;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Mat c = commutator(mats[i], mats[j]);
        auto x = solve(basis, c.a);
        if (!x) throw InvalidAlgebra("matrix span not closed under commutator");
        BracketEntry e{i, j, {}};
        for (std::size_t k = 0; k < n; ++k)
          if ((*x)[k] != 0) e.coeffs[k] = (*x)[k];
        if (!e.coeffs.empty()) br.push_back(std::move(e));
      }
    return LieAlgebra(std::move(names), br);
  }

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const SparseVec& structure(std::size_t i, std::size_t j) const { return sc_[i][j]; }

  std::vector<BracketEntry> bracket_entries() const {
    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j) {
        if (sc_[i][j].empty()) continue;
        BracketEntry e{i, j, {}};
        for (const auto& t : sc_[i][j]) e.coeffs[t.k] = t.c;
        out.push_back(std::move(e));
      }
    return out;
  }

  void check(const Element& x) const {
    if (x.size() != dim())
      throw DimensionMismatch("element has length " + std::to_string(x.size()) +
                              ", algebra has dim " + std::to_string(dim()));
  }

  Element basis(std::size_t i) const { return unit(dim(), i); }

  Element bracket(const Element& x, const Element& y) const {
    check(x);
    check(y);
    Element r = zeros(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j] == 0 || sc_[i][j].empty()) continue;
        Q f = x[i] * y[j];
        for (const auto& t : sc_[i][j]) r[t.k] += f * t.c;
      }
    }
    return r;
  }

  const Mat& ad_basis(std::size_t i) const { return ad_[i]; }

  Mat ad(const Element& x) const {
    check(x);
    Mat m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (x[i] != 0) m = m + x[i] * ad_[i];
    return m;
  }

  // exact sum of (ad y)^k x / k!
  Element exp_ad(const Element& y, const Element& x, std::size_t order_bound) const {
    check(y);
    check(x);
    Element sum = x, term = x;
    for (std::size_t k = 1;; ++k) {
      term = bracket(y, term);
      if (is_zero(term)) return sum;
      if (k >= order_bound)
        throw NotNilpotent("exp_ad: series did not terminate within order bound " +
                           std::to_string(order_bound));
      term = Q(1, static_cast<long>(k)) * term;
      axpy(sum, 1, term);
    }
  }

  Q killing_form(const Element& x, const Element& y, KillingSign sign) const {
    Q t = trace(ad(x) * ad(y));
    return sign == KillingSign::NegTrace ? Q(-t) : t;
  }

  bool is_ad_nilpotent(const Element& x) const { return is_nilpotent(ad(x)); }

  std::vector<Element> center() const {
    Mat m(dim() * dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t c = 0; c < dim(); ++c) m(r * dim() + c, j) = ad_[j](r, c);
    return nullspace(m);
  }

  // Leibniz on all basis pairs.
  bool is_derivation(const Mat& D) const {
    if (D.rows != dim() || D.cols != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j) {
        Element bij = bracket(basis(i), basis(j));
        Element lhs = D * bij;
        Element rhs = bracket(D.col(i), basis(j)) + bracket(basis(i), D.col(j));
        if (lhs != rhs) return false;
      }
    return true;
  }

  // Jacobi residual on every basis triple i<j<k.
  bool jacobi_holds() const {
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Element r = zeros(n);
          auto acc = [&](std::size_t a, std::size_t b, std::size_t c) {
            for (const auto& t : sc_[b][c])
              for (const auto& u : sc_[a][t.k]) r[u.k] += t.c * u.c;
          };
          acc(i, j, k);
          acc(j, k, i);
          acc(k, i, j);
          if (!is_zero(r)) return false;
        }
    return true;
  }

  Element parse_element(const std::string& s) const;

private:
  std::vector<std::string> names_;
  std::vector<std::vector<SparseVec>> sc_;
  std::vector<Mat> ad_;

  void finish() {
    std::size_t n = dim();
    if (!jacobi_holds()) throw InvalidAlgebra("Jacobi identity fails");
    ad_.assign(n, Mat(n, n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& t : sc_[i][j]) ad_[i](t.k, j) += t.c;
  }
};

// "1,-1/2,0" or a combination of basis names such as "e+2*z-1/3*f"
inline Element LieAlgebra::parse_element(const std::string& s) const {
  std::string t;
  for (char ch : s)
    if (ch != ' ') t.push_back(ch);
  if (t.empty()) throw ParseError("empty element");
  bool numeric = true;
  for (char ch : t)
    if (!((ch >= '0' && ch <= '9') || ch == ',' || ch == '-' || ch == '/' || ch == '.'))
      numeric = false;
  if (numeric) {
    Element x;
    std::size_t start = 0;
    for (;;) {
      auto comma = t.find(',', start);
      x.push_back(parse_rational(t.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (x.size() != dim())
      throw ParseError("expected " + std::to_string(dim()) + " coordinates, got " +
                       std::to_string(x.size()));
    return x;
  }
  Element x = zeros(dim());
  std::size_t pos = 0;
  while (pos < t.size()) {
    Q sign = 1;
    if (t[pos] == '+' || t[pos] == '-') {
      if (t[pos] == '-') sign = -1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < t.size() && t[end] != '+' && t[end] != '-') ++end;
    std::string term = t.substr(pos, end - pos);
    if (term.empty()) throw ParseError("bad element expression: " + s);
    Q coef = 1;
    auto star = term.find('*');
    std::string name = term;
    if (star != std::string::npos) {
      coef = parse_rational(term.substr(0, star));
      name = term.substr(star + 1);
    }
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < dim(); ++i)
      if (names_[i] == name) idx = i;
    if (!idx) throw ParseError("unknown basis name: " + name);
    x[*idx] += sign * coef;
    pos = end;
  }
  return x;
}

struct JordanSplit {
  Element semisimple;
  Element nilpotent;
  bool central_ambiguity = false;  // ad has a kernel; pullback fixed by zero free variables
};

// Additive Jordan-Chevalley decomposition of ad x, pulled back to g.
inline JordanSplit jordan_decomposition(const LieAlgebra& g, const Element& x) {
  Mat A = g.ad(x);
  std::size_t n = g.dim();
  Poly p = charpoly(A);
  Poly ps = poly_divmod(p, poly_gcd(p, poly_derivative(p))).first;
  Poly dps = poly_derivative(ps);
  Mat S = A;
  for (std::size_t it = 0; it < 64; ++it) {
    Mat P = poly_eval(ps, S);
    if (P.is_zero()) break;
    auto inv = inverse(poly_eval(dps, S));
    if (!inv) throw NotPullbackable("Newton step singular");
    S = S - P * (*inv);
  }
  if (!poly_eval(ps, S).is_zero()) throw NotPullbackable("Jordan iteration did not converge");
  Mat N = A - S;
  Mat sys(n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n * n; ++k) sys(k, j) = g.ad_basis(j).a[k];
  auto xn = solve(sys, N.a);
  if (!xn) throw NotPullbackable("nilpotent part of ad x is not inner");
  JordanSplit js;
  js.nilpotent = *xn;
  js.semisimple = x - *xn;
  js.central_ambiguity = rank(sys) < n;
  if (!is_zero(g.bracket(js.semisimple, js.nilpotent)))
    throw NotPullbackable("pulled back parts do not commute");
  return js;
}

}  // namespace conelab
