#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conelab {

using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;
using Vec = std::vector<Q>;

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// decimal digits with optional '-'; leading zeros would otherwise select octal in gmp
inline Z decimal_z(std::string u) {
  bool neg = !u.empty() && u[0] == '-';
  if (neg) u.erase(0, 1);
  std::size_t k = u.find_first_not_of('0');
  u = k == std::string::npos ? "0" : u.substr(k);
  Z z(u);
  return neg ? Z(-z) : z;
}

}  // namespace detail

inline Q parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (ch != ' ' && ch != '+') t.push_back(ch);
    else if (ch == '+' && !t.empty()) throw ParseError("bad rational: " + s);
  if (t.empty()) throw ParseError("empty rational");
  auto slash = t.find('/');
  auto valid_int = [](const std::string& u) {
    std::size_t i = (!u.empty() && u[0] == '-') ? 1 : 0;
    if (i >= u.size()) return false;
    for (; i < u.size(); ++i)
      if (u[i] < '0' || u[i] > '9') return false;
    return true;
  };
  auto dot = t.find('.');
  if (dot != std::string::npos && slash == std::string::npos) {
    std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (neg) ip.erase(0, 1);
    if (ip.empty()) ip = "0";
    if (!valid_int(ip) || (!fp.empty() && !valid_int(fp)) || (!fp.empty() && fp[0] == '-'))
      throw ParseError("bad rational: " + s);
    Z den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    Z num = detail::decimal_z(ip + fp);
    Q r(num, den);
    return neg ? Q(-r) : r;
  }
  if (slash == std::string::npos) {
    if (!valid_int(t)) throw ParseError("bad rational: " + s);
    return Q(detail::decimal_z(t));
  }
  std::string a = t.substr(0, slash), b = t.substr(slash + 1);
  if (!valid_int(a) || !valid_int(b) || b[0] == '-') throw ParseError("bad rational: " + s);
  Z den = detail::decimal_z(b);
  if (den == 0) throw ParseError("zero denominator: " + s);
  return Q(detail::decimal_z(a), den);
}

inline std::string to_string(const Q& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Q& q) { return q.convert_to<double>(); }

// ---- vectors ----

inline Vec zeros(std::size_t n) { return Vec(n, Q(0)); }

inline Vec unit(std::size_t n, std::size_t i) {
  Vec v = zeros(n);
  v.at(i) = 1;
  return v;
}

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline void check_same(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("vector lengths " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
}

inline Vec operator+(const Vec& a, const Vec& b) {
  check_same(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  check_same(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec operator*(const Q& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline Q dot(const Vec& a, const Vec& b) {
  check_same(a, b);
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

inline void axpy(Vec& y, const Q& a, const Vec& x) {
  check_same(y, x);
  if (a == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (x[i] != 0) y[i] += a * x[i];
}

inline Vec concat(std::initializer_list<const Vec*> parts) {
  Vec r;
  for (auto* p : parts) r.insert(r.end(), p->begin(), p->end());
  return r;
}

// Scale a nonzero vector to the primitive integer vector on the same ray.
inline Vec primitive(const Vec& v) {
  if (is_zero(v)) return v;
  Z l = 1;
  for (const auto& x : v)
    if (x != 0) l = boost::multiprecision::lcm(l, Z(denominator(x)));
  Z g = 0;
  for (const auto& x : v)
    if (x != 0) {
      Z n = Z(numerator(x)) * (l / Z(denominator(x)));
      g = boost::multiprecision::gcd(g, n < 0 ? Z(-n) : n);
    }
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = Q(Z(numerator(v[i])) * (l / Z(denominator(v[i]))) / g);
  return r;
}

// ---- dense matrices ----

struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Q> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Q(0)) {}

  Q& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Q& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_rows(const std::vector<Vec>& rs, std::size_t ncols) {
    Mat m(rs.size(), ncols);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (rs[i].size() != ncols) throw DimensionMismatch("ragged rows");
      for (std::size_t j = 0; j < ncols; ++j) m(i, j) = rs[i][j];
    }
    return m;
  }

  static Mat from_cols(const std::vector<Vec>& cs, std::size_t nrows) {
    Mat m(nrows, cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (cs[j].size() != nrows) throw DimensionMismatch("ragged columns");
      for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cs[j][i];
    }
    return m;
  }

  Vec row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  Vec col(std::size_t j) const {
    Vec c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }
  bool is_square() const { return rows == cols; }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

inline Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

inline Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw DimensionMismatch("matrix product shape");
  Mat r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Q& xik = x(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        if (y(k, j) != 0) r(i, j) += xik * y(k, j);
    }
  return r;
}

inline Vec operator*(const Mat& m, const Vec& v) {
  if (m.cols != v.size()) throw DimensionMismatch("matrix-vector shape");
  Vec r = zeros(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m(i, j) != 0 && v[j] != 0) r[i] += m(i, j) * v[j];
  return r;
}

inline Mat operator+(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw DimensionMismatch("matrix sum shape");
  Mat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw DimensionMismatch("matrix difference shape");
  Mat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

inline Mat operator*(const Q& s, const Mat& x) {
  Mat r = x;
  for (auto& e : r.a) e *= s;
  return r;
}

inline Mat commutator(const Mat& x, const Mat& y) { return x * y - y * x; }

inline Q trace(const Mat& m) {
  Q t = 0;
  for (std::size_t i = 0; i < std::min(m.rows, m.cols); ++i) t += m(i, i);
  return t;
}

inline Mat symmetrize(const Mat& m) { return Q(1, 2) * (m + transpose(m)); }

inline bool is_skew(const Mat& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = i; j < m.cols; ++j)
      if (m(i, j) != -m(j, i)) return false;
  return true;
}

inline Q quad(const Mat& s, const Vec& v) { return dot(v, s * v); }

inline Q bilin(const Mat& s, const Vec& v, const Vec& w) { return dot(v, s * w); }

// ---- elimination ----

struct Rref {
  Mat r;
  std::vector<std::size_t> pivots;
};

inline Rref rref(Mat m) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols && row < m.rows; ++c) {
    std::size_t p = row;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(row, j));
    Q inv = 1 / m(row, c);
    for (std::size_t j = c; j < m.cols; ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m(i, c) == 0) continue;
      Q f = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j)
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.r = std::move(m);
  return out;
}

inline std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

inline std::size_t rank(const std::vector<Vec>& vs, std::size_t n) {
  if (vs.empty()) return 0;
  return rank(Mat::from_rows(vs, n));
}

inline std::vector<Vec> nullspace(const Mat& m) {
  Rref e = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zeros(m.cols);
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.r(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Particular solution with free variables set to zero.
inline std::optional<Vec> solve(const Mat& A, const Vec& b) {
  if (A.rows != b.size()) throw DimensionMismatch("solve shape");
  Mat aug(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
    aug(i, A.cols) = b[i];
  }
  Rref e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == A.cols) return std::nullopt;
  Vec x = zeros(A.cols);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.r(k, A.cols);
  return x;
}

inline std::optional<Mat> inverse(const Mat& m) {
  if (!m.is_square()) return std::nullopt;
  std::size_t n = m.rows;
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Rref e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.r(i, n + j);
  return inv;
}

// Row-reduced basis of span(vs).
inline std::vector<Vec> span_basis(const std::vector<Vec>& vs, std::size_t n) {
  if (vs.empty()) return {};
  Rref e = rref(Mat::from_rows(vs, n));
  std::vector<Vec> out;
  for (std::size_t k = 0; k < e.pivots.size(); ++k) out.push_back(e.r.row(k));
  return out;
}

inline std::vector<Vec> column_space(const Mat& m) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < m.cols; ++j) cols.push_back(m.col(j));
  return span_basis(cols, m.rows);
}

inline bool in_span(const std::vector<Vec>& basis, const Vec& v) {
  if (is_zero(v)) return true;
  if (basis.empty()) return false;
  std::vector<Vec> ext = basis;
  ext.push_back(v);
  return rank(ext, v.size()) == rank(basis, v.size());
}

inline bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t n) {
  std::vector<Vec> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  std::size_t r = rank(ab, n);
  return r == rank(a, n) && r == rank(b, n);
}

inline std::vector<Vec> intersect_spans(const std::vector<Vec>& a, const std::vector<Vec>& b,
                                        std::size_t n) {
  if (a.empty() || b.empty()) return {};
  // solve sum x_i a_i - sum y_j b_j = 0
  Mat m(n, a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) m(k, i) = a[i][k];
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, a.size() + j) = -b[j][k];
  std::vector<Vec> out;
  for (const auto& s : nullspace(m)) {
    Vec v = zeros(n);
    for (std::size_t i = 0; i < a.size(); ++i) axpy(v, s[i], a[i]);
    out.push_back(v);
  }
  return span_basis(out, n);
}

// Orthogonal projection onto span(basis)^perp under the standard inner product.
inline Vec reject_from(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) return v;
  std::size_t k = basis.size();
  Mat G(k, k);
  Vec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) G(i, j) = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  auto c = solve(G, rhs);
  Vec r = v;
  for (std::size_t i = 0; i < k; ++i) axpy(r, -(*c)[i], basis[i]);
  return r;
}

// ---- polynomials (ascending coefficients) ----

struct Poly {
  Vec c;

  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

inline Poly poly_mul(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  Poly r{zeros(p.c.size() + q.c.size() - 1)};
  for (std::size_t i = 0; i < p.c.size(); ++i)
    for (std::size_t j = 0; j < q.c.size(); ++j) r.c[i + j] += p.c[i] * q.c[j];
  r.trim();
  return r;
}

inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly q{zeros(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 1)};
  a.trim();
  while (!a.is_zero() && a.c.size() >= b.c.size()) {
    std::size_t s = a.c.size() - b.c.size();
    Q f = a.c.back() / b.c.back();
    q.c[s] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) a.c[s + i] -= f * b.c[i];
    a.trim();
  }
  q.trim();
  return {q, a};
}

inline Poly poly_monic(Poly p) {
  p.trim();
  if (p.is_zero()) return p;
  Q lead = p.c.back();
  for (auto& x : p.c) x /= lead;
  return p;
}

inline Poly poly_gcd(Poly a, Poly b) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

inline Poly poly_derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.c.size(); ++i) d.c.push_back(Q(static_cast<long>(i)) * p.c[i]);
  d.trim();
  return d;
}

inline Mat poly_eval(const Poly& p, const Mat& m) {
  Mat r(m.rows, m.cols);
  for (std::size_t k = p.c.size(); k-- > 0;) {
    r = r * m;
    for (std::size_t i = 0; i < m.rows; ++i) r(i, i) += p.c[k];
  }
  return r;
}

// Faddeev-LeVerrier: det(tI - m), monic.
inline Poly charpoly(const Mat& m) {
  std::size_t n = m.rows;
  Poly p{zeros(n + 1)};
  p.c[n] = 1;
  Mat M(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    M = m * M;
    for (std::size_t i = 0; i < n; ++i) M(i, i) += p.c[n - k + 1];
    Mat AM = m * M;
    p.c[n - k] = -trace(AM) / Q(static_cast<long>(k));
  }
  return p;
}

inline Mat mat_power(const Mat& m, std::size_t k) {
  Mat r = Mat::identity(m.rows);
  for (std::size_t i = 0; i < k; ++i) r = r * m;
  return r;
}

inline bool is_nilpotent(const Mat& m) {
  Mat p = m;
  for (std::size_t i = 1; i < m.rows && !p.is_zero(); ++i) p = p * m;
  return p.is_zero();
}

// ---- symmetric forms ----

struct FormCheck {
  bool psd = false;
  std::vector<Vec> kernel;       // basis of the radical when psd
  std::optional<Vec> negative;   // v with v^T S v < 0 when not psd
};

// Exact congruence diagonalization with witness extraction.
inline FormCheck check_psd(const Mat& S) {
  std::size_t n = S.rows;
  FormCheck out;
  std::vector<Vec> P;
  for (std::size_t i = 0; i < n; ++i) P.push_back(unit(n, i));
  while (!P.empty()) {
    Q d = quad(S, P[0]);
    if (d < 0) {
      out.negative = P[0];
      return out;
    }
    if (d == 0) {
      std::optional<std::size_t> hit;
      Q off;
      for (std::size_t j = 1; j < P.size(); ++j) {
        off = bilin(S, P[0], P[j]);
        if (off != 0) {
          hit = j;
          break;
        }
      }
      if (hit) {
        Q djj = quad(S, P[*hit]);
        Q t = -(djj + 1) / (2 * off);
        out.negative = P[*hit] + t * P[0];
        return out;
      }
      out.kernel.push_back(P[0]);
      P.erase(P.begin());
      continue;
    }
    Vec sp = S * P[0];
    std::vector<Vec> next;
    for (std::size_t j = 1; j < P.size(); ++j) {
      Q f = dot(sp, P[j]) / d;
      Vec w = P[j];
      axpy(w, -f, P[0]);
      next.push_back(std::move(w));
    }
    P = std::move(next);
  }
  out.psd = true;
  return out;
}

inline bool is_positive_definite(const Mat& S) {
  FormCheck c = check_psd(S);
  return c.psd && c.kernel.empty();
}

}  // namespace conelab
