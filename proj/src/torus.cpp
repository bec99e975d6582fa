#include "sphericalis/torus.hpp"

#include <algorithm>
#include <sstream>

namespace sphericalis {

Key key_add(const Key& a, const Key& b) {
  Key r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Key key_neg(const Key& a) {
  Key r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Key key_scale(long long c, const Key& a) {
  Key r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

long long key_dot(const Key& a, const std::vector<long long>& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool GradedLexLess::operator()(const Key& a, const Key& b) const {
  long long da = 0, db = 0;
  for (auto x : a) da += x;
  for (auto x : b) db += x;
  if (da != db) return da < db;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

IntMat IntMat::identity(size_t n) {
  IntMat m;
  m.n = n;
  m.a.assign(n * n, 0);
  for (size_t i = 0; i < n; ++i) m.a[i * n + i] = 1;
  return m;
}

Key IntMat::apply(const Key& v) const {
  Key r(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r[i] += a[i * n + j] * v[j];
  return r;
}

IntMat IntMat::operator*(const IntMat& o) const {
  IntMat r;
  r.n = n;
  r.a.assign(n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      long long x = a[i * n + k];
      if (!x) continue;
      for (size_t j = 0; j < n; ++j) r.a[i * n + j] += x * o.a[k * n + j];
    }
  return r;
}

long long IntMat::det() const {
  // Fraction-free Gaussian elimination (Bareiss), fine for small n.
  std::vector<std::vector<QRat>> m(n, std::vector<QRat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = QRat((long)a[i * n + j]);
  QRat det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      QRat f = m[r][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  if (!det.is_integer()) throw error("IntMat::det: internal error");
  return det.num_ll();
}

void TorusLaurent::check_rank(const TorusLaurent& o) const {
  if (rank_ != o.rank_)
    throw dimension_error("TorusLaurent: lattice rank mismatch");
}

void TorusLaurent::add_term(const Key& k, const TPoly& c) {
  if (k.size() != rank_)
    throw dimension_error("TorusLaurent: key length != rank");
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TorusLaurent TorusLaurent::operator-() const {
  TorusLaurent r(rank_);
  for (auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

TorusLaurent TorusLaurent::operator+(const TorusLaurent& o) const {
  check_rank(o);
  TorusLaurent r = *this;
  for (auto& [k, c] : o.terms_) r.add_term(k, c);
  return r;
}

TorusLaurent& TorusLaurent::operator+=(const TorusLaurent& o) {
  check_rank(o);
  for (auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TorusLaurent TorusLaurent::operator-(const TorusLaurent& o) const {
  check_rank(o);
  TorusLaurent r = *this;
  for (auto& [k, c] : o.terms_) r.add_term(k, -c);
  return r;
}

TorusLaurent TorusLaurent::operator*(const TorusLaurent& o) const {
  check_rank(o);
  TorusLaurent r(rank_);
  for (auto& [k1, c1] : terms_)
    for (auto& [k2, c2] : o.terms_) r.add_term(key_add(k1, k2), c1 * c2);
  return r;
}

TorusLaurent TorusLaurent::scale(const TPoly& c) const {
  TorusLaurent r(rank_);
  if (c.is_zero()) return r;
  for (auto& [k, v] : terms_) r.add_term(k, v * c);
  return r;
}

TorusLaurent TorusLaurent::mul_monomial(const Key& k, const TPoly& c) const {
  TorusLaurent r(rank_);
  if (c.is_zero()) return r;
  for (auto& [k0, v] : terms_) r.add_term(key_add(k0, k), v * c);
  return r;
}

TorusLaurent TorusLaurent::apply_matrix(const IntMat& m) const {
  if (m.n != rank_) throw dimension_error("apply_matrix: size mismatch");
  if (m.det() == 0) throw error("apply_matrix: singular matrix");
  TorusLaurent r(rank_);
  for (auto& [k, c] : terms_) r.add_term(m.apply(k), c);
  return r;
}

TorusLaurent TorusLaurent::invert_torus() const {
  TorusLaurent r(rank_);
  for (auto& [k, c] : terms_) r.add_term(key_neg(k), c);
  return r;
}

TPoly TorusLaurent::eval_t_point(const std::vector<long long>& rho2) const {
  if (rho2.size() != rank_) throw dimension_error("eval_t_point: size mismatch");
  TPoly acc;
  for (auto& [k, c] : terms_) {
    long long d = key_dot(k, rho2);
    if (d % 2 != 0)
      throw error("eval_t_point: non-integral t-power (odd pairing)");
    acc += c * TPoly::t_power(d / 2);
  }
  return acc;
}

std::optional<std::pair<Key, TPoly>> TorusLaurent::as_monomial() const {
  if (terms_.size() != 1) return std::nullopt;
  return std::make_pair(terms_.begin()->first, terms_.begin()->second);
}

std::string TorusLaurent::str(const std::string& sym) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t i = 0; i < rank_; ++i) {
      if (k[i] == 0) continue;
      os << "*" << sym << (rank_ > 1 ? std::to_string(i + 1) : "") << "^["
         << k[i] << "/2]";
    }
  }
  return os.str();
}

TorusLaurent poly_arith(const TorusLaurent& a, const TorusLaurent& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  throw error("poly_arith: bad op");
}

TorusLaurent exact_divide(const TorusLaurent& num, const TorusLaurent& den) {
  if (den.is_zero()) throw pole_error("exact_divide: zero denominator");
  if (num.rank() != den.rank())
    throw dimension_error("exact_divide: rank mismatch");
  if (num.is_zero()) return TorusLaurent::zero(num.rank());
  size_t n = num.rank();

  // Shift both into the polynomial range (componentwise min exponent 0);
  // the quotient picks up the difference of the shifts. A Laurent quotient
  // of the shifted polynomials is automatically a polynomial because the
  // shifted denominator is not divisible by any variable.
  Key nshift(n, 0), dshift(n, 0);
  auto comp_min = [n](const std::map<Key, TPoly, GradedLexLess>& terms) {
    Key m(n, 0);
    bool first = true;
    for (auto& [k, c] : terms) {
      for (size_t i = 0; i < n; ++i)
        m[i] = first ? k[i] : std::min(m[i], k[i]);
      first = false;
    }
    return m;
  };
  nshift = comp_min(num.terms());
  dshift = comp_min(den.terms());

  TorusLaurent rem(n), d(n);
  for (auto& [k, c] : num.terms()) {
    Key k2(n);
    for (size_t i = 0; i < n; ++i) k2[i] = k[i] - nshift[i];
    rem.add_term(k2, c);
  }
  for (auto& [k, c] : den.terms()) {
    Key k2(n);
    for (size_t i = 0; i < n; ++i) k2[i] = k[i] - dshift[i];
    d.add_term(k2, c);
  }

  const Key& dlt = d.terms().rbegin()->first;
  const TPoly& dlc = d.terms().rbegin()->second;
  TorusLaurent quo(n);
  while (!rem.is_zero()) {
    const Key& rlt = rem.terms().rbegin()->first;
    Key e(n);
    for (size_t i = 0; i < n; ++i) {
      e[i] = rlt[i] - dlt[i];
      if (e[i] < 0) throw not_divisible_error("exact_divide: nonzero remainder");
    }
    TPoly c = rem.terms().rbegin()->second.divide_exact(dlc);
    quo.add_term(e, c);
    for (auto& [dk, dc] : d.terms()) rem.add_term(key_add(dk, e), -(c * dc));
  }

  TorusLaurent result(n);
  for (auto& [k, c] : quo.terms()) {
    Key k2(n);
    for (size_t i = 0; i < n; ++i) k2[i] = k[i] + nshift[i] - dshift[i];
    result.add_term(k2, c);
  }
  return result;
}

TRat TorusRational::eval_t_point(const std::vector<long long>& rho2) const {
  TPoly n = num_.eval_t_point(rho2);
  TPoly d = den_.eval_t_point(rho2);
  if (d.is_zero()) throw pole_error("eval_t_point: denominator vanishes");
  return TRat(n, d);
}

std::string TorusRational::str(const std::string& sym) const {
  if (den_.is_one()) return num_.str(sym);
  return "[" + num_.str(sym) + "] / [" + den_.str(sym) + "]";
}

namespace {

// Solve K c = v with integer c over the rational span of the assigned keys.
struct KeySolver {
  size_t n, m;
  std::vector<std::vector<QRat>> cols; // n x m
  explicit KeySolver(const std::vector<std::pair<Key, QRat>>& assign) {
    m = assign.size();
    n = m ? assign[0].first.size() : 0;
    cols.assign(n, std::vector<QRat>(m, QRat(0)));
    for (size_t j = 0; j < m; ++j)
      for (size_t i = 0; i < n; ++i)
        cols[i][j] = QRat((long)assign[j].first[i]);
  }

  std::optional<std::vector<long long>> solve(const Key& v) const {
    // Gaussian elimination on [cols | v].
    std::vector<std::vector<QRat>> a(n, std::vector<QRat>(m + 1));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < m; ++j) a[i][j] = cols[i][j];
      a[i][m] = QRat((long)v[i]);
    }
    std::vector<int> pivot_of_col(m, -1);
    size_t row = 0;
    for (size_t c = 0; c < m && row < n; ++c) {
      size_t p = row;
      while (p < n && a[p][c].is_zero()) ++p;
      if (p == n) continue;
      std::swap(a[p], a[row]);
      QRat inv = QRat(1) / a[row][c];
      for (size_t j = c; j <= m; ++j) a[row][j] *= inv;
      for (size_t r = 0; r < n; ++r) {
        if (r == row || a[r][c].is_zero()) continue;
        QRat f = a[r][c];
        for (size_t j = c; j <= m; ++j) a[r][j] -= f * a[row][j];
      }
      pivot_of_col[c] = (int)row;
      ++row;
    }
    for (size_t r = row; r < n; ++r)
      if (!a[r][m].is_zero()) return std::nullopt; // inconsistent
    std::vector<long long> c(m, 0);
    for (size_t j = 0; j < m; ++j) {
      if (pivot_of_col[j] < 0) continue; // free variable: take 0
      QRat x = a[pivot_of_col[j]][m];
      if (!x.is_integer()) return std::nullopt;
      c[j] = x.num_ll();
    }
    return c;
  }
};

QRat eval_laurent_at(const TorusLaurent& f, const QRat& t,
                     const KeySolver& solver,
                     const std::vector<std::pair<Key, QRat>>& assign) {
  QRat acc(0);
  for (auto& [k, c] : f.terms()) {
    auto sol = solver.solve(k);
    if (!sol)
      throw error("substitute_point: monomial not expressible in assigned keys");
    QRat mval(1);
    for (size_t j = 0; j < sol->size(); ++j) {
      if ((*sol)[j] == 0) continue;
      mval = mval * assign[j].second.pow((*sol)[j]);
    }
    acc += c.eval(t) * mval;
  }
  return acc;
}

} // namespace

QRat substitute_point(const TorusRational& f, const QRat& t_value,
                      const std::vector<std::pair<Key, QRat>>& monomial_values) {
  KeySolver solver(monomial_values);
  QRat den = eval_laurent_at(f.den(), t_value, solver, monomial_values);
  if (den.is_zero()) throw pole_error("substitute_point: pole at point");
  QRat num = eval_laurent_at(f.num(), t_value, solver, monomial_values);
  return num / den;
}

} // namespace sphericalis
