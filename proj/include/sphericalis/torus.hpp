#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphericalis/tpoly.hpp"

namespace sphericalis {

// Exponent vector in the doubled coweight lattice: the key v stands for the
// monomial e^{v/2} in true coordinates, so half-integral coweights have
// integer keys.
using Key = std::vector<long long>;

Key key_add(const Key& a, const Key& b);
Key key_neg(const Key& a);
Key key_scale(long long c, const Key& a);
long long key_dot(const Key& a, const std::vector<long long>& b);

// Graded lexicographic: total degree first, ties broken by coordinate index.
struct GradedLexLess {
  bool operator()(const Key& a, const Key& b) const;
};

// Square integer matrix acting on exponent keys (row-major).
struct IntMat {
  size_t n = 0;
  std::vector<long long> a;

  static IntMat identity(size_t n);
  Key apply(const Key& v) const;
  IntMat operator*(const IntMat& o) const;
  bool operator==(const IntMat& o) const { return n == o.n && a == o.a; }
  bool operator<(const IntMat& o) const {
    return n != o.n ? n < o.n : a < o.a;
  }
  long long at(size_t i, size_t j) const { return a[i * n + j]; }
  long long det() const;
};

// Multivariate Laurent polynomial over Q(t)-polynomials, exponents in the
// doubled lattice. No zero coefficients stored; all keys have length rank.
class TorusLaurent {
 public:
  explicit TorusLaurent(size_t rank = 0) : rank_(rank) {}

  static TorusLaurent zero(size_t rank) { return TorusLaurent(rank); }
  static TorusLaurent one(size_t rank) {
    TorusLaurent r(rank);
    r.add_term(Key(rank, 0), TPoly(QRat(1)));
    return r;
  }
  static TorusLaurent monomial(const Key& k, const TPoly& c = TPoly(QRat(1))) {
    TorusLaurent r(k.size());
    r.add_term(k, c);
    return r;
  }
  // 1 - c * e^{k}
  static TorusLaurent one_minus(const Key& k, const TPoly& c) {
    TorusLaurent r = one(k.size());
    r.add_term(k, -c);
    return r;
  }

  size_t rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->second.is_one() &&
           terms_.begin()->first == Key(rank_, 0);
  }
  size_t term_count() const { return terms_.size(); }
  const std::map<Key, TPoly, GradedLexLess>& terms() const { return terms_; }
  TPoly coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? TPoly() : it->second;
  }

  void add_term(const Key& k, const TPoly& c);

  TorusLaurent operator-() const;
  TorusLaurent operator+(const TorusLaurent& o) const;
  TorusLaurent operator-(const TorusLaurent& o) const;
  TorusLaurent operator*(const TorusLaurent& o) const;
  TorusLaurent& operator+=(const TorusLaurent& o);
  bool operator==(const TorusLaurent& o) const {
    return rank_ == o.rank_ && terms_ == o.terms_;
  }
  bool operator!=(const TorusLaurent& o) const { return !(*this == o); }

  TorusLaurent scale(const TPoly& c) const;
  TorusLaurent mul_monomial(const Key& k, const TPoly& c) const;

  // Exponent substitution v -> M v. The matrix must be invertible.
  TorusLaurent apply_matrix(const IntMat& m) const;
  // Exponent negation (chi -> chi^{-1}).
  TorusLaurent invert_torus() const;

  // Substitute e^{v} -> t^{dot(v, rho2)/2}; throws if a pairing is odd.
  TPoly eval_t_point(const std::vector<long long>& rho2) const;

  // If *this is c * e^{k}, return (k, c).
  std::optional<std::pair<Key, TPoly>> as_monomial() const;

  std::string str(const std::string& sym = "z") const;

 private:
  size_t rank_;
  std::map<Key, TPoly, GradedLexLess> terms_;

  void check_rank(const TorusLaurent& o) const;
};

enum class PolyOp { add, sub, mul };
TorusLaurent poly_arith(const TorusLaurent& a, const TorusLaurent& b, PolyOp op);

// Exact division in the Laurent ring: returns q with q*den == num, or throws
// not_divisible_error. Graded-lex leading-term peeling after shifting both
// operands into the polynomial range.
TorusLaurent exact_divide(const TorusLaurent& num, const TorusLaurent& den);

// Rational function in the torus variables. Equality is decided by
// cross-multiplication; no multivariate gcd is attempted.
class TorusRational {
 public:
  TorusRational() = default;
  TorusRational(const TorusLaurent& n)
      : num_(n), den_(TorusLaurent::one(n.rank())) {}
  TorusRational(const TorusLaurent& n, const TorusLaurent& d) : num_(n), den_(d) {
    if (d.is_zero()) throw pole_error("TorusRational: zero denominator");
    if (n.rank() != d.rank())
      throw dimension_error("TorusRational: rank mismatch");
  }

  static TorusRational one(size_t rank) {
    return TorusRational(TorusLaurent::one(rank));
  }

  const TorusLaurent& num() const { return num_; }
  const TorusLaurent& den() const { return den_; }
  size_t rank() const { return num_.rank(); }
  bool is_zero() const { return num_.is_zero(); }

  TorusRational operator*(const TorusRational& o) const {
    return TorusRational(num_ * o.num_, den_ * o.den_);
  }
  TorusRational operator/(const TorusRational& o) const {
    if (o.is_zero()) throw pole_error("TorusRational: division by zero");
    return TorusRational(num_ * o.den_, den_ * o.num_);
  }
  TorusRational operator+(const TorusRational& o) const {
    return TorusRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  TorusRational operator-(const TorusRational& o) const {
    return TorusRational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  TorusRational inverse() const {
    if (is_zero()) throw pole_error("TorusRational: inverse of zero");
    return TorusRational(den_, num_);
  }
  TorusRational scale(const TRat& c) const {
    return TorusRational(num_.scale(c.num()), den_.scale(c.den()));
  }

  bool operator==(const TorusRational& o) const {
    return (num_ * o.den_) == (o.num_ * den_);
  }
  bool operator!=(const TorusRational& o) const { return !(*this == o); }

  TorusRational apply_matrix(const IntMat& m) const {
    return TorusRational(num_.apply_matrix(m), den_.apply_matrix(m));
  }
  TorusRational invert_torus() const {
    return TorusRational(num_.invert_torus(), den_.invert_torus());
  }

  TRat eval_t_point(const std::vector<long long>& rho2) const;

  std::string str(const std::string& sym = "z") const;

 private:
  TorusLaurent num_{0}, den_{0};
};

// Numeric evaluation: t -> t_value, monomials resolved through the given
// key/value assignments (a monomial must be an integer combination of the
// assigned keys). Throws pole_error if the denominator vanishes.
QRat substitute_point(const TorusRational& f, const QRat& t_value,
                      const std::vector<std::pair<Key, QRat>>& monomial_values);

} // namespace sphericalis
