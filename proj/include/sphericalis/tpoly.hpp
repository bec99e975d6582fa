#pragma once

#include <map>
#include <string>
#include <vector>

#include "sphericalis/rational.hpp"

namespace sphericalis {

// Laurent polynomial in the single variable t (t stands for q^{-1/2}).
// No zero coefficients are stored.
class TPoly {
 public:
  TPoly() = default;
  TPoly(const QRat& c) {
    if (!c.is_zero()) coeffs_[0] = c;
  }
  TPoly(long c) : TPoly(QRat(c)) {}

  static TPoly t_power(long long e, const QRat& c = QRat(1)) {
    TPoly p;
    if (!c.is_zero()) p.coeffs_[e] = c;
    return p;
  }
  // 1 - c*t^e
  static TPoly one_minus(long long e, const QRat& c) {
    TPoly p(QRat(1));
    p.add_term(e, -c);
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
           coeffs_.begin()->second.is_one();
  }
  const std::map<long long, QRat>& coeffs() const { return coeffs_; }
  long long min_exp() const { return is_zero() ? 0 : coeffs_.begin()->first; }
  long long max_exp() const { return is_zero() ? 0 : coeffs_.rbegin()->first; }
  QRat coeff(long long e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? QRat(0) : it->second;
  }

  void add_term(long long e, const QRat& c) {
    if (c.is_zero()) return;
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
      coeffs_[e] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  TPoly operator-() const {
    TPoly r;
    for (auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
  }
  TPoly operator+(const TPoly& o) const {
    TPoly r = *this;
    for (auto& [e, c] : o.coeffs_) r.add_term(e, c);
    return r;
  }
  TPoly operator-(const TPoly& o) const {
    TPoly r = *this;
    for (auto& [e, c] : o.coeffs_) r.add_term(e, -c);
    return r;
  }
  TPoly operator*(const TPoly& o) const {
    TPoly r;
    for (auto& [e1, c1] : coeffs_)
      for (auto& [e2, c2] : o.coeffs_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  TPoly& operator+=(const TPoly& o) {
    for (auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
  }
  TPoly& operator*=(const TPoly& o) {
    *this = *this * o;
    return *this;
  }

  bool operator==(const TPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const TPoly& o) const { return coeffs_ != o.coeffs_; }

  // Drop every term of t-degree > order.
  TPoly truncated(long long order) const {
    TPoly r;
    for (auto& [e, c] : coeffs_)
      if (e <= order) r.coeffs_[e] = c;
    return r;
  }

  QRat eval(const QRat& t) const;

  // Exact quotient; throws not_divisible_error on nonzero remainder.
  TPoly divide_exact(const TPoly& den) const;

  // Inverse as a t-adic Laurent series, truncated at degree `order`.
  TPoly series_inverse(long long order) const;

  std::string str() const;

 private:
  std::map<long long, QRat> coeffs_;
};

TPoly tpoly_gcd(const TPoly& a, const TPoly& b);

// Quotient of two TPoly, kept reduced. Equality is exact (cross-multiplied
// on construction of the reduced form).
class TRat {
 public:
  TRat() : num_(QRat(0)), den_(QRat(1)) {}
  TRat(const TPoly& n) : num_(n), den_(QRat(1)) {}
  TRat(const QRat& c) : num_(c), den_(QRat(1)) {}
  TRat(const TPoly& n, const TPoly& d);

  const TPoly& num() const { return num_; }
  const TPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  TRat operator+(const TRat& o) const {
    return TRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  TRat operator-(const TRat& o) const {
    return TRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  TRat operator*(const TRat& o) const {
    return TRat(num_ * o.num_, den_ * o.den_);
  }
  TRat operator/(const TRat& o) const;
  TRat inverse() const;

  bool operator==(const TRat& o) const {
    return (num_ * o.den_) == (o.num_ * den_);
  }
  bool operator!=(const TRat& o) const { return !(*this == o); }

  // t-adic series expansion truncated at degree `order`.
  TPoly series(long long order) const;

  std::string str() const;

 private:
  TPoly num_, den_;
};

} // namespace sphericalis
