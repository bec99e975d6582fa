#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "sphericalis/errors.hpp"

namespace sphericalis {

// Arbitrary-precision rational, always canonical: reduced, denominator > 0.
class QRat {
 public:
  QRat() : v_(0) {}
  QRat(long n) : v_(static_cast<long>(n)) {}
  QRat(long n, long d) : v_(n, d) {
    if (d == 0) throw error("QRat: zero denominator");
    v_.canonicalize();
  }
  explicit QRat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  static QRat parse(const std::string& s) {
    try {
      mpq_class v(s);
      v.canonicalize();
      return QRat(v);
    } catch (const std::invalid_argument&) {
      throw parse_error("QRat: cannot parse '" + s + "'");
    }
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  long long num_ll() const { return v_.get_num().get_si(); }
  long long den_ll() const { return v_.get_den().get_si(); }

  QRat operator-() const { return QRat(mpq_class(-v_)); }
  QRat operator+(const QRat& o) const { return QRat(mpq_class(v_ + o.v_)); }
  QRat operator-(const QRat& o) const { return QRat(mpq_class(v_ - o.v_)); }
  QRat operator*(const QRat& o) const { return QRat(mpq_class(v_ * o.v_)); }
  QRat operator/(const QRat& o) const {
    if (o.is_zero()) throw pole_error("QRat: division by zero");
    return QRat(mpq_class(v_ / o.v_));
  }
  QRat& operator+=(const QRat& o) {
    v_ += o.v_;
    return *this;
  }
  QRat& operator-=(const QRat& o) {
    v_ -= o.v_;
    return *this;
  }
  QRat& operator*=(const QRat& o) {
    v_ *= o.v_;
    return *this;
  }

  bool operator==(const QRat& o) const { return v_ == o.v_; }
  bool operator!=(const QRat& o) const { return v_ != o.v_; }
  bool operator<(const QRat& o) const { return v_ < o.v_; }
  bool operator<=(const QRat& o) const { return v_ <= o.v_; }
  bool operator>(const QRat& o) const { return v_ > o.v_; }
  bool operator>=(const QRat& o) const { return v_ >= o.v_; }

  QRat pow(long long e) const {
    if (e == 0) return QRat(1);
    if (is_zero()) {
      if (e < 0) throw pole_error("QRat: 0 to negative power");
      return QRat(0);
    }
    mpq_class base = e > 0 ? v_ : mpq_class(1 / v_);
    unsigned long long n = e > 0 ? static_cast<unsigned long long>(e)
                                 : static_cast<unsigned long long>(-e);
    mpq_class acc(1);
    while (n) {
      if (n & 1) acc *= base;
      base *= base;
      n >>= 1;
    }
    return QRat(acc);
  }

  double to_double() const { return v_.get_d(); }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

 private:
  mpq_class v_;
};

inline QRat operator*(long a, const QRat& b) { return QRat(a) * b; }

} // namespace sphericalis
