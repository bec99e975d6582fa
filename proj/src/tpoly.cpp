#include "sphericalis/tpoly.hpp"

#include <sstream>

#include "sphericalis/errors.hpp"

namespace sphericalis {

QRat TPoly::eval(const QRat& t) const {
  QRat acc(0);
  for (auto& [e, c] : coeffs_) acc += c * t.pow(e);
  return acc;
}

TPoly TPoly::divide_exact(const TPoly& den) const {
  if (den.is_zero()) throw pole_error("TPoly: division by zero polynomial");
  if (is_zero()) return TPoly();
  // Shift both to ordinary polynomials and peel leading terms.
  TPoly rem = *this;
  TPoly quo;
  long long dmax = den.max_exp();
  QRat dlead = den.coeffs().rbegin()->second;
  long long dmin = den.min_exp();
  long long qmin_bound = min_exp() - dmin; // trailing terms multiply
  while (!rem.is_zero()) {
    long long e = rem.max_exp() - dmax;
    if (e < qmin_bound)
      throw not_divisible_error("TPoly: nonzero remainder");
    QRat c = rem.coeffs().rbegin()->second / dlead;
    quo.add_term(e, c);
    for (auto& [de, dc] : den.coeffs()) rem.add_term(de + e, -(c * dc));
  }
  return quo;
}

TPoly TPoly::series_inverse(long long order) const {
  if (is_zero()) throw pole_error("TPoly: series inverse of zero");
  long long m = min_exp();
  QRat lead = coeffs_.begin()->second;
  // inv = t^{-m} lead^{-1} (1 + u)^{-1} with u of positive t-order.
  TPoly u;
  for (auto& [e, c] : coeffs_)
    if (e != m) u.add_term(e - m, c / lead);
  TPoly acc(QRat(1));
  TPoly pow(QRat(1));
  long long k = 1;
  // u has min degree >= 1, so u^k is negligible past k > order.
  while (k <= order && !pow.is_zero()) {
    pow = (pow * u).truncated(order);
    if (k % 2 == 1)
      acc += -pow;
    else
      acc += pow;
    ++k;
  }
  TPoly r;
  QRat il = QRat(1) / lead;
  for (auto& [e, c] : acc.coeffs()) r.add_term(e - m, c * il);
  return r;
}

std::string TPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    if (e == 0) {
      os << c.str();
    } else {
      if (!c.is_one()) os << c.str() << "*";
      os << "t";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {

// Shift a Laurent polynomial in t to an ordinary polynomial (min exp 0).
TPoly shifted_to_poly(const TPoly& p) {
  TPoly r;
  long long m = p.min_exp();
  for (auto& [e, c] : p.coeffs()) r.add_term(e - m, c);
  return r;
}

} // namespace

TPoly tpoly_gcd(const TPoly& a0, const TPoly& b0) {
  TPoly a = shifted_to_poly(a0), b = shifted_to_poly(b0);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  while (!b.is_zero()) {
    // remainder of a by b (ordinary polynomial division)
    TPoly rem = a;
    long long dmax = b.max_exp();
    QRat dlead = b.coeffs().rbegin()->second;
    while (!rem.is_zero() && rem.max_exp() >= dmax) {
      long long e = rem.max_exp() - dmax;
      QRat c = rem.coeffs().rbegin()->second / dlead;
      for (auto& [de, dc] : b.coeffs()) rem.add_term(de + e, -(c * dc));
    }
    a = b;
    b = rem;
  }
  // Normalize: monic.
  QRat lead = a.coeffs().rbegin()->second;
  TPoly g;
  for (auto& [e, c] : a.coeffs()) g.add_term(e, c / lead);
  return g;
}

TRat::TRat(const TPoly& n, const TPoly& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw pole_error("TRat: zero denominator");
  if (num_.is_zero()) {
    den_ = TPoly(QRat(1));
    return;
  }
  TPoly g = tpoly_gcd(num_, den_);
  if (!(g.max_exp() == 0 && g.min_exp() == 0)) {
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
  }
  // Strip common t-power and normalize the denominator's lowest coefficient
  // to 1 so printed forms are stable.
  long long shift = den_.min_exp();
  QRat lead = den_.coeffs().begin()->second;
  TPoly n2, d2;
  for (auto& [e, c] : num_.coeffs()) n2.add_term(e - shift, c / lead);
  for (auto& [e, c] : den_.coeffs()) d2.add_term(e - shift, c / lead);
  num_ = n2;
  den_ = d2;
}

TRat TRat::operator/(const TRat& o) const {
  if (o.is_zero()) throw pole_error("TRat: division by zero");
  return TRat(num_ * o.den_, den_ * o.num_);
}

TRat TRat::inverse() const {
  if (is_zero()) throw pole_error("TRat: inverse of zero");
  return TRat(den_, num_);
}

TPoly TRat::series(long long order) const {
  if (num_.is_zero()) return TPoly();
  long long slack = den_.min_exp() < 0 ? -den_.min_exp() : 0;
  TPoly inv = den_.series_inverse(order + slack + 1);
  return (num_ * inv).truncated(order);
}

std::string TRat::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

} // namespace sphericalis
