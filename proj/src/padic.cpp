#include "sphericalis/padic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "sphericalis/errors.hpp"

namespace sphericalis {

namespace {

long long ipow(long long b, long long e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long long vp(long long n, long long p) {
  long long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

long long mod_inverse(long long a, long long m) {
  long long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw error("mod_inverse: not invertible");
  return ((t % m) + m) % m;
}

// psi(r) = exp(2 pi i {r}_p), {r}_p the p-power principal part.
cxd psi_rational(long long num, long long den, long long p) {
  // value r = num/den; den = p^k * unit
  if (num == 0) return 1.0;
  long long k = vp(den, p);
  long long unit = den / ipow(p, k);
  long long knum = vp(num, p);
  long long red = std::min(k, knum);
  k -= red;
  num /= ipow(p, red);
  if (k == 0) return 1.0;
  long long pk = ipow(p, k);
  long long a = ((num % pk) + pk) % pk;
  a = (a * mod_inverse(unit, pk)) % pk;
  double ang = 2.0 * std::numbers::pi * double(a) / double(pk);
  return cxd(std::cos(ang), std::sin(ang));
}

QRat qrat_from_double(double v) {
  double r = std::round(v);
  if (std::abs(v - r) > 1e-9)
    throw error("exact mode requires integer-valued step functions");
  return QRat((long)r);
}

} // namespace

PAdicStepFunction::PAdicStepFunction(long long p, int dim, long long M, long long N)
    : p_(p), dim_(dim), M_(M), N_(N), P_(ipow(p, M + N)) {
  if (dim != 1 && dim != 2) throw error("PAdicStepFunction: dim must be 1 or 2");
  if (M < 0 || N < 0) throw error("PAdicStepFunction: M, N >= 0");
  values_.assign(dim == 1 ? P_ : P_ * P_, cxd(0, 0));
}

cxd PAdicStepFunction::at(long long i) const { return values_[i]; }
cxd PAdicStepFunction::at(long long i, long long j) const {
  return values_[i * P_ + j];
}
void PAdicStepFunction::set(long long i, cxd v) { values_[i] = v; }
void PAdicStepFunction::set(long long i, long long j, cxd v) {
  values_[i * P_ + j] = v;
}

void PAdicStepFunction::add_box1(long long a_num, long long j, cxd coef) {
  if (j > N_) throw error("add_box1: box finer than grid smoothness");
  if (j + M_ < 0) throw error("add_box1: box exceeds grid support");
  long long step = ipow(p_, j + M_); // indices congruent mod p^{j+M}
  long long a = ((a_num % P_) + P_) % P_;
  for (long long i = a % step; i < P_; i += step) values_[i] += coef;
}

void PAdicStepFunction::add_box2(long long ax_num, long long jx, long long ay_num,
                                 long long jy, cxd coef) {
  if (jx > N_ || jy > N_) throw error("add_box2: box finer than grid");
  long long sx = ipow(p_, jx + M_), sy = ipow(p_, jy + M_);
  long long ax = ((ax_num % P_) + P_) % P_;
  long long ay = ((ay_num % P_) + P_) % P_;
  for (long long i = ax % sx; i < P_; i += sx)
    for (long long j = ay % sy; j < P_; j += sy) values_[i * P_ + j] += coef;
}

long long PAdicStepFunction::rep_valuation(long long i, bool& deep) const {
  if (i == 0) {
    deep = true;
    return N_;
  }
  deep = false;
  return vp(i, p_) - M_;
}

long long PAdicStepFunction::unit_class_mod_p(long long i) const {
  if (i == 0) throw error("unit_class_mod_p: zero rep");
  long long u = i / ipow(p_, vp(i, p_));
  return u % p_;
}

double PAdicStepFunction::l2_norm_sq() const {
  double vol = std::pow((double)p_, -(double)(N_ * dim_));
  double s = 0;
  for (auto& v : values_) s += std::norm(v);
  return s * vol;
}

PAdicStepFunction PAdicStepFunction::fourier1(const PAdicStepFunction& f) {
  if (f.dim_ != 1) throw error("fourier1: dim 1 expected");
  long long P = f.P_, p = f.p_;
  PAdicStepFunction out(p, 1, f.N_, f.M_);
  std::vector<cxd> root(P);
  for (long long k = 0; k < P; ++k) {
    double ang = -2.0 * std::numbers::pi * double(k) / double(P);
    root[k] = cxd(std::cos(ang), std::sin(ang));
  }
  double vol = std::pow((double)p, -(double)f.N_);
  // f-hat(y) = int f(x) psi(-x y) dx; x_i y_j = i j / p^{M+N}
  for (long long jy = 0; jy < P; ++jy) {
    cxd acc = 0;
    for (long long i = 0; i < P; ++i)
      acc += f.values_[i] * root[(i * jy) % P];
    out.values_[jy] = acc * vol;
  }
  return out;
}

PAdicStepFunction PAdicStepFunction::fourier2(const PAdicStepFunction& f,
                                              long long grid_cap) {
  if (f.dim_ != 2) throw error("fourier2: dim 2 expected");
  long long P = f.P_, p = f.p_;
  if (P * P > grid_cap) throw error("fourier2: grid exceeds cap");
  PAdicStepFunction out(p, 2, f.N_, f.M_);
  std::vector<cxd> root(P);
  for (long long k = 0; k < P; ++k) {
    double ang = 2.0 * std::numbers::pi * double(k) / double(P);
    root[k] = cxd(std::cos(ang), std::sin(ang));
  }
  double vol = std::pow((double)p, -(double)f.N_);
  // (Ff)(v,w) = int f(x,y) psi(-x w + y v) dx dy, separable passes.
  std::vector<cxd> g(P * P); // g(i, a) = vol * sum_j f(i,j) psi(y_j v_a)
  for (long long i = 0; i < P; ++i)
    for (long long a = 0; a < P; ++a) {
      cxd acc = 0;
      for (long long j = 0; j < P; ++j)
        acc += f.values_[i * P + j] * root[(j * a) % P];
      g[i * P + a] = acc * vol;
    }
  for (long long a = 0; a < P; ++a)
    for (long long b = 0; b < P; ++b) {
      cxd acc = 0;
      for (long long i = 0; i < P; ++i)
        acc += g[i * P + a] * std::conj(root[(i * b) % P]);
      out.values_[a * P + b] = acc * vol;
    }
  return out;
}

int legendre(long long a, long long p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  int r = 1;
  long long e = (p - 1) / 2, b = a, m = 1;
  while (e) {
    if (e & 1) m = (m * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  r = (m == 1) ? 1 : -1;
  return r;
}

QRat tate_pair_exact(const PAdicStepFunction& f, const MultChar& chi) {
  if (f.dim() != 1) throw error("tate_pair_exact: dim 1 expected");
  long long p = f.p(), P = f.grid();
  QRat total(0);
  for (long long i = 0; i < P; ++i) {
    QRat fv = qrat_from_double(f.at(i).real());
    if (std::abs(f.at(i).imag()) > 1e-12)
      throw error("tate_pair_exact: complex-valued function");
    if (fv.is_zero()) continue;
    bool deep;
    long long m = f.rep_valuation(i, deep);
    if (!deep) {
      // cell = unit class of depth N - m at shell m; d^x-volume
      QRat vol = QRat(1, (p - 1) * ipow(p, f.N() - m - 1));
      QRat w = chi.u.pow(m);
      if (chi.quadratic) w = w * QRat(legendre(f.unit_class_mod_p(i), p));
      total += fv * w * vol;
    } else {
      if (chi.quadratic) continue; // unit sums vanish
      // tail sum_{m >= N} u^m (vol of the full unit shell is 1)
      QRat u = chi.u;
      if (u == QRat(1)) throw pole_error("tate_pair_exact: divergent at u = 1");
      total += fv * u.pow(f.N()) / (QRat(1) - u);
    }
  }
  return total;
}

cxd gauss_sum_quadratic(long long p, const QRat& u) {
  // tau(eta) = sum_{eps in o^x/(1+p)} eta(pi^{-1} eps) psi(pi^{-1} eps)
  cxd acc = 0;
  for (long long a = 1; a < p; ++a)
    acc += double(legendre(a, p)) * psi_rational(a, p, p);
  return acc / u.to_double();
}

QRat gauss_circle(long long p, long long kappa) {
  if (legendre(-kappa, p) != -1)
    throw error("gauss_circle: -kappa must be a non-square unit");
  long long s = 0;
  for (long long a = 1; a < p; ++a) s += legendre(kappa + a * a, p);
  return QRat(s, p);
}

TateReport tate_verify(long long p, double tol) {
  TateReport rep;
  long long M = 2, N = 3;
  std::vector<PAdicStepFunction> battery;
  auto box = [&](long long a, long long j) {
    PAdicStepFunction f(p, 1, M, N);
    f.add_box1(a, j, 1.0);
    return f;
  };
  long long pm = ipow(p, M);
  battery.push_back(box(0, 0));          // 1_o
  battery.push_back(box(0, 1));          // 1_p
  battery.push_back(box(pm, 1));         // 1_{1+p}
  battery.push_back(box(pm / p, 1));     // 1_{pi^{-1}+p}
  battery.push_back(box(2 * pm, 2));     // 1_{2+p^2}
  battery.push_back(box(pm / p / p, 0)); // 1_{pi^{-2}+o}

  auto pair_cx = [&](const PAdicStepFunction& f, double uval, bool quad,
                     bool dual) -> cxd {
    // <f, chi d^x> with chi(pi) = uval (times |.| on the dual side handled
    // by the caller through uval)
    cxd total = 0;
    for (long long i = 0; i < f.grid(); ++i) {
      cxd fv = f.at(i);
      if (std::abs(fv) < 1e-300) continue;
      bool deep;
      long long m = f.rep_valuation(i, deep);
      if (!deep) {
        double vol = 1.0 / double((p - 1) * ipow(p, f.N() - m - 1));
        double w = std::pow(uval, (double)m);
        if (quad) w *= legendre(f.unit_class_mod_p(i), p);
        total += fv * w * vol;
      } else {
        if (quad) continue;
        total += fv * std::pow(uval, (double)f.N()) / (1.0 - uval);
      }
    }
    (void)dual;
    return total;
  };

  // avoid u = 1/q, where the dual unramified character degenerates
  std::vector<QRat> usamples = {QRat(1, 2), QRat(2, 5), QRat(3, 4)};
  for (bool quad : {false, true}) {
    for (auto& uq : usamples) {
      double u = uq.to_double();
      // <chi d^x, F f> = gamma(chi) <chi^{-1}|.| d^x, f>; with the psi(-xy)
      // kernel the quadratic gamma picks up eta(-1).
      cxd gamma;
      if (!quad)
        gamma = cxd(1.0 - 1.0 / ((double)p * u)) / (1.0 - u);
      else
        gamma = double(legendre(-1, p)) *
                gauss_sum_quadratic(p, QRat(1)) / (u * double(p));
      for (auto& f : battery) {
        PAdicStepFunction fh = PAdicStepFunction::fourier1(f);
        cxd lhs = pair_cx(fh, u, quad, true);
        cxd rhs = gamma * pair_cx(f, 1.0 / ((double)p * u), quad, false);
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        double err = std::abs(lhs - rhs) / scale;
        rep.max_rel_err = std::max(rep.max_rel_err, err);
        ++rep.samples;
      }
    }
  }
  rep.pass = rep.max_rel_err < tol;
  return rep;
}

OracleCase oracle_case_parse(const std::string& s) {
  std::string lo = s;
  std::transform(lo.begin(), lo.end(), lo.begin(), ::tolower);
  if (lo == "u-lower") return OracleCase::u_lower;
  if (lo == "u-raise") return OracleCase::u_raise;
  if (lo == "u-psi") return OracleCase::u_psi;
  if (lo == "t-split-unram") return OracleCase::t_split_unram;
  if (lo == "t-split-ram") return OracleCase::t_split_ram;
  if (lo == "t-nonsplit-unram") return OracleCase::t_nonsplit_unram;
  if (lo == "t-nonsplit-ram") return OracleCase::t_nonsplit_ram;
  if (lo == "n-nonintegral") return OracleCase::n_nonintegral;
  throw parse_error("unknown oracle case '" + s + "'");
}

std::string oracle_case_name(OracleCase c) {
  switch (c) {
    case OracleCase::u_lower: return "U-lower";
    case OracleCase::u_raise: return "U-raise";
    case OracleCase::u_psi: return "U-psi";
    case OracleCase::t_split_unram: return "T-split-unram";
    case OracleCase::t_split_ram: return "T-split-ram";
    case OracleCase::t_nonsplit_unram: return "T-nonsplit-unram";
    case OracleCase::t_nonsplit_ram: return "T-nonsplit-ram";
    case OracleCase::n_nonintegral: return "N-nonintegral";
  }
  return "?";
}

namespace {

// ---- shell pairings for the rank-one distributions -------------------

// <|x|^{s} dx dy, f>; |x|^s on the shell v(x) = m is b^m with b = q^{-s}.
// Tails use the closed geometric form (the rational continuation).
cxd pair_abs_x(const PAdicStepFunction& f, double b) {
  long long p = f.p(), P = f.grid(), N = f.N();
  double area = std::pow((double)p, -2.0 * N);
  double yarea = std::pow((double)p, -1.0 * N);
  cxd total = 0;
  for (long long i = 0; i < P; ++i) {
    bool deep;
    long long m = f.rep_valuation(i, deep);
    cxd col = 0;
    for (long long j = 0; j < P; ++j) col += f.at(i, j);
    if (std::abs(col) < 1e-300) continue;
    if (!deep) {
      total += col * std::pow(b, (double)m) * area;
    } else {
      double tail = (1.0 - 1.0 / p) * std::pow(b / p, (double)N) / (1.0 - b / p);
      total += col * yarea * tail;
    }
  }
  return total;
}

// <|y|^{s} delta_0(x) dy, f>; b = q^{-s} per shell.
cxd pair_delta0_abs_y(const PAdicStepFunction& f, double b) {
  long long p = f.p(), P = f.grid(), N = f.N();
  double yarea = std::pow((double)p, -1.0 * N);
  cxd total = 0;
  for (long long j = 0; j < P; ++j) {
    cxd fv = f.at(0, j);
    if (std::abs(fv) < 1e-300) continue;
    bool deep;
    long long n = f.rep_valuation(j, deep);
    if (!deep)
      total += fv * std::pow(b, (double)n) * yarea;
    else
      total += fv * (1.0 - 1.0 / p) * std::pow(b / p, (double)N) / (1.0 - b / p);
  }
  return total;
}

// <|x|^{s} psi(-y/x) dx dy, f>; A = q^{-s} per shell; exact cell rules via
// the inversion substitution (see the functional-equation computations).
cxd pair_psi_case(const PAdicStepFunction& f, double A) {
  long long p = f.p(), P = f.grid(), N = f.N(), M = f.M();
  double cellarea = std::pow((double)p, -2.0 * N);
  double yarea = std::pow((double)p, -1.0 * N);
  cxd total = 0;
  for (long long i = 0; i < P; ++i) {
    bool xdeep;
    long long m = f.rep_valuation(i, xdeep);
    for (long long j = 0; j < P; ++j) {
      cxd fv = f.at(i, j);
      if (std::abs(fv) < 1e-300) continue;
      bool ydeep;
      long long nu = f.rep_valuation(j, ydeep);
      if (!xdeep) {
        if (ydeep) {
          // y-cell integral of psi(-y/x) over p^N o: trivial iff m <= N
          if (m <= N) total += fv * std::pow(A, (double)m) * cellarea;
        } else {
          // zero unless nu >= 2m - N; phase psi(-y0/x0) = psi(-j/i)
          if (nu >= 2 * m - N)
            total += fv * std::pow(A, (double)m) * cellarea *
                     psi_rational(-j, i, p);
        }
      } else {
        if (ydeep) {
          // only the shell m = N survives
          total += fv * std::pow(A, (double)N) * (1.0 - 1.0 / p) *
                   std::pow((double)p, -2.0 * N);
        } else {
          // sum_{m >= N} A^m [ q^{-m} 1(nu >= m) - q^{-m-1} 1(nu >= m-1) ]
          double acc = 0;
          for (long long m2 = N; m2 <= nu + 1; ++m2) {
            double term = 0;
            if (nu >= m2) term += std::pow(A / p, (double)m2);
            if (nu >= m2 - 1) term -= std::pow(A, (double)m2) *
                                      std::pow((double)p, -(double)(m2 + 1));
            acc += term;
          }
          total += fv * yarea * acc;
        }
      }
    }
  }
  (void)M;
  return total;
}

// eta_D(x) eta_{D'}(y) d^x x d^x y against f; quadratic part shared.
cxd pair_tsplit(const PAdicStepFunction& f, double uD, double uDp, bool quad) {
  long long p = f.p(), P = f.grid(), N = f.N();
  cxd total = 0;
  auto shell = [&](long long idx, double u, bool& deep, double& w, double& vol) {
    long long m = f.rep_valuation(idx, deep);
    if (!deep) {
      vol = 1.0 / double((p - 1) * ipow(p, N - m - 1));
      w = std::pow(u, (double)m);
      if (quad) w *= legendre(f.unit_class_mod_p(idx), p);
    } else {
      vol = 1.0;
      w = quad ? 0.0 : std::pow(u, (double)N) / (1.0 - u);
    }
  };
  for (long long i = 0; i < P; ++i)
    for (long long j = 0; j < P; ++j) {
      cxd fv = f.at(i, j);
      if (std::abs(fv) < 1e-300) continue;
      bool dx, dy;
      double wx, wy, vx, vy;
      shell(i, uD, dx, wx, vx);
      shell(j, uDp, dy, wy, vy);
      total += fv * wx * wy * vx * vy;
    }
  return total;
}

// eta2(x^2 + kappa y^2) |x^2 + kappa y^2|^{s/2} dx dy; u = q^{-s/2}.
cxd pair_tnonsplit(const PAdicStepFunction& f, double u, bool ram,
                   long long kappa) {
  long long p = f.p(), P = f.grid(), N = f.N();
  double cellarea = std::pow((double)p, -2.0 * N);
  double onearea = std::pow((double)p, -1.0 * N);
  double lk = ram ? legendre(kappa, p) : 1.0;
  // base integral over o^2, by self-similarity
  double S0 = 0;
  for (long long a = 0; a < p; ++a)
    for (long long b = 0; b < p; ++b) {
      if (a == 0 && b == 0) continue;
      double cls;
      if (a != 0 && b == 0)
        cls = 1.0;
      else if (a == 0)
        cls = lk;
      else
        cls = ram ? legendre(a * a + kappa * b * b, p) : 1.0;
      S0 += cls;
    }
  S0 /= double(p * p);
  double I0 = S0 / (1.0 - u * u / double(p * p));
  cxd total = 0;
  for (long long i = 0; i < P; ++i) {
    bool dx;
    long long m = f.rep_valuation(i, dx);
    for (long long j = 0; j < P; ++j) {
      cxd fv = f.at(i, j);
      if (std::abs(fv) < 1e-300) continue;
      bool dy;
      long long n = f.rep_valuation(j, dy);
      if (dx && dy) {
        total += fv * std::pow(u, 2.0 * N) * std::pow((double)p, -2.0 * N) * I0;
      } else if (dx) { // m >= N > n
        total += fv * std::pow(u, 2.0 * n) * lk * onearea *
                 std::pow((double)p, -(double)N);
      } else if (dy) { // n >= N > m
        total += fv * std::pow(u, 2.0 * m) * onearea *
                 std::pow((double)p, -(double)N);
      } else {
        double w;
        if (m < n)
          w = std::pow(u, 2.0 * m);
        else if (m > n)
          w = std::pow(u, 2.0 * n) * lk;
        else {
          long long a = f.unit_class_mod_p(i), b = f.unit_class_mod_p(j);
          double cls = ram ? legendre(a * a + kappa * b * b, p) : 1.0;
          w = std::pow(u, 2.0 * m) * cls;
        }
        total += fv * w * cellarea;
      }
    }
  }
  return total;
}

// |x^2 + pi y^2|^{s/2} dx dy; u = q^{-s/2}; valuation min(2m, 2n+1).
cxd pair_nnonintegral(const PAdicStepFunction& f, double u) {
  long long p = f.p(), P = f.grid(), N = f.N();
  double cellarea = std::pow((double)p, -2.0 * N);
  double onearea = std::pow((double)p, -1.0 * N);
  double S0 = (double(p - 1) * p + double(p - 1) * u) / double(p * p);
  double I0 = S0 / (1.0 - u * u / double(p * p));
  cxd total = 0;
  for (long long i = 0; i < P; ++i) {
    bool dx;
    long long m = f.rep_valuation(i, dx);
    for (long long j = 0; j < P; ++j) {
      cxd fv = f.at(i, j);
      if (std::abs(fv) < 1e-300) continue;
      bool dy;
      long long n = f.rep_valuation(j, dy);
      if (dx && dy)
        total += fv * std::pow(u, 2.0 * N) * std::pow((double)p, -2.0 * N) * I0;
      else if (dx) // 2m >= 2N > 2n+1 - 1: c = 2n+1
        total += fv * std::pow(u, 2.0 * n + 1) * onearea *
                 std::pow((double)p, -(double)N);
      else if (dy) // c = 2m
        total += fv * std::pow(u, 2.0 * m) * onearea *
                 std::pow((double)p, -(double)N);
      else
        total += fv * std::pow(u, (double)std::min(2 * m, 2 * n + 1)) * cellarea;
    }
  }
  return total;
}

struct Battery {
  std::vector<PAdicStepFunction> fs;
  std::vector<PAdicStepFunction> ffs;
};

const Battery& battery_for(long long p) {
  static std::map<long long, Battery> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  long long M = (p == 3) ? 2 : 1;
  long long N = (p == 3) ? 3 : 2;
  long long pm = ipow(p, M);
  Battery b;
  auto add = [&](std::vector<std::array<long long, 5>> boxes) {
    PAdicStepFunction f(p, 2, M, N);
    for (auto& bx : boxes)
      f.add_box2(bx[0], bx[1], bx[2], bx[3], (double)bx[4]);
    b.fs.push_back(f);
  };
  add({{0, 0, 0, 0, 1}});                 // o x o
  add({{0, 1, 0, 0, 1}});                 // p x o
  add({{0, 0, 0, 1, 1}});                 // o x p
  add({{pm, 1, 0, 0, 1}});                // (1+p) x o
  add({{0, 0, pm, 1, 1}});                // o x (1+p)
  add({{pm / p, 1, 0, 0, 1}});            // (pi^{-1}+p) x o
  add({{pm, 1, pm, 1, 1}});               // (1+p) x (1+p)
  add({{0, 1, pm, 1, 1}});                // p x (1+p)
  add({{0, 0, 0, 0, 1}, {0, 1, 0, 1, -1}}); // o^2 minus p^2
  // unit-class pinned boxes: nonzero pairings against ramified characters
  add({{2 * pm, 1, pm, 1, 1}});           // (2+p) x (1+p)
  add({{pm, 1, 2 * pm, 1, 1}});           // (1+p) x (2+p)
  add({{pm / p, 1, pm, 1, 1}});           // (pi^{-1}+p) x (1+p)
  add({{pm, 1, pm / p, 1, 1}});           // (1+p) x (pi^{-1}+p)
  add({{p * pm, 2, pm, 1, 1}});           // (pi+p^2) x (1+p)
  add({{2 * pm, 1, 2 * pm, 1, 1}});       // (2+p) x (2+p)
  for (auto& f : b.fs) b.ffs.push_back(PAdicStepFunction::fourier2(f));
  auto [pos, ok] = cache.emplace(p, std::move(b));
  (void)ok;
  return pos->second;
}

} // namespace

TRat dist_pair_u_exact(OracleCase tag, long long p, bool eta2_ramified,
                       long long kappa, const PAdicStepFunction& f) {
  if (f.dim() != 2) throw error("dist_pair_u_exact: dim 2 expected");
  long long P = f.grid(), N = f.N();
  TPoly finite;          // polynomial part in u
  TPoly deep_coeff;      // multiplies I0 = S0 / (1 - u^2/q^2)
  QRat q(p), qinv(1, p);
  QRat lk = eta2_ramified ? QRat(legendre(kappa, p)) : QRat(1);

  TPoly S0;
  if (tag == OracleCase::t_nonsplit_unram || tag == OracleCase::t_nonsplit_ram) {
    QRat s0(0);
    for (long long a = 0; a < p; ++a)
      for (long long b = 0; b < p; ++b) {
        if (a == 0 && b == 0) continue;
        QRat cls(1);
        if (a != 0 && b == 0)
          cls = QRat(1);
        else if (a == 0)
          cls = lk;
        else
          cls = eta2_ramified ? QRat(legendre(a * a + kappa * b * b, p)) : QRat(1);
        s0 += cls;
      }
    S0 = TPoly(s0 * qinv * qinv);
  } else if (tag == OracleCase::n_nonintegral) {
    // ((p-1)p + (p-1)u)/p^2
    S0 = TPoly(QRat(p - 1) * qinv);
    S0.add_term(1, QRat(p - 1) * qinv * qinv);
  } else {
    throw error("dist_pair_u_exact: unsupported tag");
  }

  QRat cellarea = qinv.pow(2 * N);
  QRat mixedarea = qinv.pow(2 * N); // q^{-N} * q^{-N}
  for (long long i = 0; i < P; ++i) {
    bool dx;
    long long m = f.rep_valuation(i, dx);
    for (long long j = 0; j < P; ++j) {
      QRat fv = qrat_from_double(f.at(i, j).real());
      if (fv.is_zero()) continue;
      bool dy;
      long long n = f.rep_valuation(j, dy);
      if (dx && dy) {
        deep_coeff.add_term(2 * N, fv * qinv.pow(2 * N));
        continue;
      }
      if (tag == OracleCase::n_nonintegral) {
        long long c = dx ? (2 * n + 1) : dy ? (2 * m) : std::min(2 * m, 2 * n + 1);
        finite.add_term(c, fv * (dx || dy ? mixedarea : cellarea));
      } else {
        QRat cls(1);
        long long c;
        if (dx) {
          c = 2 * n;
          cls = lk;
        } else if (dy) {
          c = 2 * m;
        } else if (m < n) {
          c = 2 * m;
        } else if (m > n) {
          c = 2 * n;
          cls = lk;
        } else {
          c = 2 * m;
          long long a = f.unit_class_mod_p(i), b = f.unit_class_mod_p(j);
          cls = eta2_ramified ? QRat(legendre(a * a + kappa * b * b, p)) : QRat(1);
        }
        finite.add_term(c, fv * cls * (dx || dy ? mixedarea : cellarea));
      }
    }
  }
  // total = finite + deep_coeff * S0 / (1 - u^2 q^{-2})
  TPoly denom = TPoly::one_minus(2, qinv * qinv);
  return TRat(finite * denom + deep_coeff * S0, denom);
}

OracleReport verify_case(OracleCase tag, long long p, const QRat& uq, double tol) {
  OracleReport rep;
  rep.case_name = oracle_case_name(tag);
  rep.p = p;
  const Battery& bat = battery_for(p);
  double u = uq.to_double();
  double q = (double)p;
  long long kappa = 0;
  if (tag == OracleCase::t_nonsplit_unram || tag == OracleCase::t_nonsplit_ram) {
    for (long long k = 1; k < p; ++k)
      if (legendre(-k, p) == -1) {
        kappa = k;
        break;
      }
  }

  // Delta on the chi-side applied to Ff, Delta' on the ^w chi-side applied
  // to f, expected ratio from the closed forms of the functional equations.
  std::function<cxd(const PAdicStepFunction&)> lhs_pair, rhs_pair;
  cxd expected;
  double uDp = 0;
  switch (tag) {
    case OracleCase::u_lower: {
      // E = e^{-alpha}(chi) = u; Delta_1 = |x|^{s_1} with q^{s_1+1} = E, so
      // the shell base is q^{-s_1} = q/E; the ^w side is |y|^{s_2'} with
      // q^{s_2'} = 1/E, base E.
      double E = u;
      lhs_pair = [&, E](const PAdicStepFunction& g) {
        return pair_abs_x(g, q / E);
      };
      rhs_pair = [&, E](const PAdicStepFunction& g) {
        return pair_delta0_abs_y(g, E);
      };
      expected = -E * (1.0 - E / q) / (1.0 - E);
      break;
    }
    case OracleCase::u_raise: {
      double E = u; // q^{s_2} = E on the chi side: base 1/E
      lhs_pair = [&, E](const PAdicStepFunction& g) {
        return pair_delta0_abs_y(g, 1.0 / E);
      };
      rhs_pair = [&, E](const PAdicStepFunction& g) {
        return pair_abs_x(g, q * E);
      };
      expected = (1.0 - E) / (1.0 - 1.0 / (q * E));
      break;
    }
    case OracleCase::u_psi: {
      double E = u; // q^{s+1} = E: base q/E; ^w side base qE
      lhs_pair = [&, E](const PAdicStepFunction& g) {
        return pair_psi_case(g, q / E);
      };
      rhs_pair = [&, E](const PAdicStepFunction& g) {
        return pair_psi_case(g, q * E);
      };
      expected = 1.0;
      break;
    }
    case OracleCase::t_split_unram: {
      double uD = u;
      uDp = (u + 1.0 / q) / 2.0 + 0.1 * (1 - u); // second sample in (1/q, 1)
      lhs_pair = [&, uD](const PAdicStepFunction& g) {
        return pair_tsplit(g, uD, uDp, false);
      };
      rhs_pair = [&, uD](const PAdicStepFunction& g) {
        return pair_tsplit(g, 1.0 / (q * uDp), 1.0 / (q * uD), false);
      };
      expected = (1.0 - 1.0 / (q * uD)) * (1.0 - 1.0 / (q * uDp)) /
                 ((1.0 - uD) * (1.0 - uDp));
      break;
    }
    case OracleCase::t_split_ram: {
      double uD = u;
      uDp = (u + 1.0 / q) / 2.0 + 0.1 * (1 - u);
      lhs_pair = [&, uD](const PAdicStepFunction& g) {
        return pair_tsplit(g, uD, uDp, true);
      };
      rhs_pair = [&, uD](const PAdicStepFunction& g) {
        return pair_tsplit(g, 1.0 / (q * uDp), 1.0 / (q * uD), true);
      };
      expected = 1.0 / (q * uD * uDp);
      break;
    }
    case OracleCase::t_nonsplit_unram:
    case OracleCase::t_nonsplit_ram: {
      bool ram = tag == OracleCase::t_nonsplit_ram;
      lhs_pair = [&, ram](const PAdicStepFunction& g) {
        return pair_tnonsplit(g, u, ram, kappa);
      };
      rhs_pair = [&, ram](const PAdicStepFunction& g) {
        return pair_tnonsplit(g, q / u, ram, kappa);
      };
      expected = ram ? cxd(q / (u * u))
                     : cxd((1.0 - 1.0 / (u * u)) / (1.0 - u * u / (q * q)));
      break;
    }
    case OracleCase::n_nonintegral: {
      lhs_pair = [&](const PAdicStepFunction& g) {
        return pair_nnonintegral(g, u);
      };
      rhs_pair = [&](const PAdicStepFunction& g) {
        return pair_nnonintegral(g, q / u);
      };
      expected = (1.0 - 1.0 / u) / (1.0 - u / q);
      break;
    }
  }

  int usable = 0;
  for (size_t k = 0; k < bat.fs.size(); ++k) {
    cxd lhs = lhs_pair(bat.ffs[k]);
    cxd rhs = rhs_pair(bat.fs[k]);
    if (std::abs(rhs) < 1e-7 && std::abs(lhs) < 1e-7) continue;
    if (std::abs(rhs) < 1e-12) {
      rep.max_rel_err = std::max(rep.max_rel_err, std::abs(lhs));
      continue;
    }
    cxd ratio = lhs / rhs;
    double err = std::abs(ratio - expected) /
                 std::max(1.0, std::abs(expected));
    rep.max_rel_err = std::max(rep.max_rel_err, err);
    ++usable;
  }
  rep.samples = usable;
  rep.pass = usable >= 6 && rep.max_rel_err < tol;
  if (!rep.pass && usable < 6) rep.detail = "insufficient usable test functions";
  return rep;
}

} // namespace sphericalis
