#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sphericalis/rational.hpp"
#include "sphericalis/tpoly.hpp"

namespace sphericalis {

using cxd = std::complex<double>;

// Locally constant compactly supported function on k or k^2 at a small
// prime: support in p^{-M} o^dim, constant on p^N o^dim cosets. Grid point
// index i stands for the coset  i / p^M + p^N o,  0 <= i < p^{M+N}.
class PAdicStepFunction {
 public:
  PAdicStepFunction(long long p, int dim, long long M, long long N);

  long long p() const { return p_; }
  int dim() const { return dim_; }
  long long M() const { return M_; }
  long long N() const { return N_; }
  long long grid() const { return P_; } // points per coordinate

  cxd at(long long i) const;                 // dim 1
  cxd at(long long i, long long j) const;    // dim 2
  void set(long long i, cxd v);
  void set(long long i, long long j, cxd v);

  // indicator of (a + p^j o), a = num/p^M with |num| < p^{M+N}; dim-1 box
  // or one factor of a dim-2 box.
  void add_box1(long long a_num, long long j, cxd coef = 1.0);
  void add_box2(long long ax_num, long long jx, long long ay_num, long long jy,
                cxd coef = 1.0);

  // valuation of the coset rep; reps in the zero coset report >= N via
  // `deep` = true.
  long long rep_valuation(long long i, bool& deep) const;
  long long unit_class_mod_p(long long i) const;

  double l2_norm_sq() const; // sum |f|^2 * coset volume

  static PAdicStepFunction fourier2(const PAdicStepFunction& f,
                                    long long grid_cap = 10000000);
  static PAdicStepFunction fourier1(const PAdicStepFunction& f);

 private:
  long long p_;
  int dim_;
  long long M_, N_, P_;
  std::vector<cxd> values_;
};

// Quadratic residue character on the units mod p (Legendre symbol); 0 on
// multiples of p.
int legendre(long long a, long long p);

// Multiplicative character data: chi = eta2^{quad} * (unramified with
// chi(pi) = u).
struct MultChar {
  QRat u{1};          // chi(uniformizer)
  bool quadratic = false;
};

// <f, chi d^x x> with vol(o^x, d^x x) = 1; exact rational (no psi enters).
// Requires |u| < 1 when f meets the zero coset.
QRat tate_pair_exact(const PAdicStepFunction& f, const MultChar& chi);

// Gauss sum tau(eta) for eta = eta2 |.|^{s} of conductor p (numeric).
cxd gauss_sum_quadratic(long long p, const QRat& u);

struct TateReport {
  int samples = 0;
  double max_rel_err = 0.0;
  bool pass = false;
};

// Checks <f-hat, chi^{-1}|.| d^x> = gamma(chi) <f, chi d^x> on a battery of
// boxes, unramified and quadratic-ramified characters.
TateReport tate_verify(long long p, double tol = 1e-9);

// integral over o^x of eta2(kappa + x^2), kappa a unit with -kappa a
// non-square; exact.
QRat gauss_circle(long long p, long long kappa);

enum class OracleCase {
  u_lower,
  u_raise,
  u_psi,
  t_split_unram,
  t_split_ram,
  t_nonsplit_unram,
  t_nonsplit_ram,
  n_nonintegral,
};

OracleCase oracle_case_parse(const std::string& s);
std::string oracle_case_name(OracleCase c);

// Exact pairing of the T-nonsplit / N-nonintegral shell measures against a
// step function, as a rational function of u = q^{-s/2} (so q^{-s} = u^2).
// eta2_ramified selects the quadratic character.
TRat dist_pair_u_exact(OracleCase tag, long long p, bool eta2_ramified,
                       long long kappa, const PAdicStepFunction& f);

struct OracleReport {
  std::string case_name;
  long long p = 0;
  int samples = 0;
  double max_rel_err = 0.0;
  bool pass = false;
  std::string detail;
};

// Verifies <Delta_chi, F f> = b(chi) <Delta_{w chi}, f> over a battery of
// box indicators, b from the closed forms of the functional equations.
OracleReport verify_case(OracleCase tag, long long p, const QRat& u,
                         double tol = 1e-9);

} // namespace sphericalis
