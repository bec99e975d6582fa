#include "sphericalis/engine.hpp"

#include <algorithm>

#include "sphericalis/errors.hpp"

namespace sphericalis {

TorusRational beta(const SphericalDatum& d) {
  TorusLaurent num = TorusLaurent::one(d.rank);
  for (auto& r : d.phi_x().positive_roots())
    num = num * TorusLaurent::one_minus(r.coroot_key(), TPoly(QRat(1)));
  TorusLaurent den = TorusLaurent::one(d.rank);
  for (auto& t : d.theta_plus)
    den = den * TorusLaurent::one_minus(t.theta, TPoly::t_power(t.r2, QRat(t.sigma)));
  return TorusRational(num, den);
}

TorusRational bw_statement(RootKind kind, const Key& cogamma2,
                           const std::vector<ThetaTriple>& belonging,
                           size_t rank) {
  auto factor_pair = [rank](const ThetaTriple& t) {
    // (1 - sigma t^{r2} e^{-theta}) over (1 - sigma t^{r2} e^{theta})
    TorusLaurent n =
        TorusLaurent::one_minus(key_neg(t.theta), TPoly::t_power(t.r2, QRat(t.sigma)));
    TorusLaurent dd =
        TorusLaurent::one_minus(t.theta, TPoly::t_power(t.r2, QRat(t.sigma)));
    return std::make_pair(n, dd);
  };
  switch (kind) {
    case RootKind::UPsi: {
      if (!belonging.empty())
        throw error("bw_statement: (U,psi) root with belonging colors");
      return TorusRational(
          TorusLaurent::monomial(cogamma2, TPoly(QRat(-1))));
    }
    case RootKind::G: {
      if (belonging.size() != 1 || belonging[0].sigma != +1 ||
          belonging[0].theta != cogamma2)
        throw error("bw_statement: type G expects one triple (cogamma,+,r)");
      auto [n, dd] = factor_pair(belonging[0]);
      return TorusRational(n.mul_monomial(cogamma2, TPoly(QRat(-1))), dd);
    }
    case RootKind::TSplit:
    case RootKind::TNonSplit: {
      if (belonging.size() != 2)
        throw error("bw_statement: type T expects two triples");
      if (kind == RootKind::TSplit) {
        if (belonging[0].sigma != +1 || belonging[1].sigma != +1)
          throw error("bw_statement: T-split expects signs +,+");
      } else {
        int s = belonging[0].sigma + belonging[1].sigma;
        if (s != 0 || belonging[0].theta != belonging[1].theta)
          throw error(
              "bw_statement: T-nonsplit expects (theta,+,r),(theta,-,r')");
      }
      auto [n0, d0] = factor_pair(belonging[0]);
      auto [n1, d1] = factor_pair(belonging[1]);
      TorusLaurent num = n0 * n1;
      TorusLaurent den = d0 * d1;
      return TorusRational(num.mul_monomial(cogamma2, TPoly(QRat(-1))), den);
    }
  }
  throw error("bw_statement: bad kind");
}

TorusRational bw(const SphericalDatum& d, const WeylElement& w) {
  TorusRational b = beta(d);
  // e^{mu}(^w chi) = e^{w^{-1} mu}(chi)
  TorusRational bw_val = b / b.apply_matrix(w.inverse);
  if (w.length() == 1) {
    size_t g = (size_t)w.word[0];
    auto flipped = theta_flipped_by(d, g);
    TorusRational stmt = bw_statement(d.spherical_roots[g].kind,
                                      d.spherical_roots[g].cogamma, flipped,
                                      d.rank);
    if (!(bw_val == stmt))
      throw consistency_error("bw: beta-quotient disagrees with the statement "
                              "form for root " + std::to_string(g + 1));
  }
  return bw_val;
}

TPoly omega_prefactor(const SphericalDatum& d, const Key& lambda2) {
  long long dot = key_dot(lambda2, d.rho_pX);
  if (dot % 2 != 0) throw error("omega: non-integral prefactor t-power");
  // q^{<lambda, rho_PX>} = t^{-dot/2}
  return TPoly::t_power(-dot / 2);
}

bool is_x_antidominant(const SphericalDatum& d, const Key& lambda2) {
  for (auto& r : d.spherical_roots)
    if (key_dot(lambda2, r.gamma) > 0) return false;
  return true;
}

OmegaValue omega_sum(const SphericalDatum& d, const Key& lambda2) {
  if (lambda2.size() != d.rank) throw dimension_error("omega_sum: bad lambda");
  if (!is_x_antidominant(d, lambda2))
    throw error("omega_sum: lambda not X-antidominant");
  TorusRational b = beta(d);
  const TorusLaurent& bnum = b.num();
  const TorusLaurent& bden = b.den();

  // Omega = pre * sum_w B_w e^{w^{-1} lambda}
  //       = pre * [ sum_w u_w^{-1} (bden o w) e^{w^{-1} lambda} ] * bnum/bden
  // where bnum o w = u_w * bnum for a signed monomial u_w.
  TorusLaurent acc(d.rank);
  for (auto& w : d.phi_x().weyl_group()) {
    TorusLaurent bnum_w = bnum.apply_matrix(w.inverse);
    TorusLaurent unit = exact_divide(bnum_w, bnum);
    auto mono = unit.as_monomial();
    if (!mono) throw error("omega_sum: internal unit not a monomial");
    // 1/u_w
    Key ik = key_neg(mono->first);
    TPoly ic;
    {
      auto& c = mono->second;
      if (c.coeffs().size() != 1) throw error("omega_sum: unit coefficient");
      long long e = c.coeffs().begin()->first;
      QRat q = c.coeffs().begin()->second;
      ic = TPoly::t_power(-e, QRat(1) / q);
    }
    TorusLaurent term = bden.apply_matrix(w.inverse);
    term = term.mul_monomial(key_add(ik, w.inverse.apply(lambda2)), ic);
    acc += term;
  }
  TorusRational value(acc.scale(omega_prefactor(d, lambda2)), bden);
  return OmegaValue{lambda2, value, OmegaForm::sum};
}

OmegaValue omega_schur(const SphericalDatum& d, const Key& lambda2,
                       size_t theta_cap) {
  if (lambda2.size() != d.rank) throw dimension_error("omega_schur: bad lambda");
  if (!is_x_antidominant(d, lambda2))
    throw error("omega_schur: lambda not X-antidominant");
  if (d.theta_plus.size() > theta_cap)
    throw error("omega_schur: |Theta+| exceeds cap; use omega_sum");
  const RootSystem& rs = d.phi_x();
  size_t m = d.theta_plus.size();
  TorusLaurent acc(d.rank);
  for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
    Key shift(d.rank, 0);
    TPoly coef(QRat(1));
    for (size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1)) continue;
      shift = key_add(shift, d.theta_plus[i].theta);
      coef = coef * TPoly::t_power(d.theta_plus[i].r2, QRat(-d.theta_plus[i].sigma));
    }
    TorusLaurent s = rs.schur_lowest(key_add(lambda2, shift));
    acc += s.scale(coef);
  }
  TorusRational value(acc.scale(omega_prefactor(d, lambda2)));
  return OmegaValue{lambda2, value, OmegaForm::schur};
}

TRat omega_at_delta_point(const SphericalDatum& d, const OmegaValue& sf) {
  if (sf.form != OmegaForm::schur)
    throw error("omega_at_delta_point: expects the schur form");
  TorusRational b = beta(d);
  TRat bval = b.eval_t_point(d.rho_pX);
  TRat fval = sf.value.eval_t_point(d.rho_pX);
  return bval * fval;
}

TRat constant_c(const SphericalDatum& d) {
  if (d.twisted) throw error("constant_c: undefined for twisted data");
  if (!d.affine) throw error("constant_c: datum not affine");
  TorusRational b = beta(d);
  TPoly num = b.num().eval_t_point(d.rho_pX);
  TPoly den = b.den().eval_t_point(d.rho_pX);
  if (num.is_zero())
    throw pole_error("constant_c: beta vanishes at the delta point");
  return TRat(den, num);
}

TorusRational p_poly(const SphericalDatum& d, const Key& lambda2) {
  TRat c = constant_c(d);
  OmegaValue sf = omega_schur(d, lambda2);
  // P = c^{-1} * (Omega/beta); scalar denominator only.
  return TorusRational(sf.value.num().scale(c.den()),
                       sf.value.den().scale(c.num()));
}

TorusRational lhalf(const SphericalDatum& d) {
  TRat c = constant_c(d);
  TorusRational b = beta(d);
  return TorusRational(b.num().scale(c.num()), b.den().scale(c.den()));
}

TorusRational lfull(const SphericalDatum& d) {
  TorusRational h = lhalf(d);
  return h * h.invert_torus();
}

TorusRational LFactorization::expand(size_t rank) const {
  TorusLaurent num = TorusLaurent::one(rank);
  TorusLaurent den = TorusLaurent::one(rank);
  for (auto& f : factors) {
    TorusLaurent fac =
        TorusLaurent::one_minus(f.theta, TPoly::t_power(f.r2, QRat(f.sigma)));
    if (f.exponent > 0)
      num = num * fac;
    else
      den = den * fac;
  }
  return TorusRational(num.scale(constant.num()), den.scale(constant.den()));
}

LFactorization LFactorization::without_zeta() const {
  LFactorization r;
  r.constant = constant;
  for (auto& f : factors) {
    bool zero = true;
    for (auto x : f.theta)
      if (x) zero = false;
    if (!zero) r.factors.push_back(f);
  }
  return r;
}

LFactorization lfactors(const SphericalDatum& d) {
  LFactorization r;
  TRat c = constant_c(d);
  r.constant = c * c;
  for (auto& rt : d.phi_x().positive_roots()) {
    r.factors.push_back({+1, 0, rt.coroot_key(), +1});
    r.factors.push_back({+1, 0, key_neg(rt.coroot_key()), +1});
  }
  for (auto& t : d.theta_full())
    r.factors.push_back({t.sigma, t.r2, t.theta, -1});
  std::sort(r.factors.begin(), r.factors.end());
  return r;
}

TRat q_factor(const std::vector<long long>& rho_pairings) {
  TPoly num(QRat(1)), den(QRat(1));
  for (auto h : rho_pairings) {
    num = num * TPoly::one_minus(2 * h + 2, QRat(1));
    den = den * TPoly::one_minus(2 * h, QRat(1));
  }
  return TRat(num, den);
}

TRat volume(const SphericalDatum& d) {
  TRat q = q_factor(d.ambient.rho_pairings);
  return q / constant_c(d);
}

TRat tamagawa_volume(const SphericalDatum& d) {
  TRat v = volume(d);
  TPoly f(QRat(1));
  for (size_t i = 0; i < d.rank; ++i) f = f * TPoly::one_minus(2, QRat(1));
  return TRat(f) * v;
}

PlancherelResult plancherel_pairing(const SphericalDatum& d, const Key& lambda2,
                                    const Key& mu2, long long prec) {
  if (!d.affine || d.twisted)
    throw error("plancherel_pairing: needs an affine non-twisted datum");
  bool mu_zero = true;
  for (auto x : mu2)
    if (x) mu_zero = false;

  PlancherelResult res;
  TRat c = constant_c(d);
  if (mu_zero) {
    // Exact pointed-cone route:
    //   P_lambda L_X = c sum_w [prod_{neg coroots}(1-e^g) /
    //                           prod_{Theta-}(1-sigma t^{r2} e^th)](^w chi)
    //                  e^lambda(^w chi)
    TPoly total;
    for (auto& w : d.phi_x().weyl_group()) {
      std::vector<CTFactor> dens;
      std::vector<Key> keys;
      for (auto& t : d.theta_plus) {
        CTFactor f;
        f.sigma = t.sigma;
        f.r2 = t.r2;
        f.theta = w.inverse.apply(key_neg(t.theta));
        dens.push_back(f);
        keys.push_back(f.theta);
      }
      std::optional<std::vector<QRat>> ell = pointing_functional(keys);
      if (!ell)
        throw not_pointed_error("plancherel_pairing: twisted Theta- not pointed");
      TorusLaurent num = TorusLaurent::one(d.rank);
      for (auto& rt : d.phi_x().positive_roots())
        num = num * TorusLaurent::one_minus(
                        w.inverse.apply(key_neg(rt.coroot_key())), TPoly(QRat(1)));
      num = num.mul_monomial(w.inverse.apply(lambda2), TPoly(QRat(1)));
      total += ct_exact(num, dens, *ell);
    }
    res.exact = true;
    res.exact_value = c * TRat(total);
    res.series = res.exact_value.series(prec);
    return res;
  }

  // Series route: CT[ P_lambda(chi) P_mu(chi^{-1}) L_X(chi) ] as a t-series.
  // The scalar c-powers cancel: P P~ L_X = (Om/b)(Om/b)~ bb~ with the root
  // and Theta factors written out below.
  OmegaValue sl = omega_schur(d, lambda2);
  OmegaValue sm = omega_schur(d, mu2);
  TorusLaurent f = sl.value.num() * sm.value.num().invert_torus();
  for (auto& rt : d.phi_x().positive_roots()) {
    f = f * TorusLaurent::one_minus(rt.coroot_key(), TPoly(QRat(1)));
    f = f * TorusLaurent::one_minus(key_neg(rt.coroot_key()), TPoly(QRat(1)));
  }
  std::vector<CTFactor> dens;
  for (auto& t : d.theta_full()) dens.push_back({t.sigma, t.r2, t.theta});
  res.exact = false;
  res.series = ct_series(f, dens, TRat(TPoly(QRat(1))), prec);
  return res;
}

EisensteinFactors eisenstein_factors(const RootSystem& ambient,
                                     const WeylElement& w) {
  size_t rank = ambient.rank();
  TorusLaurent jn = TorusLaurent::one(rank), jd = TorusLaurent::one(rank);
  TorusLaurent tn = TorusLaurent::one(rank), td = TorusLaurent::one(rank);
  TorusLaurent rn = TorusLaurent::one(rank), rd = TorusLaurent::one(rank);
  for (auto& r : ambient.positive_roots()) {
    Key k = r.coroot_key();
    Key wk = w.matrix.apply(k);
    // negativity: -wk is a positive coroot key
    bool flipped = false;
    for (auto& rr : ambient.positive_roots())
      if (rr.coroot_key() == key_neg(wk)) flipped = true;
    if (flipped) {
      jn = jn * TorusLaurent::one_minus(k, TPoly::t_power(2));
      jd = jd * TorusLaurent::one_minus(k, TPoly(QRat(1)));
      rn = rn * TorusLaurent::one_minus(k, TPoly(QRat(1)));
      rd = rd * TorusLaurent::one_minus(key_neg(k), TPoly::t_power(2));
    } else {
      tn = tn * TorusLaurent::one_minus(k, TPoly::t_power(2));
      td = td * TorusLaurent::one_minus(k, TPoly(QRat(1)));
    }
  }
  EisensteinFactors out;
  out.j_w = TorusRational(jn, jd);
  out.j_tilde_w = TorusRational(tn, td);
  out.fw_tw_ratio = TorusRational(rn, rd);
  return out;
}

} // namespace sphericalis
