#include "sphericalis/constant_term.hpp"

#include <algorithm>

#include "sphericalis/cones.hpp"
#include "sphericalis/errors.hpp"

namespace sphericalis {

namespace {

QRat ell_pairing(const Key& k, const std::vector<QRat>& ell) {
  QRat s(0);
  for (size_t i = 0; i < k.size(); ++i) s += QRat((long)k[i]) * ell[i];
  return s;
}

} // namespace

TPoly ct_exact(const TorusLaurent& numerator, const std::vector<CTFactor>& dens,
               const std::vector<QRat>& ell) {
  size_t rank = numerator.rank();
  for (auto& f : dens) {
    if (f.theta.size() != rank)
      throw dimension_error("ct_exact: factor rank mismatch");
    if (ell_pairing(f.theta, ell) < QRat(1))
      throw not_pointed_error("ct_exact: cone certificate fails on a factor");
  }
  if (dens.empty()) {
    return numerator.coeff(Key(rank, 0));
  }

  // Bound: any product of factor expansions contributing to exponent 0 from
  // a numerator exponent u satisfies sum k_j <= sum k_j <theta_j, ell>
  // = <-u, ell>. Expand factor by factor, pruning keys whose ell-value
  // already exceeds the global budget.
  QRat budget(0);
  for (auto& [k, c] : numerator.terms()) {
    QRat b = -ell_pairing(k, ell);
    if (b > budget) budget = b;
  }
  if (budget < QRat(0)) budget = QRat(0);

  std::map<Key, TPoly, GradedLexLess> acc;
  for (auto& [k, c] : numerator.terms()) acc[k] = c;

  for (auto& f : dens) {
    std::map<Key, TPoly, GradedLexLess> next;
    for (auto& [k, c] : acc) {
      // add k + m*theta for m = 0,1,... while the ell-value can still return
      // to zero within budget
      Key cur = k;
      long long m = 0;
      while (true) {
        QRat v = ell_pairing(cur, ell);
        if (v > budget) break;
        QRat sg = (f.sigma < 0 && (m % 2 == 1)) ? QRat(-1) : QRat(1);
        TPoly contrib = c * TPoly::t_power(f.r2 * m, sg);
        auto it = next.find(cur);
        if (it == next.end())
          next.emplace(cur, contrib);
        else {
          it->second += contrib;
          if (it->second.is_zero()) next.erase(it);
        }
        cur = key_add(cur, f.theta);
        ++m;
      }
    }
    acc.swap(next);
  }

  auto it = acc.find(Key(rank, 0));
  return it == acc.end() ? TPoly() : it->second;
}

std::optional<std::vector<QRat>> pointing_functional(const std::vector<Key>& gens) {
  if (gens.empty()) return std::vector<QRat>{};
  size_t n = gens[0].size();
  std::vector<LinIneq> sys;
  for (auto& g : gens) {
    LinIneq iq;
    iq.a.resize(n);
    for (size_t i = 0; i < n; ++i) iq.a[i] = QRat((long)g[i]);
    iq.b = QRat(1);
    sys.push_back(iq);
  }
  return fm_solve(sys, n);
}

TPoly ct_series(const TorusLaurent& numerator, const std::vector<CTFactor>& dens,
                const TRat& scalar, long long order) {
  size_t rank = numerator.rank();
  for (auto& f : dens) {
    if (f.r2 < 1) throw not_t_adic_error("ct_series: factor with r2 = 0");
    if (f.theta.size() != rank)
      throw dimension_error("ct_series: factor rank mismatch");
  }

  // Internal truncation absorbs negative t-powers in the numerator and the
  // scalar prefactor.
  long long slack = 0;
  for (auto& [k, c] : numerator.terms())
    slack = std::max(slack, c.min_exp() < 0 ? -c.min_exp() : 0);
  long long smin = scalar.num().is_zero() ? 0 : scalar.num().min_exp();
  long long dmin = scalar.den().min_exp();
  long long sshift = smin - dmin; // t-adic valuation shift of the scalar
  if (sshift < 0) slack += -sshift;
  long long cutoff = order + slack;

  std::map<Key, TPoly, GradedLexLess> acc;
  for (auto& [k, c] : numerator.terms()) acc[k] = c.truncated(cutoff);

  for (auto& f : dens) {
    std::map<Key, TPoly, GradedLexLess> next;
    for (auto& [k, c] : acc) {
      long long cmin = c.min_exp();
      Key cur = k;
      for (long long m = 0; cmin + f.r2 * m <= cutoff; ++m) {
        QRat sg = (f.sigma < 0 && (m % 2 == 1)) ? QRat(-1) : QRat(1);
        TPoly contrib = (c * TPoly::t_power(f.r2 * m, sg)).truncated(cutoff);
        if (!contrib.is_zero()) {
          auto it = next.find(cur);
          if (it == next.end())
            next.emplace(cur, contrib);
          else {
            it->second += contrib;
            if (it->second.is_zero()) next.erase(it);
          }
        }
        cur = key_add(cur, f.theta);
      }
    }
    acc.swap(next);
  }

  auto it = acc.find(Key(rank, 0));
  TPoly ct = it == acc.end() ? TPoly() : it->second;
  if (scalar.is_polynomial() && scalar.num().is_one()) return ct.truncated(order);
  TPoly inv = scalar.den().series_inverse(cutoff + (sshift < 0 ? -sshift : 0) + 1);
  return (ct * scalar.num() * inv).truncated(order);
}

} // namespace sphericalis
