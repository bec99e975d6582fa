#include "sphericalis/cones.hpp"

#include <algorithm>

#include "sphericalis/errors.hpp"

namespace sphericalis {

namespace {

// Eliminate variable `v` from the system, returning the projected system.
std::vector<LinIneq> fm_eliminate(const std::vector<LinIneq>& sys, size_t v) {
  std::vector<const LinIneq*> pos, neg, zero;
  for (auto& iq : sys) {
    int s = iq.a[v].sign();
    if (s > 0)
      pos.push_back(&iq);
    else if (s < 0)
      neg.push_back(&iq);
    else
      zero.push_back(&iq);
  }
  std::vector<LinIneq> out;
  for (auto* z : zero) out.push_back(*z);
  // a.x >= b with a_v > 0 gives x_v >= (b - a'.x')/a_v (lower bound);
  // a_v < 0 gives an upper bound. Pair each lower with each upper.
  for (auto* p : pos)
    for (auto* q : neg) {
      LinIneq iq;
      iq.a.resize(p->a.size());
      QRat cp = p->a[v], cq = -(q->a[v]);
      for (size_t i = 0; i < iq.a.size(); ++i)
        iq.a[i] = p->a[i] * cq + q->a[i] * cp;
      iq.a[v] = QRat(0);
      iq.b = p->b * cq + q->b * cp;
      out.push_back(iq);
    }
  return out;
}

} // namespace

std::optional<std::vector<QRat>> fm_solve(std::vector<LinIneq> sys, size_t nvars) {
  std::vector<std::vector<LinIneq>> stages;
  stages.push_back(sys);
  for (size_t v = nvars; v-- > 0;) {
    sys = fm_eliminate(sys, v);
    stages.push_back(sys);
  }
  // The fully eliminated system has constant constraints 0 >= b.
  for (auto& iq : stages.back())
    if (QRat(0) < iq.b) return std::nullopt;
  // Back-substitute, choosing a feasible value for each variable in turn.
  std::vector<QRat> x(nvars, QRat(0));
  for (size_t v = 0; v < nvars; ++v) {
    // stages[nvars - 1 - v] still contains variable v (vars v.. eliminated
    // in later stages).
    const auto& cur = stages[nvars - 1 - v];
    bool has_lo = false, has_hi = false;
    QRat lo(0), hi(0);
    for (auto& iq : cur) {
      if (iq.a[v].is_zero()) continue;
      QRat rest = iq.b;
      for (size_t i = 0; i < v; ++i) rest -= iq.a[i] * x[i];
      // variables > v have been eliminated in this stage: coefficients zero
      QRat bound = rest / iq.a[v];
      if (iq.a[v].sign() > 0) {
        if (!has_lo || bound > lo) lo = bound, has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound, has_hi = true;
      }
    }
    if (has_lo && has_hi)
      x[v] = (lo + hi) * QRat(1, 2);
    else if (has_lo)
      x[v] = lo;
    else if (has_hi)
      x[v] = hi;
    else
      x[v] = QRat(0);
  }
  return x;
}

bool cone_member(const std::vector<Key>& gens, const Key& candidate) {
  size_t n = candidate.size();
  bool zero = true;
  for (auto x : candidate)
    if (x) zero = false;
  if (zero) return true;
  if (gens.empty()) return false;
  size_t m = gens.size();
  // variables c_0..c_{m-1} >= 0, equalities sum c_i g_i = v as two-sided
  // inequalities.
  std::vector<LinIneq> sys;
  for (size_t j = 0; j < m; ++j) {
    LinIneq iq;
    iq.a.assign(m, QRat(0));
    iq.a[j] = QRat(1);
    iq.b = QRat(0);
    sys.push_back(iq);
  }
  for (size_t i = 0; i < n; ++i) {
    LinIneq lo, hi;
    lo.a.resize(m);
    hi.a.resize(m);
    for (size_t j = 0; j < m; ++j) {
      lo.a[j] = QRat((long)gens[j][i]);
      hi.a[j] = QRat((long)-gens[j][i]);
    }
    lo.b = QRat((long)candidate[i]);
    hi.b = QRat((long)-candidate[i]);
    sys.push_back(lo);
    sys.push_back(hi);
  }
  return fm_solve(sys, m).has_value();
}

bool cone_pointed(const std::vector<Key>& gens) {
  for (auto& g : gens) {
    bool zero = true;
    for (auto x : g)
      if (x) zero = false;
    if (zero) return false;
  }
  if (gens.empty()) return true;
  size_t n = gens[0].size();
  std::vector<LinIneq> sys;
  for (auto& g : gens) {
    LinIneq iq;
    iq.a.resize(n);
    for (size_t i = 0; i < n; ++i) iq.a[i] = QRat((long)g[i]);
    iq.b = QRat(1);
    sys.push_back(iq);
  }
  return fm_solve(sys, n).has_value();
}

std::optional<std::vector<QRat>> separation_lp(
    const std::vector<std::vector<long long>>& roots,
    const std::vector<Key>& thetas) {
  size_t m = roots.size();
  std::vector<LinIneq> sys;
  for (size_t j = 0; j < m; ++j) {
    LinIneq iq;
    iq.a.assign(m, QRat(0));
    iq.a[j] = QRat(1);
    iq.b = QRat(0);
    sys.push_back(iq);
  }
  for (auto& th : thetas) {
    LinIneq iq;
    iq.a.resize(m);
    for (size_t j = 0; j < m; ++j)
      iq.a[j] = QRat((long)key_dot(th, roots[j]), 2);
    iq.b = QRat(1);
    sys.push_back(iq);
  }
  return fm_solve(sys, m);
}

} // namespace sphericalis
