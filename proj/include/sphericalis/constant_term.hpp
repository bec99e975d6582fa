#pragma once

#include <vector>

#include "sphericalis/torus.hpp"

namespace sphericalis {

// One denominator factor 1/(1 - sigma t^{r2} e^{theta}).
struct CTFactor {
  int sigma = +1;       // +1 or -1
  long long r2 = 1;     // t-exponent, = 2r
  Key theta;            // doubled exponent key
};

// Exact constant term of numerator / prod (1 - sigma t^{r2} e^{theta}) when
// all theta lie in a common pointed cone, certified by ell with
// <theta, ell> >= 1 for every factor (pairing in doubled coordinates).
// Throws not_pointed_error if the certificate fails.
TPoly ct_exact(const TorusLaurent& numerator, const std::vector<CTFactor>& dens,
               const std::vector<QRat>& ell);

// Find ell with <g, ell> >= 1 for all generators (doubled keys); empty
// optional when the cone is not pointed.
std::optional<std::vector<QRat>> pointing_functional(const std::vector<Key>& gens);

// Constant term in the torus variables of the t-adic expansion of
// numerator * scalar / prod(1 - sigma t^{r2} e^{theta}), truncated after
// t^order. Every factor needs r2 >= 1 (else not_t_adic_error).
TPoly ct_series(const TorusLaurent& numerator, const std::vector<CTFactor>& dens,
                const TRat& scalar, long long order);

} // namespace sphericalis
