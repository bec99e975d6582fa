#pragma once

#include <optional>
#include <vector>

#include "sphericalis/torus.hpp"

namespace sphericalis {

// Linear inequality  a . x >= b  over the rationals.
struct LinIneq {
  std::vector<QRat> a;
  QRat b;
};

// Fourier-Motzkin feasibility: returns a point satisfying every inequality,
// or nothing. Exact rational arithmetic; intended for the tiny systems that
// arise from cone checks (rank <= 4, a handful of constraints).
std::optional<std::vector<QRat>> fm_solve(std::vector<LinIneq> sys, size_t nvars);

// Is `candidate` a nonnegative rational combination of `gens`?
bool cone_member(const std::vector<Key>& gens, const Key& candidate);

// Strict convexity: no nonzero opposite pair, i.e. some functional is >= 1
// on every generator.
bool cone_pointed(const std::vector<Key>& gens);

// Searches for ell = sum c_i gamma_i, c_i >= 0, with <theta, ell> >= 1 for
// every theta (pairings in doubled coordinates: <theta,gamma> = dot/2).
// `roots` are weight vectors (true coordinates), thetas doubled coweights.
std::optional<std::vector<QRat>> separation_lp(
    const std::vector<std::vector<long long>>& roots,
    const std::vector<Key>& thetas);

} // namespace sphericalis
