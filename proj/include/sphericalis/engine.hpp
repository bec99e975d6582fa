#pragma once

#include <vector>

#include "sphericalis/constant_term.hpp"
#include "sphericalis/spherical_data.hpp"

namespace sphericalis {

enum class OmegaForm { sum, schur };

// Eigenfunction value at the orbit x_lambda. For form = sum the value is the
// full Omega (a torus rational function); for form = schur it is Omega/beta,
// a pure Laurent polynomial times a t-power (folded into the coefficients).
struct OmegaValue {
  Key lambda2;
  TorusRational value;
  OmegaForm form = OmegaForm::sum;
};

// beta = prod_{pos coroots of Phi_X} (1 - e^gamma) /
//        prod_{Theta+} (1 - sigma t^{r2} e^theta)
TorusRational beta(const SphericalDatum& d);

// Closed form of B_{w_gamma} for a simple spherical reflection, assembled
// from the flipped virtual weighted colors (the per-type displayed shapes).
TorusRational bw_statement(RootKind kind, const Key& cogamma2,
                           const std::vector<ThetaTriple>& belonging,
                           size_t rank);

// B_w = beta / (beta o w); for simple reflections the result is checked
// against bw_statement (consistency_error on mismatch).
TorusRational bw(const SphericalDatum& d, const WeylElement& w);

// t-power prefactor q^{<lambda, rho_{P(X)}>} common to both Omega forms.
TPoly omega_prefactor(const SphericalDatum& d, const Key& lambda2);

bool is_x_antidominant(const SphericalDatum& d, const Key& lambda2);

OmegaValue omega_sum(const SphericalDatum& d, const Key& lambda2);
OmegaValue omega_schur(const SphericalDatum& d, const Key& lambda2,
                       size_t theta_cap = 20);

// Value of Omega at the delta_{P(X)}^{1/2}-point, computed on the pole-free
// schur form (multiplies beta back in).
TRat omega_at_delta_point(const SphericalDatum& d, const OmegaValue& schur_form);

// c = beta(delta_{P(X)}^{1/2})^{-1}; affine non-twisted data only.
TRat constant_c(const SphericalDatum& d);

// P_lambda = Omega(x_lambda) / L_X^{1/2} = omega_schur / c; W_X-invariant,
// P_0 = 1. Torus-free denominator.
TorusRational p_poly(const SphericalDatum& d, const Key& lambda2);

TorusRational lhalf(const SphericalDatum& d);
TorusRational lfull(const SphericalDatum& d);

struct LFactor {
  int sigma = +1;
  long long r2 = 0;   // t-power inside the factor (0 for numerator factors)
  Key theta;
  int exponent = +1;  // +1 numerator factor (1 - e), -1 denominator factor
  bool operator<(const LFactor& o) const {
    if (exponent != o.exponent) return exponent < o.exponent;
    if (sigma != o.sigma) return sigma < o.sigma;
    if (r2 != o.r2) return r2 < o.r2;
    return GradedLexLess{}(theta, o.theta);
  }
  bool operator==(const LFactor& o) const {
    return sigma == o.sigma && r2 == o.r2 && theta == o.theta &&
           exponent == o.exponent;
  }
};

struct LFactorization {
  std::vector<LFactor> factors; // sorted multiset
  TRat constant;                // c^2
  // Re-expand to the rational function it factors.
  TorusRational expand(size_t rank) const;
  // Drop factors with theta = 0 (the "up to zeta-factors" comparison).
  LFactorization without_zeta() const;
};

LFactorization lfactors(const SphericalDatum& d);

// Q = prod_{ambient positive coroots} (1-q^{-1-<a,rho>})/(1-q^{-<a,rho>}).
TRat q_factor(const std::vector<long long>& rho_pairings);

TRat volume(const SphericalDatum& d);
TRat tamagawa_volume(const SphericalDatum& d);

struct PlancherelResult {
  bool exact = false;
  TRat exact_value;  // set when exact
  TPoly series;      // always set (exact value expanded when exact)
};

// Constant term of P_lambda(chi) P_mu(chi^{-1}) L_X(chi). Exact (pointed
// cone route) when mu = 0, t-adic series to order prec otherwise.
PlancherelResult plancherel_pairing(const SphericalDatum& d, const Key& lambda2,
                                    const Key& mu2, long long prec);

struct EisensteinFactors {
  TorusRational j_w;
  TorusRational j_tilde_w;
  TorusRational fw_tw_ratio;
};

EisensteinFactors eisenstein_factors(const RootSystem& ambient,
                                     const WeylElement& w);

} // namespace sphericalis
