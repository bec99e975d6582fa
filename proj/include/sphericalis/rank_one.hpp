#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphericalis/root_system.hpp"
#include "sphericalis/spherical_data.hpp"

namespace sphericalis {

enum class FeTag {
  u_raise,
  u_lower,
  u_psi,
  t_split_unram,
  t_split_ram,
  t_nonsplit_unram,
  t_nonsplit_ram,
  n_split_int_unram,
  n_split_int_ram,
  n_nonsplit_int_unram,
  n_nonsplit_int_ram,
  n_nonintegral,
};

std::string fe_tag_name(FeTag t);
FeTag fe_tag_parse(const std::string& s);

// Parameters of one rank-one functional equation. alpha_index selects the
// ambient simple root; case T split carries the color coweights and the
// doubled shift exponents <v_D, log_q(delta^{1/2} delta_{(U)xi}^{-1})>;
// ramified cases carry the conductor; case N carries the discriminant-ratio
// character value.
struct FeCase {
  FeTag tag = FeTag::u_lower;
  size_t alpha_index = 0;
  Key v_d, v_dp;             // T split: doubled coweight keys
  long long shift_d2 = 0;    // 2 * shift exponent for v_D
  long long shift_dp2 = 0;   // 2 * shift exponent for v_D'
  long long conductor = 1;   // ramified cases
  QRat disc_ratio{1};        // case N: chi(D(zeta)/D(zeta_0)) value
};

// The exact displayed coefficient, in ambient torus variables and t. For
// n_nonintegral the lattice is extended by one axis for the half-power
// symbol u (u^2 = e^{-alpha-check}); see identify_u_square.
TorusRational fe_coefficient(const RootSystem& ambient, const FeCase& fe,
                             bool extend_u = false);

// Fold even powers of the u-axis (last coordinate) back into the base
// lattice via u^2 = e^{half2} t^{tshift}.
TorusLaurent identify_u_square(const TorusLaurent& f, const Key& half2,
                               long long tshift);

struct OrbitStep {
  size_t root_index = 0;
  FeCase fe;
};

// Declarative Brion/Knop path. Steps are the letters of the reduced word
// read left to right: w = s_{i_1} s_{i_2} ... s_{i_m}.
struct OrbitPath {
  std::shared_ptr<RootSystem> ambient;
  std::vector<OrbitStep> steps;
  // Optional restriction to an X-lattice: key |-> restriction * key, with a
  // t-shift of dot(shift2, key)/2 (the delta_{(X)}^{1/2} twist).
  std::vector<std::vector<long long>> restriction; // x_rank rows, amb_rank cols
  std::vector<long long> shift2;
  // pairs of consecutive U-steps to check e^{-a} = q^{-1} e^{-w_a b} on the
  // X-subtorus: (upper edge index in steps, lower edge index)
  std::vector<std::pair<size_t, size_t>> induction_checks;

  std::vector<int> word() const {
    std::vector<int> w;
    for (auto& s : steps) w.push_back((int)s.root_index);
    return w;
  }
};

OrbitPath parse_path(const std::string& json_text);

// Cocycle product b_w(chi) = prod_k fe_k(^{v_k} chi), v_k the product of the
// letters to the right of position k. Requires the word to be reduced.
TorusRational compose_path(const OrbitPath& path);

// `b_w = prod_{eps > 0, w eps < 0} (-e^{eps}) * b_w.
TorusRational backtick_b(const OrbitPath& path);

// Restrict an ambient torus rational to the X-lattice with the path's
// restriction matrix and delta-shift.
TorusRational restrict_to_x(const OrbitPath& path, const TorusRational& f);

// e^{-alpha} = q^{-1} e^{-w_alpha beta} after restriction; returns a failure
// message or nothing.
std::optional<std::string> check_induction_step(const OrbitPath& path,
                                                size_t upper, size_t lower);

} // namespace sphericalis
