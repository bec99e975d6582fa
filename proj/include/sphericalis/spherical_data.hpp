#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sphericalis/cones.hpp"
#include "sphericalis/root_system.hpp"

namespace sphericalis {

enum class RootKind { G, TSplit, TNonSplit, UPsi };

std::string root_kind_name(RootKind k);
RootKind root_kind_parse(const std::string& s);

// One virtual weighted color triple (theta-check, sigma, r), theta in
// doubled coordinates, r2 = 2r >= 1.
struct ThetaTriple {
  Key theta;
  int sigma = +1;
  long long r2 = 1;
  bool operator==(const ThetaTriple& o) const {
    return theta == o.theta && sigma == o.sigma && r2 == o.r2;
  }
  bool operator<(const ThetaTriple& o) const {
    if (theta != o.theta) return GradedLexLess{}(theta, o.theta);
    if (sigma != o.sigma) return sigma < o.sigma;
    return r2 < o.r2;
  }
};

struct SphericalRoot {
  std::vector<long long> gamma;  // weight coordinates
  Key cogamma;                   // doubled coweight coordinates
  RootKind kind = RootKind::G;
};

// Ambient data: either a full root system (Cartan matrix) or just the list
// of <coroot, rho> pairings when only Q is needed.
struct AmbientData {
  std::shared_ptr<RootSystem> system; // may be null
  std::vector<long long> rho_pairings; // <alpha-check, rho> over positive coroots
};

struct SphericalDatum {
  std::string name;
  bool affine = false;
  bool twisted = false;
  size_t rank = 0;
  std::vector<SphericalRoot> spherical_roots;
  std::vector<ThetaTriple> theta_plus;
  std::vector<Key> colors;
  std::vector<long long> rho_pX; // doubled pairing values on the lattice basis
  AmbientData ambient;

  // Root system of Phi_X, built on first use.
  const RootSystem& phi_x() const;

  // Theta = Theta+ union -(Theta+), signs and r carried along.
  std::vector<ThetaTriple> theta_full() const;

  bool operator==(const SphericalDatum& o) const;

 private:
  mutable std::shared_ptr<RootSystem> phi_x_;
};

SphericalDatum parse_datum(const std::string& json_text);
std::string datum_to_json(const SphericalDatum& d);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const ValidationCheck* find(const std::string& name) const {
    for (auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

ValidationReport validate_datum(const SphericalDatum& d);

// {(theta,sigma,r) in Theta+ : w_gamma theta < 0}, deterministic order.
std::vector<ThetaTriple> theta_flipped_by(const SphericalDatum& d, size_t gamma_index);

} // namespace sphericalis
