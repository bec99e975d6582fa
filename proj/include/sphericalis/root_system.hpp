#pragma once

#include <string>
#include <vector>

#include "sphericalis/torus.hpp"

namespace sphericalis {

// One root/coroot pair. Roots live in weight coordinates (true, pairing with
// a doubled coweight key v is dot(v, root)/2); coroots are stored both in
// true and doubled coordinates.
struct RootPair {
  std::vector<long long> root;     // weight coordinates
  std::vector<long long> coroot;   // true coweight coordinates
  std::vector<long long> expansion; // coefficients in the simple roots
  Key coroot_key() const {
    Key k(coroot.size());
    for (size_t i = 0; i < coroot.size(); ++i) k[i] = 2 * coroot[i];
    return k;
  }
  bool positive() const {
    for (auto c : expansion)
      if (c < 0) return false;
    return true;
  }
};

struct WeylElement {
  IntMat matrix;      // action on (doubled) coweight keys
  IntMat inverse;
  std::vector<int> word; // reduced word, lexicographically least among shortest
  int sign = +1;         // (-1)^length
  size_t length() const { return word.size(); }
};

class RootSystem {
 public:
  // simple_roots: weight coordinates; simple_coroots: true coweight
  // coordinates. Pairings <coroot_i, root_j> must form a generalized Cartan
  // matrix; reflection closure must be finite (cap guards bad input).
  RootSystem(std::vector<std::vector<long long>> simple_roots,
             std::vector<std::vector<long long>> simple_coroots,
             size_t cap = 100000);

  // Standard realization from a Cartan matrix a[i][j] = <coroot_i, root_j>:
  // coroots are unit vectors, roots the columns of the matrix.
  static RootSystem from_cartan(const std::vector<std::vector<long long>>& cartan,
                                size_t cap = 100000);

  size_t rank() const { return rank_; }
  size_t num_simple() const { return simple_.size(); }
  const std::vector<RootPair>& positive_roots() const { return positive_; }
  const RootPair& simple(size_t i) const { return simple_[i]; }

  // <coroot, root_j> for a doubled key.
  long long pair2(const Key& coweight_key, size_t j) const;

  const IntMat& simple_reflection(size_t i) const { return refl_[i]; }

  // doubled coordinates of rho-check (half sum of positive coroots)
  const Key& rho_check2() const { return rho2_; }
  // <alpha-check, rho> over positive coroots = height of the coroot
  std::vector<long long> coroot_heights() const;

  const std::vector<WeylElement>& weyl_group() const;
  const WeylElement& weyl_identity() const;
  // Index of the element with the given matrix; throws if absent.
  size_t weyl_index(const IntMat& m) const;
  const WeylElement& weyl_product(const WeylElement& a, const WeylElement& b) const;
  const WeylElement& weyl_from_word(const std::vector<int>& word) const;

  // Weyl character formula, lowest-weight form:
  //   s_lambda = sum_W (-1)^w e^{rho - w rho + w lambda} / prod (1 - e^{gamma})
  // lambda in doubled coordinates.
  TorusLaurent schur_lowest(const Key& lambda2) const;

  // Alternating numerator alone (the oracle side of schur_lowest).
  TorusLaurent schur_numerator(const Key& lambda2) const;

 private:
  size_t rank_;
  size_t cap_;
  std::vector<RootPair> simple_;
  std::vector<IntMat> refl_;
  std::vector<RootPair> positive_;
  Key rho2_;
  mutable std::vector<WeylElement> weyl_;
  mutable std::map<IntMat, size_t> weyl_by_matrix_;

  void enumerate_roots();
  void generate_weyl() const;
};

} // namespace sphericalis
