#pragma once

#include <string>
#include <vector>

#include "sphericalis/engine.hpp"
#include "sphericalis/rank_one.hpp"
#include "sphericalis/spherical_data.hpp"

namespace sphericalis {

// Expected symbolic targets carried by a fixture; every target carries a
// one-line description of the closed form it freezes.
struct ExpectedBw {
  size_t gamma_index;
  TorusRational value; // in the datum's lattice coordinates
  std::string citation;
};

struct ExpectedLMultiset {
  std::vector<LFactor> factors; // compared after zero-weight discard
  std::string citation;
};

struct Fixture {
  SphericalDatum datum;
  std::string datum_json;
  std::vector<ExpectedBw> expected_bw;
  std::vector<ExpectedLMultiset> expected_l;
  size_t weyl_order = 0;
  std::vector<std::string> path_jsons; // rank-one paths, with printed targets
  std::vector<TorusRational> path_backtick_targets; // ambient coordinates
  std::vector<std::string> path_citations;
};

std::vector<std::string> list_fixtures();
const Fixture& get_fixture(const std::string& name);

struct RegressionEntry {
  std::string target;
  bool pass = false;
  std::string detail;
};

struct RegressionReport {
  std::string fixture;
  std::vector<RegressionEntry> entries;
  bool all_pass() const {
    for (auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

// Runs validation, the engine invariants (consistency / pinning / cocycle),
// the printed-B_w comparisons, the L-multiset comparison and the path
// compositions for one fixture.
RegressionReport regression_suite(const std::string& name);

} // namespace sphericalis
