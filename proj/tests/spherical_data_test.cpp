#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sphericalis/errors.hpp"
#include "sphericalis/fixtures.hpp"
#include "sphericalis/spherical_data.hpp"

#include "json.hpp"

using namespace sphericalis;

TEST_CASE("parse_datum: triple product") {
  const Fixture& fx = get_fixture("triple-product");
  const SphericalDatum& d = fx.datum;
  CHECK(d.rank == 3);
  CHECK(d.spherical_roots.size() == 3);
  for (auto& r : d.spherical_roots) CHECK(r.kind == RootKind::TSplit);
  CHECK(d.theta_plus.size() == 4);
  for (auto& t : d.theta_plus) {
    CHECK(t.sigma == 1);
    CHECK(t.r2 == 1);
  }
}

TEST_CASE("parse_datum: whittaker-a1") {
  const SphericalDatum& d = get_fixture("whittaker-a1").datum;
  CHECK(d.rank == 1);
  CHECK(d.spherical_roots.size() == 1);
  CHECK(d.spherical_roots[0].kind == RootKind::UPsi);
  CHECK(d.theta_plus.empty());
  CHECK(d.twisted);
}

TEST_CASE("parse_datum rejects malformed documents") {
  // missing rho_pX
  nlohmann::json j = nlohmann::json::parse(get_fixture("group-a1").datum_json);
  j.erase("rho_pX");
  CHECK_THROWS_AS(parse_datum(j.dump()), parse_error);
  // unknown field
  j = nlohmann::json::parse(get_fixture("group-a1").datum_json);
  j["extra"] = 1;
  CHECK_THROWS_AS(parse_datum(j.dump()), parse_error);
  // wrong lattice scale
  j = nlohmann::json::parse(get_fixture("group-a1").datum_json);
  j["lattice_scale"] = 1;
  CHECK_THROWS_AS(parse_datum(j.dump()), parse_error);
  // r2 = 0
  j = nlohmann::json::parse(get_fixture("group-a1").datum_json);
  j["theta_plus"][0]["r2"] = 0;
  CHECK_THROWS_AS(parse_datum(j.dump()), parse_error);
  // <cogamma, gamma> != 2
  j = nlohmann::json::parse(get_fixture("group-a1").datum_json);
  j["spherical_roots"][0]["cogamma"] = {4};
  CHECK_THROWS_AS(parse_datum(j.dump()), parse_error);
}

TEST_CASE("datum json round trip") {
  for (auto& name : list_fixtures()) {
    const Fixture& fx = get_fixture(name);
    SphericalDatum re = parse_datum(datum_to_json(fx.datum));
    CHECK(re == fx.datum);
  }
}

TEST_CASE("validate_datum passes on every fixture") {
  for (auto& name : list_fixtures()) {
    ValidationReport rep = validate_datum(get_fixture(name).datum);
    for (auto& c : rep.checks) {
      INFO(name << ": " << c.name << " " << c.detail);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("validate_datum is idempotent") {
  const SphericalDatum& d = get_fixture("triple-product").datum;
  ValidationReport a = validate_datum(d);
  ValidationReport b = validate_datum(d);
  REQUIRE(a.checks.size() == b.checks.size());
  for (size_t i = 0; i < a.checks.size(); ++i)
    CHECK(a.checks[i].pass == b.checks[i].pass);
}

TEST_CASE("mutation: dropping a W-translate breaks stability") {
  nlohmann::json j =
      nlohmann::json::parse(get_fixture("triple-product").datum_json);
  // remove the all-plus triple: the reflection images of the others leave Theta
  j["theta_plus"].erase(3);
  SphericalDatum d = parse_datum(j.dump());
  ValidationReport rep = validate_datum(d);
  CHECK_FALSE(rep.all_pass());
  const ValidationCheck* c = rep.find("theta-wx-stable");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
}

TEST_CASE("mutation: removing a color breaks the sign dichotomy") {
  nlohmann::json j =
      nlohmann::json::parse(get_fixture("triple-product").datum_json);
  j["colors"].erase(2);
  SphericalDatum d = parse_datum(j.dump());
  ValidationReport rep = validate_datum(d);
  const ValidationCheck* c = rep.find("posneg");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
  // stability is unaffected by the color list
  CHECK(rep.find("theta-wx-stable")->pass);
}

TEST_CASE("mutation: orthogonal theta direction breaks separation only") {
  // rank-2 datum: one A1 spherical root plus a Theta-triple orthogonal to it
  std::string txt = R"({
    "name": "separation-broken",
    "affine": true,
    "twisted": false,
    "rank": 2,
    "lattice_scale": 2,
    "ambient": {"pos_coroot_rho_pairings": [1]},
    "spherical_roots": [
      {"gamma": [2,0], "cogamma": [2,0], "kind": "G"}
    ],
    "theta_plus": [
      {"coweight": [2,0], "sign": 1, "r2": 2},
      {"coweight": [0,2], "sign": 1, "r2": 2}
    ],
    "colors": [[2,0],[0,2]],
    "rho_pX": [2,2]
  })";
  SphericalDatum d = parse_datum(txt);
  ValidationReport rep = validate_datum(d);
  CHECK(rep.find("cartan")->pass);
  CHECK(rep.find("theta-wx-stable")->pass);
  CHECK(rep.find("posneg")->pass);
  CHECK(rep.find("colors-pointed")->pass);
  const ValidationCheck* sep = rep.find("affine-separation");
  REQUIRE(sep != nullptr);
  CHECK_FALSE(sep->pass);
}

TEST_CASE("theta_flipped_by examples") {
  // whittaker-a1: empty Theta+
  CHECK(theta_flipped_by(get_fixture("whittaker-a1").datum, 0).empty());
  // group-a1: the single triple is flipped
  auto fl = theta_flipped_by(get_fixture("group-a1").datum, 0);
  REQUIRE(fl.size() == 1);
  CHECK(fl[0].theta == Key{2});
  CHECK(fl[0].sigma == 1);
  CHECK(fl[0].r2 == 2);
  // triple-product gamma_1: exactly the two triples pairing positively
  const SphericalDatum& tp = get_fixture("triple-product").datum;
  auto fl1 = theta_flipped_by(tp, 0);
  REQUIRE(fl1.size() == 2);
  for (auto& t : fl1) CHECK(key_dot(t.theta, tp.spherical_roots[0].gamma) > 0);
  // the all-plus triple pairs positively but is not flipped
  bool has_all_plus = false;
  for (auto& t : fl1)
    if (t.theta == Key{2, 2, 2}) has_all_plus = true;
  CHECK_FALSE(has_all_plus);
  CHECK_THROWS_AS(theta_flipped_by(tp, 7), error);
}

TEST_CASE("flipped multisets are exchanged by the reflection involution") {
  for (auto& name : list_fixtures()) {
    const SphericalDatum& d = get_fixture(name).datum;
    for (size_t g = 0; g < d.spherical_roots.size(); ++g) {
      auto fl = theta_flipped_by(d, g);
      const IntMat& w = d.phi_x().simple_reflection(g);
      std::multiset<std::pair<Key, std::pair<int, long long>>> a, b;
      for (auto& t : fl) {
        a.insert({t.theta, {t.sigma, t.r2}});
        b.insert({key_neg(w.apply(t.theta)), {t.sigma, t.r2}});
      }
      CHECK(a == b);
    }
  }
}
