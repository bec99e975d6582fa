#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sphericalis/engine.hpp"
#include "sphericalis/errors.hpp"
#include "sphericalis/fixtures.hpp"
#include "sphericalis/rank_one.hpp"

using namespace sphericalis;

namespace {

TorusLaurent lin(const Key& k, long long r2, int sigma = +1) {
  return TorusLaurent::one_minus(k, TPoly::t_power(r2, QRat(sigma)));
}

} // namespace

TEST_CASE("fe_coefficient displayed forms") {
  RootSystem a1 = RootSystem::from_cartan({{2}});
  FeCase fe;
  fe.alpha_index = 0;

  fe.tag = FeTag::u_lower;
  // -e^{-a}(1 - t^2 e^{-a})/(1 - e^{-a})
  CHECK(fe_coefficient(a1, fe) ==
        TorusRational(lin({-2}, 2).mul_monomial({-2}, TPoly(QRat(-1))),
                      lin({-2}, 0)));
  fe.tag = FeTag::u_raise;
  CHECK(fe_coefficient(a1, fe) ==
        TorusRational(lin({2}, 0).mul_monomial({-2}, TPoly(QRat(-1))),
                      lin({2}, 2)));
  fe.tag = FeTag::u_psi;
  CHECK(fe_coefficient(a1, fe) == TorusRational::one(1));
  fe.tag = FeTag::t_nonsplit_unram;
  CHECK(fe_coefficient(a1, fe) == TorusRational(lin({-2}, 2), lin({2}, 2)));
  fe.tag = FeTag::t_nonsplit_ram;
  CHECK(fe_coefficient(a1, fe) ==
        TorusRational(TorusLaurent::monomial({-2}, TPoly(QRat(1)))));
  fe.tag = FeTag::n_split_int_unram;
  // ((1 - t e^{-a/2})/(1 - t e^{a/2}))^2
  CHECK(fe_coefficient(a1, fe) ==
        TorusRational(lin({-1}, 1) * lin({-1}, 1), lin({1}, 1) * lin({1}, 1)));
  fe.tag = FeTag::n_nonsplit_int_unram;
  CHECK(fe_coefficient(a1, fe) == TorusRational(lin({-2}, 2), lin({2}, 2)));
  fe.tag = FeTag::n_split_int_ram;
  fe.conductor = 2;
  fe.disc_ratio = QRat(-1);
  CHECK(fe_coefficient(a1, fe) ==
        TorusRational(TorusLaurent::monomial({-4}, TPoly(QRat(-1)))));
  fe.tag = FeTag::t_split_unram;
  fe.v_d.clear();
  CHECK_THROWS_AS(fe_coefficient(a1, fe), error);
}

TEST_CASE("fe_coefficient N-nonintegral uses the u axis") {
  RootSystem a1 = RootSystem::from_cartan({{2}});
  FeCase fe;
  fe.alpha_index = 0;
  fe.tag = FeTag::n_nonintegral;
  fe.disc_ratio = QRat(1);
  CHECK_THROWS_AS(fe_coefficient(a1, fe, false), error);
  TorusRational b = fe_coefficient(a1, fe, true);
  // (1 - t u)/(1 - t u^{-1}) on the 2-axis lattice (base, u)
  CHECK(b == TorusRational(lin({0, 2}, 1), lin({0, -2}, 1)));
  // u^2 = e^{-a}: fold even powers back
  TorusLaurent f(2);
  f.add_term({0, 4}, TPoly(QRat(1)));  // u^2
  f.add_term({2, 0}, TPoly(QRat(1)));  // e^{a/2... base key (2)
  TorusLaurent folded = identify_u_square(f, {-2}, 0);
  TorusLaurent expect(1);
  expect.add_term({-2}, TPoly(QRat(1)));
  expect.add_term({2}, TPoly(QRat(1)));
  CHECK(folded == expect);
  TorusLaurent odd(2);
  odd.add_term({0, 2}, TPoly(QRat(1)));
  CHECK_THROWS_AS(identify_u_square(odd, {-2}, 0), error);
}

TEST_CASE("compose_path: SL2\\SL3 bottom (printed display)") {
  const Fixture& fx = get_fixture("gl2-sl3");
  OrbitPath path = parse_path(fx.path_jsons[0]);
  // empty path composes to 1
  OrbitPath empty = path;
  empty.steps.clear();
  CHECK(compose_path(empty) == TorusRational::one(2));
  // `b = -e^{a1+a2}(1-q^{-1}e^{-a1})(1-q^{-1}e^{-a2}) /
  //      ((1-q^{-1}e^{a1})(1-q^{-1}e^{a2}))
  TorusRational bb = backtick_b(path);
  CHECK(bb == fx.path_backtick_targets[0]);
}

TEST_CASE("compose_path: Sp2\\Sp4 / Sp2xSp2\\Sp4 (printed display)") {
  const Fixture& fx = get_fixture("sp2sp2-sp4");
  OrbitPath path = parse_path(fx.path_jsons[0]);
  TorusRational bb = backtick_b(path);
  // -e^{2a+b}(1-q^{-1}e^{-a})(1-q^{-1}e^{-a-b}) /
  //   ((1-q^{-1}e^{a})(1-q^{-1}e^{a+b}))
  CHECK(bb == fx.path_backtick_targets[0]);
}

TEST_CASE("non-reduced paths are rejected") {
  OrbitPath path = parse_path(get_fixture("gl2-sl3").path_jsons[0]);
  OrbitStep extra = path.steps.back();
  path.steps.push_back(extra); // ... s0 s0: not reduced
  CHECK_THROWS_AS(compose_path(path), error);
}

TEST_CASE("restriction matches the datum B_w for every path fixture") {
  for (auto& name : list_fixtures()) {
    const Fixture& fx = get_fixture(name);
    for (size_t i = 0; i < fx.path_jsons.size(); ++i) {
      OrbitPath path = parse_path(fx.path_jsons[i]);
      TorusRational bb = backtick_b(path);
      TorusRational restricted = restrict_to_x(path, bb);
      const WeylElement& w = fx.datum.phi_x().weyl_from_word({0});
      INFO(name << " path " << i << ": " << fx.path_citations[i]);
      CHECK(restricted == bw(fx.datum, w));
    }
  }
}

TEST_CASE("induction step identity at the declared nodes") {
  for (auto& name : list_fixtures()) {
    const Fixture& fx = get_fixture(name);
    for (auto& js : fx.path_jsons) {
      OrbitPath path = parse_path(js);
      for (auto& [up, lo] : path.induction_checks) {
        auto fail = check_induction_step(path, up, lo);
        INFO(name << (fail ? *fail : ""));
        CHECK_FALSE(fail.has_value());
      }
    }
  }
}

TEST_CASE("path refinement consistency: two SL3 branches agree") {
  // the mirrored SL2\SL3 path (start with alpha_2) gives the same backtick
  // value with the roles of a1, a2 exchanged, and restricts to the same
  // B_{w_gamma} as the left branch
  const char* mirrored = R"({
    "ambient": [[2,-1],[-1,2]],
    "steps": [
      {"root_index": 1, "case": "U-raise"},
      {"root_index": 0, "case": "T-split-unram",
       "params": {"v_d": [0,-2], "v_dp": [2,2], "shift_d2": 2, "shift_dp2": 0}},
      {"root_index": 1, "case": "U-lower"}
    ],
    "restriction": [[1,1]],
    "shift2": [0,0]
  })";
  OrbitPath path = parse_path(mirrored);
  TorusRational bb = backtick_b(path);
  TorusLaurent num = (lin({-2, 0}, 2) * lin({0, -2}, 2))
                         .mul_monomial({2, 2}, TPoly(QRat(-1)));
  TorusLaurent den = lin({2, 0}, 2) * lin({0, 2}, 2);
  CHECK(bb == TorusRational(num, den));
  // both branches restrict to the fixture's B_{w_gamma}
  const Fixture& fx = get_fixture("gl2-sl3");
  OrbitPath left = parse_path(fx.path_jsons[0]);
  const WeylElement& w = fx.datum.phi_x().weyl_from_word({0});
  CHECK(restrict_to_x(path, bb) == bw(fx.datum, w));
  CHECK(restrict_to_x(left, backtick_b(left)) == bw(fx.datum, w));
}

TEST_CASE("path file parsing rejects unknown tags") {
  CHECK_THROWS_AS(parse_path(R"({"ambient": [[2]], "steps": [
    {"root_index": 0, "case": "bogus"}]})"),
                  parse_error);
  CHECK_THROWS_AS(parse_path(R"({"ambient": [[2]], "steps": [
    {"root_index": 0, "case": "U-lower", "params": {"zzz": 1}}]})"),
                  parse_error);
}
