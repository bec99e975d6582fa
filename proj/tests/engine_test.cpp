#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sphericalis/engine.hpp"
#include "sphericalis/errors.hpp"
#include "sphericalis/fixtures.hpp"

using namespace sphericalis;

namespace {

TorusLaurent one_minus_k(const Key& k, long long r2, int sigma = +1) {
  return TorusLaurent::one_minus(k, TPoly::t_power(r2, QRat(sigma)));
}

TPoly tp(std::vector<std::pair<long long, long long>> terms) {
  TPoly p;
  for (auto& [e, c] : terms) p.add_term(e, QRat(c));
  return p;
}

} // namespace

TEST_CASE("beta examples") {
  // whittaker-a1: (1 - e^gamma) / 1
  TorusRational b = beta(get_fixture("whittaker-a1").datum);
  CHECK(b == TorusRational(one_minus_k({2}, 0)));
  // group-a1: (1 - e^g)/(1 - t^2 e^g)
  TorusRational bg = beta(get_fixture("group-a1").datum);
  CHECK(bg == TorusRational(one_minus_k({2}, 0), one_minus_k({2}, 2)));
  // triple-product: three root factors over four t^1 factors
  const SphericalDatum& tpd = get_fixture("triple-product").datum;
  TorusRational bt = beta(tpd);
  TorusLaurent num = TorusLaurent::one(3);
  for (size_t i = 0; i < 3; ++i) {
    Key k(3, 0);
    k[i] = 4;
    num = num * one_minus_k(k, 0);
  }
  TorusLaurent den = TorusLaurent::one(3);
  for (auto& t : tpd.theta_plus) den = den * one_minus_k(t.theta, 1);
  CHECK(bt == TorusRational(num, den));
}

TEST_CASE("bw_statement examples") {
  // (U,psi): -e^gamma
  TorusRational u = bw_statement(RootKind::UPsi, {2}, {}, 1);
  CHECK(u == TorusRational(TorusLaurent::monomial({2}, TPoly(QRat(-1)))));
  // type G at r2 = 4 (Spin series n = 3 shape): -e^g (1-t^4 e^-g)/(1-t^4 e^g)
  TorusRational g =
      bw_statement(RootKind::G, {2}, {{{2}, +1, 4}}, 1);
  TorusLaurent gn = one_minus_k({-2}, 4).mul_monomial({2}, TPoly(QRat(-1)));
  CHECK(g == TorusRational(gn, one_minus_k({2}, 4)));
  // T split with two colors (GL2\SL3 restricted shape)
  TorusRational t = bw_statement(RootKind::TSplit, {4},
                                 {{{2}, +1, 2}, {{2}, +1, 2}}, 1);
  TorusLaurent tn =
      (one_minus_k({-2}, 2) * one_minus_k({-2}, 2)).mul_monomial({4}, TPoly(QRat(-1)));
  TorusLaurent td = one_minus_k({2}, 2) * one_minus_k({2}, 2);
  CHECK(t == TorusRational(tn, td));
  // kind/color mismatch errors
  CHECK_THROWS_AS(bw_statement(RootKind::TSplit, {4}, {}, 1), error);
  CHECK_THROWS_AS(bw_statement(RootKind::G, {2}, {{{2}, -1, 4}}, 1), error);
}

TEST_CASE("bw examples and the statement cross-check") {
  const SphericalDatum& wa = get_fixture("whittaker-a1").datum;
  // identity -> 1
  CHECK(bw(wa, wa.phi_x().weyl_identity()) == TorusRational::one(1));
  // whittaker simple reflection -> -e^gamma
  const WeylElement& s = wa.phi_x().weyl_from_word({0});
  CHECK(bw(wa, s) ==
        TorusRational(TorusLaurent::monomial({2}, TPoly(QRat(-1)))));
  // group-a1 -> Macdonald factor
  const SphericalDatum& ga = get_fixture("group-a1").datum;
  const WeylElement& sg = ga.phi_x().weyl_from_word({0});
  TorusLaurent n = one_minus_k({-2}, 2).mul_monomial({2}, TPoly(QRat(-1)));
  CHECK(bw(ga, sg) == TorusRational(n, one_minus_k({2}, 2)));
}

TEST_CASE("bw cross-check rejects incoherent data") {
  // dropping a W-translate from Theta+ leaves the flipped set intact but
  // breaks the quotient identity beta/beta^w = statement form
  std::string txt = get_fixture("triple-product").datum_json;
  auto pos = txt.find("{\"coweight\": [2,2,2], \"sign\": 1, \"r2\": 1}");
  REQUIRE(pos != std::string::npos);
  // remove the all-plus triple (and the separating comma before it)
  std::string mutated = txt;
  mutated.erase(mutated.rfind(',', pos), mutated.find('}', pos) - mutated.rfind(',', pos) + 1);
  SphericalDatum d = parse_datum(mutated);
  CHECK(d.theta_plus.size() == 3);
  CHECK_THROWS_AS(bw(d, d.phi_x().weyl_from_word({0})), consistency_error);
}

TEST_CASE("cocycle relation and word independence") {
  for (auto name : {"group-a2", "triple-product", "shalika-gl4"}) {
    const SphericalDatum& d = get_fixture(name).datum;
    const auto& wg = d.phi_x().weyl_group();
    // sample pairs
    for (size_t a = 0; a < wg.size(); a += 2)
      for (size_t b = 1; b < wg.size(); b += 3) {
        const WeylElement& w12 = d.phi_x().weyl_product(wg[a], wg[b]);
        TorusRational lhs = bw(d, w12);
        TorusRational rhs =
            bw(d, wg[a]).apply_matrix(wg[b].inverse) * bw(d, wg[b]);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("omega_sum examples") {
  // whittaker-a1 at lambda = 0: 1 - t^2-free alternating collapse;
  // Omega = pre * sum_w B_w e^{w^{-1} 0} = 1 + (-e^g) = 1 - e^g here
  const SphericalDatum& wa = get_fixture("whittaker-a1").datum;
  OmegaValue o = omega_sum(wa, {0});
  CHECK(o.value == TorusRational(one_minus_k({2}, 0)));
  // non-antidominant lambda rejected
  CHECK_THROWS_AS(omega_sum(wa, {2}), error);
}

TEST_CASE("omega_schur examples") {
  // whittaker-a1, lambda = -gamma: prefactor t^2 times (e^-g + 1 + e^g)
  const SphericalDatum& wa = get_fixture("whittaker-a1").datum;
  OmegaValue o = omega_schur(wa, {-2});
  TorusLaurent expect(1);
  expect.add_term({-2}, TPoly::t_power(2));
  expect.add_term({0}, TPoly::t_power(2));
  expect.add_term({2}, TPoly::t_power(2));
  CHECK(o.value == TorusRational(expect));
  // group-a1, lambda = 0: s_0 - t^2 s_{g} = 1 + t^2
  const SphericalDatum& ga = get_fixture("group-a1").datum;
  OmegaValue og = omega_schur(ga, {0});
  TorusLaurent e2(1);
  e2.add_term({0}, tp({{0, 1}, {2, 1}}));
  CHECK(og.value == TorusRational(e2));
  // theta cap
  CHECK_THROWS_AS(omega_schur(get_fixture("triple-product").datum, {0, 0, 0}, 2),
                  error);
}

TEST_CASE("CONSISTENCY: omega_sum = beta * omega_schur on every fixture") {
  for (auto& name : list_fixtures()) {
    const SphericalDatum& d = get_fixture(name).datum;
    TorusRational b = beta(d);
    // a small grid: 0 and -rho-like points
    std::vector<Key> grid;
    grid.push_back(Key(d.rank, 0));
    Key la(d.rank, 0);
    for (size_t i = 0; i < d.rank; ++i) la[i] = -2;
    if (is_x_antidominant(d, la)) grid.push_back(la);
    Key mu = key_scale(-2, d.phi_x().rho_check2());
    if (is_x_antidominant(d, mu)) grid.push_back(mu);
    for (auto& l : grid) {
      INFO(name);
      OmegaValue os = omega_sum(d, l);
      OmegaValue oc = omega_schur(d, l);
      CHECK(os.value == b * oc.value);
    }
  }
}

TEST_CASE("PINNING: omega at the delta point is 1 (affine, non-twisted)") {
  for (auto& name : list_fixtures()) {
    const SphericalDatum& d = get_fixture(name).datum;
    if (!d.affine || d.twisted) continue;
    Key la = key_scale(-2, d.phi_x().rho_check2());
    REQUIRE(is_x_antidominant(d, la));
    OmegaValue oc = omega_schur(d, la);
    INFO(name);
    CHECK(omega_at_delta_point(d, oc) == TRat(TPoly(QRat(1))));
  }
}

TEST_CASE("constant_c examples") {
  CHECK(constant_c(get_fixture("group-a1").datum) == TRat(tp({{0, 1}, {2, 1}})));
  // group-a2: (1+t^2)(1+t^2+t^4)
  TRat c2 = constant_c(get_fixture("group-a2").datum);
  TPoly expect = tp({{0, 1}, {2, 1}}) * tp({{0, 1}, {2, 1}, {4, 1}});
  CHECK(c2 == TRat(expect));
  // gl2-sl3: 1 - t^4
  CHECK(constant_c(get_fixture("gl2-sl3").datum) == TRat(tp({{0, 1}, {4, -1}})));
  // twisted datum rejected
  CHECK_THROWS_AS(constant_c(get_fixture("whittaker-a1").datum), error);
}

TEST_CASE("p_poly basics") {
  const SphericalDatum& d = get_fixture("group-a1").datum;
  // P_0 = 1
  CHECK(p_poly(d, {0}) == TorusRational::one(1));
  // W_X-invariance
  TorusRational p = p_poly(d, {-2});
  CHECK(p.apply_matrix(d.phi_x().simple_reflection(0)) == p);
  // twisted datum errors
  CHECK_THROWS_AS(p_poly(get_fixture("shalika-gl4").datum, {0, 0}), error);
}

TEST_CASE("lhalf, lfull and the factorization") {
  for (auto name : {"group-a1", "triple-product", "sp4-gl4", "sp2sp2-sp4"}) {
    const SphericalDatum& d = get_fixture(name).datum;
    TorusRational lf = lfull(d);
    // W_X-invariance of L_X
    for (size_t i = 0; i < d.spherical_roots.size(); ++i)
      CHECK(lf.apply_matrix(d.phi_x().simple_reflection(i)) == lf);
    // factorization re-expands exactly
    CHECK(lfactors(d).expand(d.rank) == lf);
    // chi -> chi^{-1} symmetry
    CHECK(lf.invert_torus() == lf);
  }
}

TEST_CASE("q_factor examples") {
  // A1: (1-t^4)/(1-t^2) = 1+t^2
  CHECK(q_factor({1}) == TRat(tp({{0, 1}, {2, 1}})));
  // A1 x A1: (1+t^2)^2
  CHECK(q_factor({1, 1}) == TRat(tp({{0, 1}, {2, 1}}) * tp({{0, 1}, {2, 1}})));
  // A2 with pairings 1,1,2: (1+t^2)(1+t^2+t^4); cross-checked against the
  // Poincare identity Q = q^{-l(w_l)} W(q)
  TRat qa2 = q_factor({1, 1, 2});
  TPoly expect = tp({{0, 1}, {2, 1}}) * tp({{0, 1}, {2, 1}, {4, 1}});
  CHECK(qa2 == TRat(expect));
}

TEST_CASE("q_factor equals the Iwahori-Bruhat Poincare series") {
  // Q = Vol(K)/Vol(J w_l J) = q^{-l(w_l)} sum_W q^{l(w)}; in t: t^{2 l(w_l)}
  // sum_W t^{-2l(w)}
  for (auto cartan : {std::vector<std::vector<long long>>{{2}},
                      {{2, -1}, {-1, 2}},
                      {{2, -1}, {-2, 2}}}) {
    RootSystem rs = RootSystem::from_cartan(cartan);
    TRat q = q_factor(rs.coroot_heights());
    size_t lmax = 0;
    for (auto& w : rs.weyl_group()) lmax = std::max(lmax, w.length());
    TPoly poin;
    for (auto& w : rs.weyl_group())
      poin.add_term(2 * (long long)(lmax - w.length()), QRat(1));
    CHECK(q == TRat(poin));
  }
}

TEST_CASE("volume examples") {
  // group-a1: (1+t^2)^2/(1+t^2) = 1+t^2
  CHECK(volume(get_fixture("group-a1").datum) == TRat(tp({{0, 1}, {2, 1}})));
  // tamagawa adds (1-t^2)^rank
  CHECK(tamagawa_volume(get_fixture("group-a1").datum) ==
        TRat(tp({{0, 1}, {2, -1}}) * tp({{0, 1}, {2, 1}})));
  CHECK_THROWS_AS(volume(get_fixture("whittaker-a1").datum), error);
}

TEST_CASE("plancherel pairing: diagonal at zero is c |W_X|") {
  for (auto name : {"group-a1", "gl2-sl3", "triple-product"}) {
    const SphericalDatum& d = get_fixture(name).datum;
    PlancherelResult r = plancherel_pairing(d, Key(d.rank, 0), Key(d.rank, 0), 8);
    REQUIRE(r.exact);
    TRat c = constant_c(d);
    TRat expect = c * TRat(TPoly(QRat((long)d.phi_x().weyl_group().size())));
    INFO(name);
    CHECK(r.exact_value == expect);
  }
}

TEST_CASE("plancherel pairing: off-zero exact vanishing") {
  const SphericalDatum& d = get_fixture("group-a1").datum;
  for (long long m : {-2, -4, -6}) {
    PlancherelResult r = plancherel_pairing(d, {m}, {0}, 8);
    REQUIRE(r.exact);
    CHECK(r.exact_value.is_zero());
  }
}

TEST_CASE("plancherel pairing: series orthogonality and diagonal positivity") {
  const SphericalDatum& d = get_fixture("group-a1").datum;
  PlancherelResult off = plancherel_pairing(d, {-2}, {-4}, 24);
  CHECK_FALSE(off.exact);
  CHECK(off.series.is_zero());
  PlancherelResult diag = plancherel_pairing(d, {-2}, {-2}, 12);
  REQUIRE_FALSE(diag.series.is_zero());
  CHECK(diag.series.coeffs().begin()->second > QRat(0));
}

TEST_CASE("eisenstein factors") {
  RootSystem a1 = RootSystem::from_cartan({{2}});
  const WeylElement& id = a1.weyl_identity();
  const WeylElement& s = a1.weyl_from_word({0});
  EisensteinFactors fe = eisenstein_factors(a1, id);
  CHECK(fe.j_w == TorusRational::one(1));
  CHECK(fe.j_tilde_w ==
        TorusRational(one_minus_k({2}, 2), one_minus_k({2}, 0)));
  EisensteinFactors fs = eisenstein_factors(a1, s);
  CHECK(fs.j_w == TorusRational(one_minus_k({2}, 2), one_minus_k({2}, 0)));
  CHECK(fs.j_tilde_w == TorusRational::one(1));
  CHECK(fs.fw_tw_ratio ==
        TorusRational(one_minus_k({2}, 0), one_minus_k({-2}, 2)));
  // cocycle-style composition over A2: j_{w} for the long element covers all
  RootSystem a2 = RootSystem::from_cartan({{2, -1}, {-1, 2}});
  const WeylElement& wl = a2.weyl_from_word({0, 1, 0});
  EisensteinFactors fl = eisenstein_factors(a2, wl);
  CHECK(fl.j_tilde_w == TorusRational::one(2));
}

TEST_CASE("triple-product printed alternating formula") {
  // Omega matches, up to a lambda-independent factor, the displayed sum
  //   sum_W sign(w) prod_{theta+}(1 - q^{-1/2} e^theta) e^{-rho+la} (^w chi)
  const SphericalDatum& d = get_fixture("triple-product").datum;
  const RootSystem& rs = d.phi_x();
  TorusRational b = beta(d);
  auto printed = [&](const Key& la) {
    TorusLaurent acc(3);
    for (auto& w : rs.weyl_group()) {
      TorusLaurent term = TorusLaurent::one(3);
      for (auto& t : d.theta_plus)
        term = term * TorusLaurent::one_minus(w.inverse.apply(t.theta),
                                              TPoly::t_power(1));
      Key e = w.inverse.apply(key_add(key_neg(rs.rho_check2()), la));
      acc += term.mul_monomial(e, TPoly(QRat(w.sign)));
    }
    return TorusRational(acc);
  };
  std::vector<Key> grid = {{0, 0, 0}, {-2, 0, 0}, {-2, -2, 0}, {-2, -2, -2},
                           {-4, -2, 0}};
  std::vector<TorusRational> omegas, rhs;
  for (auto& la : grid) {
    REQUIRE(is_x_antidominant(d, la));
    omegas.push_back(b * omega_schur(d, la).value);
    rhs.push_back(printed(la).scale(TRat(omega_prefactor(d, la))));
  }
  for (size_t i = 1; i < grid.size(); ++i)
    CHECK(omegas[i] * rhs[0] == omegas[0] * rhs[i]);
}

TEST_CASE("frozen closed forms for the triple product") {
  const SphericalDatum& d = get_fixture("triple-product").datum;
  // c = 1 - t^4
  CHECK(constant_c(d) == TRat(tp({{0, 1}, {4, -1}})));
  // volume = (1+t^2)^3 / (1-t^4) = (1+t^2)^2/(1-t^2)
  TPoly num = tp({{0, 1}, {2, 1}}) * tp({{0, 1}, {2, 1}});
  CHECK(volume(d) == TRat(num, tp({{0, 1}, {2, -1}})));
}

TEST_CASE("TRIANGULARITY: schur part supported on lambda + color cone") {
  for (auto name : {"group-a1", "group-a2", "triple-product", "gl2-sl3"}) {
    const SphericalDatum& d = get_fixture(name).datum;
    Key la = key_scale(-2, d.phi_x().rho_check2());
    OmegaValue oc = omega_schur(d, la);
    // strip the prefactor: divide by t^{power}
    TPoly pre = omega_prefactor(d, la);
    long long shift = pre.min_exp();
    // orbit sum of e^{lambda}
    TorusLaurent orbit(d.rank);
    std::set<Key> seen;
    for (auto& w : d.phi_x().weyl_group()) {
      Key k = w.matrix.apply(la);
      if (seen.insert(k).second) orbit.add_term(k, TPoly(QRat(1)));
    }
    TorusLaurent diff = oc.value.num().scale(TPoly::t_power(-shift)) - orbit;
    for (auto& [k, c] : diff.terms()) {
      Key rel = key_add(k, key_neg(la));
      INFO(name);
      CHECK(cone_member(d.colors, rel));
    }
  }
}
