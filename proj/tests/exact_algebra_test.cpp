#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sphericalis/constant_term.hpp"
#include "sphericalis/errors.hpp"
#include "sphericalis/torus.hpp"

using namespace sphericalis;

namespace {

// deterministic generator for the property batteries
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  long long range(long long lo, long long hi) { // inclusive
    return lo + (long long)(next() % (uint64_t)(hi - lo + 1));
  }
};

TorusLaurent random_laurent(Rng& rng, size_t rank, int terms) {
  TorusLaurent f(rank);
  for (int i = 0; i < terms; ++i) {
    Key k(rank);
    for (auto& x : k) x = rng.range(-2, 2);
    TPoly c = TPoly::t_power(rng.range(-1, 2), QRat(rng.range(-3, 3)));
    f.add_term(k, c);
  }
  return f;
}

TorusLaurent z_poly(std::vector<std::pair<long long, long long>> terms) {
  // rank-1 helper: list of (exponent, coefficient)
  TorusLaurent f(1);
  for (auto& [e, c] : terms) f.add_term({e}, TPoly(QRat(c)));
  return f;
}

} // namespace

TEST_CASE("qrat basics") {
  QRat a(2, 4);
  CHECK(a == QRat(1, 2));
  CHECK(a.str() == "1/2");
  CHECK((QRat(1, 3) + QRat(1, 6)) == QRat(1, 2));
  CHECK(QRat(-2, 3).pow(-2) == QRat(9, 4));
  CHECK(QRat::parse("-7/21") == QRat(-1, 3));
  CHECK_THROWS_AS(QRat(1, 0), error);
}

TEST_CASE("tpoly arithmetic and division") {
  TPoly a = TPoly::one_minus(4, QRat(1)); // 1 - t^4
  TPoly b = TPoly::one_minus(2, QRat(1)); // 1 - t^2
  TPoly q = a.divide_exact(b);
  TPoly expect(QRat(1));
  expect.add_term(2, QRat(1));
  CHECK(q == expect); // 1 + t^2
  CHECK_THROWS_AS(b.divide_exact(a), not_divisible_error);
  CHECK(TRat(a, b) == TRat(expect));
  // Laurent in t
  TPoly lau = TPoly::t_power(-2) + TPoly::t_power(1, QRat(3));
  CHECK(lau.eval(QRat(1, 2)) == QRat(4) + QRat(3, 2));
  // series inverse
  TPoly inv = b.series_inverse(6);
  TPoly one = (inv * b).truncated(6);
  CHECK(one == TPoly(QRat(1)));
}

TEST_CASE("poly_arith examples") {
  // (1 - z)(1 + z) = 1 - z^2
  TorusLaurent a = z_poly({{0, 1}, {1, -1}});
  TorusLaurent b = z_poly({{0, 1}, {1, 1}});
  CHECK(poly_arith(a, b, PolyOp::mul) == z_poly({{0, 1}, {2, -1}}));
  // a * 0 = 0
  CHECK((a * TorusLaurent::zero(1)).is_zero());
  // (1 - t^2 e^th)(1 - t^2 e^{-th}) = 1 - t^2(e^th + e^{-th}) + t^4
  TorusLaurent c = TorusLaurent::one_minus({1}, TPoly::t_power(2));
  TorusLaurent d = TorusLaurent::one_minus({-1}, TPoly::t_power(2));
  TorusLaurent prod = c * d;
  TorusLaurent expect = TorusLaurent::one(1);
  expect.add_term({1}, -TPoly::t_power(2));
  expect.add_term({-1}, -TPoly::t_power(2));
  expect.add_term({0}, TPoly::t_power(4));
  CHECK(prod == expect);
  CHECK_THROWS_AS(poly_arith(a, TorusLaurent::one(2), PolyOp::add),
                  dimension_error);
}

TEST_CASE("exact_divide examples") {
  CHECK(exact_divide(z_poly({{0, 1}, {2, -1}}), z_poly({{0, 1}, {1, -1}})) ==
        z_poly({{0, 1}, {1, 1}}));
  CHECK(exact_divide(z_poly({{0, 1}, {3, -1}}), z_poly({{0, 1}, {1, -1}})) ==
        z_poly({{0, 1}, {1, 1}, {2, 1}}));
  CHECK_THROWS_AS(
      exact_divide(z_poly({{0, 1}, {2, -1}}), z_poly({{0, 1}, {3, -1}})),
      not_divisible_error);
  // Laurent shifts divide cleanly
  CHECK(exact_divide(z_poly({{-1, 1}, {1, -1}}), z_poly({{-1, 1}, {0, -1}})) ==
        z_poly({{0, 1}, {1, 1}}));
}

TEST_CASE("exact_divide property: (a*b)/b = a") {
  Rng rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    size_t rank = 1 + trial % 3;
    TorusLaurent a = random_laurent(rng, rank, 4);
    TorusLaurent b = random_laurent(rng, rank, 3);
    if (b.is_zero()) continue;
    CHECK(exact_divide(a * b, b) == a);
  }
}

TEST_CASE("ring axioms on random instances") {
  Rng rng(999);
  for (int trial = 0; trial < 40; ++trial) {
    size_t rank = 1 + trial % 2;
    TorusLaurent a = random_laurent(rng, rank, 3);
    TorusLaurent b = random_laurent(rng, rank, 3);
    TorusLaurent c = random_laurent(rng, rank, 3);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("weyl_substitute examples and group law") {
  TorusLaurent f = z_poly({{1, 1}, {-1, 2}}); // e^th + 2 e^{-th}
  IntMat id = IntMat::identity(1);
  CHECK(f.apply_matrix(id) == f);
  IntMat neg;
  neg.n = 1;
  neg.a = {-1};
  CHECK(f.apply_matrix(neg) == z_poly({{-1, 1}, {1, 2}}));
  CHECK(f.apply_matrix(neg).apply_matrix(neg) == f);
  IntMat sing;
  sing.n = 1;
  sing.a = {0};
  CHECK_THROWS_AS(f.apply_matrix(sing), error);

  Rng rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    TorusLaurent g = random_laurent(rng, 2, 4);
    IntMat m1, m2;
    m1.n = m2.n = 2;
    m1.a = {1, 1, 0, 1};
    m2.a = {0, -1, 1, 0};
    CHECK(g.apply_matrix(m2).apply_matrix(m1) == g.apply_matrix(m1 * m2));
  }
}

TEST_CASE("substitute_point examples") {
  // f = (1 - e^th)/(1 - t^2 e^th), e^th -> 1, t -> 1/2  =>  0
  TorusRational f(TorusLaurent::one_minus({2}, TPoly(QRat(1))),
                  TorusLaurent::one_minus({2}, TPoly::t_power(2)));
  CHECK(substitute_point(f, QRat(1, 2), {{{2}, QRat(1)}}) == QRat(0));
  // pole: 1/(1 - t^2 e^th) with e^th = t^{-2}
  TorusRational g(TorusLaurent::one(1),
                  TorusLaurent::one_minus({2}, TPoly::t_power(2)));
  CHECK_THROWS_AS(substitute_point(g, QRat(1, 2), {{{2}, QRat(4)}}), pole_error);
  // e^th + e^{-th} with e^th -> 3  =>  10/3
  TorusRational h(z_poly({{2, 1}, {-2, 1}}));
  CHECK(substitute_point(h, QRat(1, 2), {{{2}, QRat(3)}}) == QRat(10, 3));
  // monomial outside the assigned span errors
  TorusRational k(z_poly({{1, 1}}));
  CHECK_THROWS_AS(substitute_point(k, QRat(1, 2), {{{2}, QRat(3)}}), error);
}

TEST_CASE("substitute_point is multiplicative away from poles") {
  Rng rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    TorusLaurent a = random_laurent(rng, 2, 3);
    TorusLaurent b = random_laurent(rng, 2, 3);
    std::vector<std::pair<Key, QRat>> pt = {{{1, 0}, QRat(2, 3)},
                                            {{0, 1}, QRat(5, 2)}};
    QRat t(1, 3);
    QRat va = substitute_point(TorusRational(a), t, pt);
    QRat vb = substitute_point(TorusRational(b), t, pt);
    QRat vab = substitute_point(TorusRational(a * b), t, pt);
    CHECK(vab == va * vb);
  }
}

TEST_CASE("ct_exact examples") {
  // numerator 1, no denominators
  CHECK(ct_exact(TorusLaurent::one(1), {}, {}) == TPoly(QRat(1)));
  // e^{th} / (1 - t^2 e^{-th}): k = 1 reaches exponent 0 -> t^2
  TorusLaurent num = z_poly({{1, 1}});
  std::vector<CTFactor> dens = {{+1, 2, {-1}}};
  std::vector<QRat> ell = {QRat(-1)};
  CHECK(ct_exact(num, dens, ell) == TPoly::t_power(2));
  // e^{2 th}: k = 2 -> t^4
  CHECK(ct_exact(z_poly({{2, 1}}), dens, ell) == TPoly::t_power(4));
  // certificate failure
  std::vector<QRat> bad = {QRat(1)};
  CHECK_THROWS_AS(ct_exact(num, dens, bad), not_pointed_error);
}

TEST_CASE("ct_series examples") {
  // z + 1/z + 2 -> 2
  CHECK(ct_series(z_poly({{1, 1}, {-1, 1}, {0, 2}}), {}, TRat(TPoly(QRat(1))),
                  24) == TPoly(QRat(2)));
  // 1/(1 - t^2 z) -> 1
  std::vector<CTFactor> one = {{+1, 2, {1}}};
  CHECK(ct_series(TorusLaurent::one(1), one, TRat(TPoly(QRat(1))), 24) ==
        TPoly(QRat(1)));
  // 1/((1 - t^2 z)(1 - t^2 z^{-1})) -> 1 + t^4 + t^8 + ...
  std::vector<CTFactor> two = {{+1, 2, {1}}, {+1, 2, {-1}}};
  TPoly got = ct_series(TorusLaurent::one(1), two, TRat(TPoly(QRat(1))), 10);
  TPoly expect(QRat(1));
  expect.add_term(4, QRat(1));
  expect.add_term(8, QRat(1));
  CHECK(got == expect);
  // r2 = 0 rejected
  std::vector<CTFactor> zero = {{+1, 0, {1}}};
  CHECK_THROWS_AS(ct_series(TorusLaurent::one(1), zero, TRat(TPoly(QRat(1))), 4),
                  not_t_adic_error);
}

TEST_CASE("ct_series agrees with ct_exact under both preconditions") {
  // denominators in a pointed cone with r2 >= 1: both routes must agree
  std::vector<CTFactor> dens = {{+1, 2, {-1, 0}}, {-1, 1, {-1, -1}}};
  std::vector<QRat> ell = {QRat(-1), QRat(0)};
  Rng rng(5150);
  for (int trial = 0; trial < 10; ++trial) {
    TorusLaurent num(2);
    for (int i = 0; i < 3; ++i) {
      Key k = {rng.range(0, 2), rng.range(0, 2)};
      num.add_term(k, TPoly(QRat(rng.range(-2, 2))));
    }
    TPoly ex = ct_exact(num, dens, ell);
    TPoly se = ct_series(num, dens, TRat(TPoly(QRat(1))), 24);
    CHECK(ex.truncated(24) == se);
  }
}

TEST_CASE("torus rational equality by cross multiplication") {
  // (1 - z^2)/(1 - z) == (1 + z)/1 without any gcd computation
  TorusRational a(z_poly({{0, 1}, {2, -1}}), z_poly({{0, 1}, {1, -1}}));
  TorusRational b(z_poly({{0, 1}, {1, 1}}));
  CHECK(a == b);
  CHECK(a * a.inverse() == TorusRational::one(1));
}

TEST_CASE("serialization is stable") {
  TorusLaurent f = z_poly({{1, 1}, {-1, 2}, {0, 3}});
  CHECK(f.str() == "(2)*z^[-1/2] + (3) + (1)*z^[1/2]");
  TPoly p = TPoly::t_power(2, QRat(1, 2)) + TPoly(QRat(1));
  CHECK(p.str() == "1 + 1/2*t^2");
}
