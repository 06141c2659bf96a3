#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "normform/poly.hpp"

using namespace normform;
using namespace normform::testing;

TEST_CASE("rational canonical form and parsing") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(6, -3) == Rational(-2));
}

TEST_CASE("rational parse errors") {
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("7").str() == "7/1");
}

TEST_CASE("rational promotes to GMP and demotes back") {
  Rational big(1);
  for (int i = 0; i < 40; ++i) big *= Rational(1000003);
  CHECK_FALSE(big.is_small());
  Rational back = big;
  for (int i = 0; i < 40; ++i) back /= Rational(1000003);
  CHECK(back.is_small());
  CHECK(back == Rational(1));
  Rational sum = big + (-big);
  CHECK(sum.is_zero());
  CHECK(Rational::parse(big.str()) == big);
}

TEST_CASE("poly_add examples") {
  R r{1};
  CHECK((r.z() + r.x()) + (-r.z()) == r.x());
  const Poly p = r.z() * r.zb() + r.x();
  CHECK(p + Poly(1) == p);
  const Poly half = r.z() * r.zb() * Gaussian(Rational(1, 2));
  CHECK(half + half == r.z() * r.zb());
}

TEST_CASE("poly_mul examples") {
  R r{1};
  CHECK(poly_mul(r.z(), r.zb()) == r.z() * r.zb());
  CHECK(poly_mul(r.x() + r.z(), r.x() - r.z()) == r.x() * r.x() - r.z() * r.z());
  const Poly zz = r.z() * r.zb();
  CHECK(poly_mul(zz, zz, 3).is_zero());
}

TEST_CASE("conjugate examples") {
  R r{1};
  CHECK(conjugate(r.z() * r.z() * gi(0, 1)) == r.zb() * r.zb() * gi(0, -1));
  CHECK(conjugate(r.z() * r.zb()) == r.z() * r.zb());
  CHECK(conjugate(r.z() * r.x() * gi(1, 1)) == r.zb() * r.x() * gi(1, -1));
}

TEST_CASE("is_real examples") {
  R r{1};
  CHECK(is_real(r.z() * r.zb() + r.x()));
  CHECK(is_real((r.z() - r.zb()) * gi(0, 1)));
  CHECK_FALSE(is_real(r.z()));
}

TEST_CASE("substitute examples") {
  R r{1};
  const Poly z2 = r.z() * r.z();
  CHECK(substitute(z2, {r.z() + r.x()}, 2) == r.z() * r.z() + r.z() * r.x() * gi(2) + r.x() * r.x());
  CHECK(substitute(z2, {r.z()}, 5) == z2);
  const Poly zzb = r.z() * r.zb();
  const Poly got = substitute(zzb, {r.z() + r.z() * r.z(), r.zb() + r.zb() * r.zb()}, 3);
  CHECK(got == zzb + r.z() * r.z() * r.zb() + r.z() * r.zb() * r.zb());
  CHECK_THROWS_AS(substitute(z2, {r.z() + Poly::constant(1, gi(1))}, 3), NonNilpotentBinding);
}

TEST_CASE("plain_graded_part examples") {
  R r{1};
  const Poly p = r.z() + r.z() * r.zb();
  CHECK(plain_graded_part(p, 2) == r.z() * r.zb());
  CHECK(plain_graded_part(p, 3).is_zero());
  const Poly q = r.x() * r.x() + r.z() * r.x();
  CHECK(plain_graded_part(q, 2) == q);
}

TEST_CASE("ring axioms and conjugation on random triples") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 2;
    const auto a = random_poly<Poly>(rng, n, 5, 3);
    const auto b = random_poly<Poly>(rng, n, 5, 3);
    const auto c = random_poly<Poly>(rng, n, 5, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(conjugate(conjugate(a)) == a);
    CHECK(conjugate(a * b) == conjugate(a) * conjugate(b));
    Poly sum(n);
    for (int d = 0; d <= a.degree(); ++d) sum += plain_graded_part(a, d);
    CHECK(sum == a);
  }
}

TEST_CASE("substitution composes") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + trial % 2;
    const int D = 5;
    const auto p = random_poly<Poly>(rng, n, 6, 4);
    const int slots = RealVars::slots(n);
    std::vector<std::optional<Poly>> f;
    std::vector<std::optional<Poly>> g;
    for (int s = 0; s < slots; ++s) {
      f.emplace_back(Poly::variable(n, s) + random_poly<Poly>(rng, n, 2, 3, 3, false).filter([](MonoKey k) {
        return key_degree(k) >= 2;
      }));
      g.emplace_back(Poly::variable(n, s) + random_poly<Poly>(rng, n, 2, 3, 3, false).filter([](MonoKey k) {
        return key_degree(k) >= 2;
      }));
    }
    // g∘f as bindings: each f_s evaluated at g.
    std::vector<std::optional<Poly>> gf;
    for (int s = 0; s < slots; ++s) gf.emplace_back(substitute(*f[static_cast<std::size_t>(s)], g, D));
    CHECK(substitute(substitute(p, f, D), g, D) == substitute(p, gf, D));
  }
}

TEST_CASE("holomorphic evaluation on real series") {
  H h{1};
  R r{1};
  const HoloPoly g = h.w() * h.w() + h.z() * h.w();
  const Poly W = r.x() + r.z() * r.zb() * gi(0, 1);
  const Poly got = substitute(g, std::vector<Poly>{r.z(), W}, 6);
  CHECK(got == poly_mul(W, W) + r.z() * W);
}
