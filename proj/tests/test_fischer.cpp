#include <doctest.h>

#include "helpers.hpp"
#include "normform/errors.hpp"
#include "normform/fischer.hpp"

using namespace normform;
using namespace normform::testing;

namespace {

ModelSpec sphere(int n) { return make_model(n, 0, 2, hermitian_form(n)); }
ModelSpec cubic(int n) { return make_model(n, 1, 3, hermitian_form(n)); }

}  // namespace

TEST_CASE("pairing examples") {
  const R r{1};
  CHECK(fischer_pairing(r.z() * r.z(), r.z() * r.z()) == gi(2));
  CHECK(fischer_pairing(r.z(), r.zb()) == gi(0));
  CHECK(fischer_pairing(r.z() * r.zb() * r.x(), r.z() * r.zb() * r.x()) == gi(1));
  // second argument conjugated
  CHECK(fischer_pairing(r.z() * gi(0, 1), r.z() * gi(0, 1)) == gi(1));
  CHECK(fischer_pairing(r.z(), r.z() * gi(0, 1)) == gi(0, -1));
}

TEST_CASE("adjoint examples") {
  const R r{1};
  CHECK(adjoint_apply(r.z() * r.zb(), r.z() * r.z() * r.zb() * r.zb()) == r.z() * r.zb() * gi(4));
  CHECK(adjoint_apply(r.x(), r.z() * r.z()).is_zero());
  CHECK(adjoint_apply(r.z() * gi(0, 1), r.z()) == r.c(gi(0, -1)));
}

TEST_CASE("adjointness and positivity on random polynomials") {
  std::mt19937 rng(7);
  for (int n = 1; n <= 2; ++n) {
    for (int rep = 0; rep < 30; ++rep) {
      const Poly q = random_poly<Poly>(rng, n, 3, 2);
      const Poly a = random_poly<Poly>(rng, n, 4, 3);
      const Poly b = random_poly<Poly>(rng, n, 6, 5);
      CHECK(fischer_pairing(q * a, b) == fischer_pairing(a, adjoint_apply(q, b)));
      if (!b.is_zero()) {
        const Gaussian nb = fischer_pairing(b, b);
        CHECK(nb.im.is_zero());
        CHECK(nb.re.sign() > 0);
      }
    }
  }
}

TEST_CASE("decomposition examples") {
  const R r{1};
  const WeightSystem ws(sphere(1), Preset::kBlockMinimal);
  const Poly zz = r.z() * r.zb();

  auto d = fischer_decompose(r.z() * r.z(), zz, ws);
  CHECK(d.A.is_zero());
  CHECK(d.B == r.z() * r.z());

  d = fischer_decompose(zz * zz, zz, ws);
  CHECK(d.A == zz);
  CHECK(d.B.is_zero());

  const Poly q = sphere(1).divisor();
  d = fischer_decompose(zz, q, ws);
  CHECK(q * d.A + d.B == zz);
  CHECK(adjoint_apply(q, d.B).is_zero());
  // weight-2 slice: A = c·1 with ⟨q, q⟩c = ⟨zz̄, q⟩, so c = −i/2
  CHECK(d.A == r.c(Gaussian(Rational(0), Rational(-1, 2))));
}

TEST_CASE("decomposition is exact on sphere slices") {
  for (int n = 1; n <= 2; ++n) {
    const auto m = sphere(n);
    const WeightSystem ws(m, Preset::kBlockMinimal);
    for (const Poly& q : {m.divisor(), hermitian_form(n)}) {
      for (int w = 0; w <= 5; ++w) {
        for (const MonoKey key : monomials_of_weight(ws, w)) {
          const Poly f = Poly::monomial(n, key);
          const auto d = fischer_decompose(f, q, ws);
          CHECK(q * d.A + d.B == f);
          CHECK(adjoint_apply(q, d.B).is_zero());
        }
      }
    }
  }
}

TEST_CASE("grading choice") {
  const WeightSystem s0(sphere(1), Preset::kBlockMinimal);
  const WeightSystem s1(cubic(1), Preset::kBlockMinimal);
  CHECK(decomposition_grading(sphere(1).divisor(), s0) == Grading::kWeighted);
  CHECK(decomposition_grading(hermitian_form(1), s1) == Grading::kPlain);
  CHECK(decomposition_grading(cubic(1).divisor(), s1) == Grading::kProjected);
  const R r{1};
  CHECK_THROWS_AS(decomposition_grading(r.x() + r.z(), s0), NotHomogeneous);
}

TEST_CASE("projected slices keep reconstruction exact") {
  const auto m = cubic(1);
  const WeightSystem ws(m, Preset::kBlockMinimal);
  const Poly q = m.divisor();
  const R r{1};
  const auto d = fischer_decompose(r.x(), q, ws);
  CHECK(q * d.A + d.B == r.x());
  // no exact complement exists for x against x + i·x·zz̄
  CHECK_FALSE(adjoint_apply(q, d.B).is_zero());
}

TEST_CASE("basis family") {
  const auto m = sphere(1);
  const WeightSystem ws(m, Preset::kBlockMinimal);
  const auto fam = build_basis_family(m, 2, ws);
  // B_(2), Bt_(1) and their conjugates
  REQUIRE(fam.entries.size() == 4);
  const R r{1};
  const auto& b2 = fam.entries[0];
  CHECK(b2.label() == "B_I(2)");
  CHECK(b2.remainder.filter([](MonoKey k) {
          return key_exponent(k, RealVars::zbar(1, 0)) == 0 && key_exponent(k, RealVars::x(1)) == 0;
        }) == r.z() * r.z());
  for (const auto& e : fam.entries) {
    const Poly q = e.conjugated ? conjugate(m.divisor()) : m.divisor();
    CHECK(q * e.quotient + e.remainder == e.source);
  }
  for (const auto& model : {sphere(1), sphere(2), cubic(1)}) {
    const WeightSystem w(model, Preset::kBlockMinimal);
    CHECK_NOTHROW(build_basis_family(model, 5, w));
  }
  // x(|z1|^2 - |z2|^2) has a real remainder against x + i·x·<z,z>
  const WeightSystem w2(cubic(2), Preset::kBlockMinimal);
  CHECK_THROWS_WITH_AS(build_basis_family(cubic(2), 2, w2),
                       doctest::Contains("Bt_J(1,0),l=1 + (-1/1)*Bt_J(0,1),l=2"), DependentFamily);
  CHECK_NOTHROW(build_basis_family(m, 4, ws, JConvention::kKMinus2));
}

TEST_CASE("normalization residual") {
  const auto m = sphere(1);
  const WeightSystem ws(m, Preset::kBlockMinimal);
  const auto fam = build_basis_family(m, 4, ws);
  const R r{1};
  auto res = normalization_residual(Poly(1), fam, ws);
  CHECK(res.residual.is_zero());
  CHECK(res.certificate.empty());

  const Poly zz = r.z() * r.zb();
  res = normalization_residual(zz * zz, fam, ws);
  // the residual lies off the space and projecting it away lands inside
  CHECK_FALSE(res.certificate.empty());
  CHECK_FALSE(res.residual.is_zero());
  const auto inside = normalization_residual(zz * zz - res.residual, fam, ws);
  CHECK(inside.certificate.empty());
  CHECK(inside.residual.is_zero());

  // x-bearing top quotient violates the x* condition
  const auto lit = normalization_residual(zz * zz, fam, ws, KernelClosure::kLiteral);
  CHECK(lit.certificate.size() <= res.certificate.size());
}
