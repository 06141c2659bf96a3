#pragma once

#include <random>

#include "normform/hypersurface.hpp"

namespace normform::testing {

/// Variable factory for an N-variable real universe.
struct R {
  int n = 1;
  [[nodiscard]] Poly z(int k = 0) const { return Poly::variable(n, RealVars::z(k)); }
  [[nodiscard]] Poly zb(int k = 0) const { return Poly::variable(n, RealVars::zbar(n, k)); }
  [[nodiscard]] Poly x() const { return Poly::variable(n, RealVars::x(n)); }
  [[nodiscard]] Poly c(Gaussian g) const { return Poly::constant(n, std::move(g)); }
};

/// Variable factory for the holomorphic universe.
struct H {
  int n = 1;
  [[nodiscard]] HoloPoly z(int k = 0) const { return HoloPoly::variable(n, HoloVars::z(k)); }
  [[nodiscard]] HoloPoly w() const { return HoloPoly::variable(n, HoloVars::w(n)); }
  [[nodiscard]] HoloPoly c(Gaussian g) const { return HoloPoly::constant(n, std::move(g)); }
};

inline Gaussian gi(std::int64_t re, std::int64_t im = 0) { return {Rational(re), Rational(im)}; }

inline Rational random_rational(std::mt19937& rng, int height) {
  std::uniform_int_distribution<int> num(-height, height);
  std::uniform_int_distribution<int> den(1, height);
  return Rational(num(rng), den(rng));
}

inline Gaussian random_gaussian(std::mt19937& rng, int height) {
  return {random_rational(rng, height), random_rational(rng, height)};
}

/// Random polynomial with `terms` terms of plain degree ≤ max_degree.
template <class P>
P random_poly(std::mt19937& rng, int n, int terms, int max_degree, int height = 4, bool constant = true) {
  const int nslots = P(n).slots();
  std::vector<Term> out;
  std::uniform_int_distribution<int> pick(0, nslots - 1);
  std::uniform_int_distribution<int> deg(constant ? 0 : 1, max_degree);
  for (int t = 0; t < terms; ++t) {
    MonoKey key = 0;
    const int d = deg(rng);
    for (int i = 0; i < d; ++i) key += key_unit(pick(rng));
    out.push_back({key, random_gaussian(rng, height)});
  }
  return P::from_terms(n, std::move(out));
}

inline int holo_weight(MonoKey key, int n, int k0) {
  int w = k0 * key_exponent(key, HoloVars::w(n));
  for (int k = 0; k < n; ++k) w += key_exponent(key, HoloVars::z(k));
  return w;
}

/// Random map with identity linear part satisfying the jet conditions;
/// coefficient heights ≤ 4, degree ≤ 4.
inline FormalMap random_normalized_map(std::mt19937& rng, int n, int k0, int order) {
  FormalMap g = FormalMap::identity(n, order);
  const MonoKey w1 = key_unit(HoloVars::w(n));
  for (int c = 0; c <= n; ++c) {
    const HoloPoly r = random_poly<HoloPoly>(rng, n, 5, 4, 4, false);
    for (const auto& t : r.terms()) {
      if (holo_weight(t.key, n, k0) < (c < n ? 2 : k0 + 1)) continue;
      Gaussian coef = t.coef;
      if (c < n && t.key == w1) coef.im = Rational(0);
      if (c == n && t.key == w1 * static_cast<MonoKey>(k0)) coef.re = Rational(0);
      (c < n ? g.F[static_cast<std::size_t>(c)] : g.G) += HoloPoly::monomial(n, t.key, coef);
    }
  }
  return g;
}

}  // namespace normform::testing
