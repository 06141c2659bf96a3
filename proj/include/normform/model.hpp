#pragma once

#include <vector>

#include "normform/poly.hpp"

namespace normform {

/// Model hypersurface Im w = (Re w)^s · P(z, z̄) in C^{N+1}.
struct ModelSpec {
  int n = 1;
  int s = 0;
  int k0 = 2;
  Poly P;

  /// Exponent keys of the monomials of P, in canonical order.
  [[nodiscard]] std::vector<MonoKey> blocks() const;
  /// The divisor x + i·x^s·P.
  [[nodiscard]] Poly divisor() const;
  /// x^s·P, the right-hand side of the model.
  [[nodiscard]] Poly model_term() const;

  friend bool operator==(const ModelSpec& a, const ModelSpec& b) {
    return a.n == b.n && a.s == b.s && a.k0 == b.k0 && a.P == b.P;
  }
};

/// Injectivity of a ↦ Σ_{k,l} ∂P/∂z_k · a_{kl} · z_l, by an exact rank test.
bool check_nondegeneracy(const ModelSpec& model);

/// Throws ValidationError naming the first violated ModelSpec invariant.
void validate_model(const ModelSpec& model);

/// Validated constructor.
ModelSpec make_model(int n, int s, int k0, Poly P);

/// ⟨z, z⟩ = Σ z_k z̄_k.
Poly hermitian_form(int n);

}  // namespace normform
