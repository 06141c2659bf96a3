#pragma once

#include <map>
#include <vector>

#include "normform/model.hpp"
#include "normform/weights.hpp"

namespace normform {

/// Im w = x^s·P(z, z̄) + Σ_k φ_k(z, z̄, x), x = Re w.
///
/// The series is exact through plain degree `order`. Since pseudo-weight
/// bounds plain degree from below, every class k ≤ order is complete;
/// classes above `order` may hold a partial set of terms.
struct DefiningSeries {
  ModelSpec model;
  std::map<int, Poly> tail;  // pseudo-weight class → φ_k
  int order = 0;

  /// x^s·P + Σ tail, the full right-hand side.
  [[nodiscard]] Poly phi() const;
  [[nodiscard]] Poly tail_sum() const;
  /// Tail restricted to classes ≤ max_class.
  [[nodiscard]] std::map<int, Poly> tail_through(int max_class) const;
  /// True iff every class ≤ max_class is zero.
  [[nodiscard]] bool normal_through(int max_class) const { return tail_through(max_class).empty(); }
};

/// Builds a series from its full right-hand side φ: truncates at plain
/// degree `order`, removes the model term and groups the rest by class.
DefiningSeries defining_from_phi(const ModelSpec& model, const Poly& phi, int order, const WeightSystem& ws);

/// Checks reality, homogeneity of each class and the lower class bound.
void validate_defining(const DefiningSeries& m, const WeightSystem& ws);

/// The model Im w = x^s·P with empty tail.
DefiningSeries model_defining(const ModelSpec& model, int order = 0);

/// Holomorphic change of coordinates z' = F(z, w), w' = G(z, w), exact
/// through plain degree `order` in (z, w).
struct FormalMap {
  std::vector<HoloPoly> F;
  HoloPoly G;
  int order = 0;

  static FormalMap identity(int n, int order);
  [[nodiscard]] int n() const { return G.n(); }
  [[nodiscard]] FormalMap truncated(int order) const;

  friend bool operator==(const FormalMap& a, const FormalMap& b) {
    return a.F == b.F && a.G == b.G && a.order == b.order;
  }
};

/// F_l − z_l has only monomials of weight ≥ 2 and G − w only of weight
/// ≥ k0 + 1 (z weighs 1, w weighs k0).
bool has_identity_linear_part(const FormalMap& map, int k0);

/// Throws ValidationError unless the map has identity linear part.
void validate_map(const FormalMap& map, int k0);

/// Re(k0!·G[w^k0]) = 0 and Im(F_l[w]) = 0 for every l.
bool jet_conditions_check(const FormalMap& map, const ModelSpec& model);

/// g ∘ f through the smaller order.
FormalMap compose_maps(const FormalMap& g, const FormalMap& f);

/// Real-universe series of a holomorphic function restricted to the graph
/// w = x + i·φ.
Poly on_graph(const HoloPoly& h, const Poly& phi, int order);

/// Defining series of the image of M under the map.
DefiningSeries transform_defining(const DefiningSeries& m, const FormalMap& map, int order, const WeightSystem& ws);
DefiningSeries transform_defining(const DefiningSeries& m, const FormalMap& map, int order);

/// Im G − φ'(F, F̄, Re G) on the graph of M, through plain degree `order`.
/// Zero iff `image` is the transform of `source` under the map.
Poly graph_residual(const DefiningSeries& source, const FormalMap& map, const DefiningSeries& image, int order);

}  // namespace normform
