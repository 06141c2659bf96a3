#include "normform/hypersurface.hpp"

#include <span>

#include "normform/errors.hpp"

namespace normform {
namespace {

Poly imag_of(const Poly& p) { return imag_part(p); }

/// Real-universe images (F, F̄, Re G) of the graph of φ, one per real slot.
std::vector<Poly> graph_image(const FormalMap& map, const Poly& phi, int order) {
  const int n = map.n();
  std::vector<Poly> out(static_cast<std::size_t>(RealVars::slots(n)));
  for (int k = 0; k < n; ++k) {
    Poly f = on_graph(map.F[static_cast<std::size_t>(k)], phi, order);
    out[static_cast<std::size_t>(RealVars::zbar(n, k))] = conjugate(f);
    out[static_cast<std::size_t>(RealVars::z(k))] = std::move(f);
  }
  out[static_cast<std::size_t>(RealVars::x(n))] = real_part(on_graph(map.G, phi, order));
  return out;
}

/// Inverse of y ↦ y + h(y) through plain degree `order`, by fixed point.
///
/// The linear part of h is nilpotent (only w enters F linearly), so every
/// two sweeps raise the order of the error by at least one.
std::vector<Poly> invert_near_identity(const std::vector<Poly>& h, int n, int order) {
  const int slots = RealVars::slots(n);
  std::vector<Poly> id(static_cast<std::size_t>(slots));
  for (int s = 0; s < slots; ++s) id[static_cast<std::size_t>(s)] = Poly::variable(n, s);
  std::vector<Poly> y = id;
  const int max_sweeps = 4 * order + 8;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    std::vector<Poly> next(static_cast<std::size_t>(slots));
    for (int k = 0; k < n; ++k) {
      Poly zk = id[static_cast<std::size_t>(k)] -
                compose<Poly>(h[static_cast<std::size_t>(k)], std::span<const Poly>(y), n, order);
      next[static_cast<std::size_t>(RealVars::zbar(n, k))] = conjugate(zk);
      next[static_cast<std::size_t>(k)] = std::move(zk);
    }
    const auto xs = static_cast<std::size_t>(RealVars::x(n));
    next[xs] = id[xs] - compose<Poly>(h[xs], std::span<const Poly>(y), n, order);
    if (next == y) return y;
    y = std::move(next);
  }
  throw std::logic_error("series inversion did not stabilize");
}

}  // namespace

Poly DefiningSeries::tail_sum() const {
  Poly out(model.n);
  for (const auto& [k, p] : tail) out += p;
  return out;
}

Poly DefiningSeries::phi() const { return model.model_term() + tail_sum(); }

std::map<int, Poly> DefiningSeries::tail_through(int max_class) const {
  std::map<int, Poly> out;
  for (const auto& [k, p] : tail) {
    if (k <= max_class && !p.is_zero()) out.emplace(k, p);
  }
  return out;
}

DefiningSeries defining_from_phi(const ModelSpec& model, const Poly& phi, int order, const WeightSystem& ws) {
  DefiningSeries m{model, {}, order};
  const Poly rest = phi.truncate(order) - model.model_term().truncate(order);
  for (auto& [k, p] : weighted_parts(rest, ws)) m.tail.emplace(k, std::move(p));
  return m;
}

void validate_defining(const DefiningSeries& m, const WeightSystem& ws) {
  validate_model(m.model);
  if (m.order < m.model.k0 - m.model.s) {
    throw ValidationError("order", "order " + std::to_string(m.order) + " does not cover the model term");
  }
  for (const auto& [k, p] : m.tail) {
    if (p.n() != m.model.n) throw ValidationError("tail variables", "class " + std::to_string(k));
    if (!is_real(p)) throw ValidationError("tail real-valued", "class " + std::to_string(k) + " is not real");
    if (!p.is_zero() && k < m.model.k0 + 1) {
      throw ValidationError("tail classes >= k0+1", "class " + std::to_string(k) + " is below k0+1");
    }
    for (const auto& t : p.terms()) {
      const int w = ws.weight(t.key);
      if (w != k) throw NotHomogeneous(Monomial::from_key(t.key, p.n()).str(), w, k);
      if (key_degree(t.key) > m.order) {
        throw ValidationError("truncation", "monomial " + Monomial::from_key(t.key, p.n()).str() +
                                                " exceeds order " + std::to_string(m.order));
      }
    }
  }
}

DefiningSeries model_defining(const ModelSpec& model, int order) {
  validate_model(model);
  return {model, {}, std::max(order, model.k0 - model.s)};
}

FormalMap FormalMap::identity(int n, int order) {
  FormalMap m;
  for (int k = 0; k < n; ++k) m.F.push_back(HoloPoly::variable(n, HoloVars::z(k)));
  m.G = HoloPoly::variable(n, HoloVars::w(n));
  m.order = order;
  return m;
}

FormalMap FormalMap::truncated(int new_order) const {
  FormalMap m;
  for (const auto& f : F) m.F.push_back(f.truncate(new_order));
  m.G = G.truncate(new_order);
  m.order = std::min(order, new_order);
  return m;
}

namespace {

int holo_weight(MonoKey key, int n, int k0) {
  int w = k0 * key_exponent(key, HoloVars::w(n));
  for (int k = 0; k < n; ++k) w += key_exponent(key, HoloVars::z(k));
  return w;
}

}  // namespace

void validate_map(const FormalMap& map, int k0) {
  const int n = map.n();
  check_n(n);
  if (static_cast<int>(map.F.size()) != n) throw ValidationError("map shape", "F must have N components");
  for (int l = 0; l < n; ++l) {
    const HoloPoly inc = map.F[static_cast<std::size_t>(l)] - HoloPoly::variable(n, HoloVars::z(l));
    for (const auto& t : inc.terms()) {
      if (holo_weight(t.key, n, k0) < 2) {
        throw ValidationError("F = z + O(2)",
                              "F_" + std::to_string(l + 1) + " has " + HoloMonomial::from_key(t.key, n).str());
      }
    }
  }
  const HoloPoly inc = map.G - HoloPoly::variable(n, HoloVars::w(n));
  for (const auto& t : inc.terms()) {
    if (holo_weight(t.key, n, k0) < k0 + 1) {
      throw ValidationError("G = w + O(k0+1)", "G has " + HoloMonomial::from_key(t.key, n).str());
    }
  }
}

bool has_identity_linear_part(const FormalMap& map, int k0) {
  try {
    validate_map(map, k0);
  } catch (const ValidationError&) {
    return false;
  }
  return true;
}

bool jet_conditions_check(const FormalMap& map, const ModelSpec& model) {
  const int n = map.n();
  const MonoKey w = key_unit(HoloVars::w(n));
  for (const auto& f : map.F) {
    if (!f.coeff(w).im.is_zero()) return false;
  }
  return map.G.coeff(w * static_cast<MonoKey>(model.k0)).re.is_zero();
}

FormalMap compose_maps(const FormalMap& g, const FormalMap& f) {
  const int order = std::min(g.order, f.order);
  std::vector<HoloPoly> inner = f.F;
  inner.push_back(f.G);
  FormalMap out;
  for (const auto& c : g.F) out.F.push_back(substitute(c, inner, order));
  out.G = substitute(g.G, inner, order);
  out.order = order;
  return out;
}

Poly on_graph(const HoloPoly& h, const Poly& phi, int order) {
  const int n = h.n();
  std::vector<Poly> bindings;
  for (int k = 0; k < n; ++k) bindings.push_back(Poly::variable(n, RealVars::z(k)));
  bindings.push_back(Poly::variable(n, RealVars::x(n)) + phi * Gaussian::i());
  return substitute(h, bindings, order);
}

DefiningSeries transform_defining(const DefiningSeries& m, const FormalMap& map, int order, const WeightSystem& ws) {
  if (order > m.order || order > map.order) {
    throw OrderOverflow("order " + std::to_string(order) + " exceeds the available truncation (series " +
                        std::to_string(m.order) + ", map " + std::to_string(map.order) + ")");
  }
  const int n = m.model.n;
  const Poly phi = m.phi().truncate(order);
  std::vector<Poly> psi = graph_image(map, phi, order);
  std::vector<Poly> h = psi;
  for (int s = 0; s < RealVars::slots(n); ++s) h[static_cast<std::size_t>(s)] -= Poly::variable(n, s);
  const std::vector<Poly> inv = invert_near_identity(h, n, order);
  const Poly im_g = imag_of(on_graph(map.G, phi, order));
  const Poly phi_new = compose<Poly>(im_g, std::span<const Poly>(inv), n, order);
  return defining_from_phi(m.model, phi_new, order, ws);
}

DefiningSeries transform_defining(const DefiningSeries& m, const FormalMap& map, int order) {
  return transform_defining(m, map, order, WeightSystem(m.model, Preset::kBlockMinimal));
}

Poly graph_residual(const DefiningSeries& source, const FormalMap& map, const DefiningSeries& image, int order) {
  const int n = source.model.n;
  const Poly phi = source.phi().truncate(order);
  const std::vector<Poly> psi = graph_image(map, phi, order);
  const Poly lhs = imag_of(on_graph(map.G, phi, order));
  const Poly rhs = compose<Poly>(image.phi().truncate(order), std::span<const Poly>(psi), n, order);
  return lhs - rhs;
}

}  // namespace normform
