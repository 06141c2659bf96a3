#include "normform/normalizer.hpp"

#include <chrono>
#include <tuple>

#include "normform/errors.hpp"

namespace normform {
namespace {

Rational factorial_weight(MonoKey key, int slots) {
  Rational f(1);
  for (int s = 0; s < slots; ++s) {
    for (int j = 2; j <= key_exponent(key, s); ++j) f *= Rational(j);
  }
  return f;
}

int holo_weight(MonoKey key, int n, int k0) {
  int w = k0 * key_exponent(key, HoloVars::w(n));
  for (int k = 0; k < n; ++k) w += key_exponent(key, HoloVars::z(k));
  return w;
}

void holo_monomials(int n, int max_degree, std::vector<MonoKey>& out) {
  const int slots = HoloVars::slots(n);
  std::function<void(int, MonoKey, int)> rec = [&](int slot, MonoKey key, int budget) {
    if (slot == slots) {
      out.push_back(key);
      return;
    }
    for (int e = 0; e <= budget; ++e) rec(slot + 1, key + key_unit(slot) * static_cast<MonoKey>(e), budget - e);
  };
  rec(0, 0, max_degree);
  std::sort(out.begin(), out.end());
}

/// Fischer-weighted inner products aᵀ·G·b for every pair of columns.
Matrix<Rational> weighted_normal(const Matrix<Rational>& a, const Vector<Rational>& gram) {
  const std::size_t cols = a.cols();
  Matrix<Rational> m(cols, cols);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = i; j < cols; ++j) {
      Rational s;
      for (std::size_t r = 0; r < a.rows(); ++r) {
        if (a(r, i).is_zero() || a(r, j).is_zero()) continue;
        s += a(r, i) * a(r, j) * gram[r];
      }
      m(i, j) = s;
      m(j, i) = s;
    }
  }
  return m;
}

Vector<Rational> weighted_project(const Matrix<Rational>& a, const Vector<Rational>& gram, const Vector<Rational>& t) {
  Vector<Rational> out(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    Rational s;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (a(r, c).is_zero() || t[r].is_zero()) continue;
      s += a(r, c) * t[r] * gram[r];
    }
    out[c] = s;
  }
  return out;
}

}  // namespace

std::string Unknown::label(int n) const {
  const std::string comp = component < n ? "F" + std::to_string(component + 1) : "G";
  return (imaginary ? "Im " : "Re ") + comp + "[" + HoloMonomial::from_key(monomial, n).str() + "]";
}

std::string Column::label(int n) const {
  std::string out;
  for (const auto& [u, c] : parts) {
    if (!out.empty()) out += " + ";
    std::string coef = c.str();
    if (coef.size() > 2 && coef.ends_with("/1")) coef.resize(coef.size() - 2);
    out += (c == Rational(1) ? std::string() : coef + "*") + u.label(n);
  }
  return out;
}

RealSlice::RealSlice(int n, std::vector<MonoKey> monomials) : n_(n), monomials_(std::move(monomials)) {
  std::sort(monomials_.begin(), monomials_.end());
  const int slots = RealVars::slots(n);
  for (const MonoKey m : monomials_) {
    const MonoKey c = conjugate_key(m, n);
    if (c < m) continue;
    const Rational f = factorial_weight(m, slots);
    coords_.push_back({m, false});
    if (c == m) {
      gram_.push_back(f);
    } else {
      gram_.push_back(f * Rational(2));
      coords_.push_back({m, true});
      gram_.push_back(f * Rational(2));
    }
  }
}

Vector<Rational> RealSlice::coordinates(const Poly& p) const {
  Vector<Rational> v(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const Gaussian c = p.coeff(coords_[i].key);
    v[i] = coords_[i].imaginary ? c.im : c.re;
  }
  return v;
}

Poly RealSlice::poly(const Vector<Rational>& v) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (v[i].is_zero()) continue;
    const MonoKey m = coords_[i].key;
    const MonoKey c = conjugate_key(m, n_);
    if (!coords_[i].imaginary) {
      terms.push_back({m, Gaussian(v[i])});
      if (c != m) terms.push_back({c, Gaussian(v[i])});
    } else {
      terms.push_back({m, Gaussian(Rational(0), v[i])});
      terms.push_back({c, Gaussian(Rational(0), -v[i])});
    }
  }
  return Poly::from_terms(n_, std::move(terms));
}

NormalizerPlan::NormalizerPlan(const ModelSpec& model, int order)
    : model_(model), order_(order), ws_(model, Preset::kBlockMinimal), phi0_(model.model_term()) {
  validate_model(model_);
  const int n = model_.n;
  const int k0 = model_.k0;
  std::vector<MonoKey> monos;
  holo_monomials(n, order_, monos);

  auto lowest_class = [&](const Poly& img) {
    int cls = std::numeric_limits<int>::max();
    for (const auto& t : img.terms()) cls = std::min(cls, ws_.weight(t.key));
    return cls;
  };

  std::map<int, std::vector<Column>> by_class;
  for (int comp = 0; comp <= n; ++comp) {
    const int min_weight = comp < n ? 2 : k0 + 1;
    for (const MonoKey m : monos) {
      if (holo_weight(m, n, k0) < min_weight) continue;
      for (const bool imaginary : {false, true}) {
        const Unknown u{comp, m, imaginary};
        Poly img = unknown_image(u);
        if (img.is_zero()) continue;
        const int cls = lowest_class(img);
        if (cls > order_) continue;
        by_class[cls].push_back({{{u, Rational(1)}}, std::move(img), cls});
      }
    }
  }

  const MonoKey w1 = key_unit(HoloVars::w(n));
  const MonoKey wk = w1 * static_cast<MonoKey>(k0);
  auto jet_pinned = [&](const Column& c) {
    if (c.parts.size() != 1) return false;
    const Unknown& u = c.parts.front().first;
    return (u.component < n && u.monomial == w1 && u.imaginary) ||
           (u.component == n && u.monomial == wk && !u.imaginary);
  };
  // Kernel directions are expressed through the most pinnable column:
  // z-free unknowns first, then F before G.
  auto pin_key = [&](const Column& c) {
    const Unknown& u = c.parts.front().first;
    bool has_z = false;
    for (int k = 0; k < n; ++k) has_z = has_z || key_exponent(u.monomial, HoloVars::z(k)) > 0;
    return std::make_tuple(c.parts.size(), has_z ? 1 : 0, u.component < n ? 0 : 1, u.component, u.monomial,
                           u.imaginary ? 1 : 0);
  };

  for (auto it = by_class.begin(); it != by_class.end(); ++it) {
    const int cls = it->first;
    ClassSystem cs;
    cs.weight_class = cls;
    cs.slice = RealSlice(n, monomials_of_weight(ws_, cls));
    std::vector<Column> active;
    for (auto& c : it->second) {
      cs.columns.push_back(c);
      if (jet_pinned(c)) {
        cs.jet_pinned.push_back(std::move(c));
      } else {
        active.push_back(std::move(c));
      }
    }
    std::sort(active.begin(), active.end(),
              [&](const Column& a, const Column& b) { return pin_key(b) < pin_key(a); });
    Matrix<Rational> a(cs.slice.dim(), active.size());
    for (std::size_t c = 0; c < active.size(); ++c) {
      const auto v = cs.slice.coordinates(weighted_part(active[c].image, ws_, cls));
      for (std::size_t r = 0; r < v.size(); ++r) a(r, c) = v[r];
    }
    const auto ech = row_reduce(a);
    cs.rank = ech.rank();
    std::vector<bool> pivot(active.size(), false);
    for (const auto c : ech.pivot_cols) pivot[c] = true;

    // Each kernel vector becomes a column of the class where its image
    // first becomes nonzero; with zero image it is a symmetry of the
    // linearized problem and is pinned.
    for (const auto& v : nullspace(a)) {
      Column k;
      k.image = Poly(n);
      std::map<std::tuple<int, MonoKey, bool>, Rational> parts;
      for (std::size_t c = 0; c < active.size(); ++c) {
        if (v[c].is_zero()) continue;
        k.image += active[c].image * Gaussian(v[c]);
        for (const auto& [u, coef] : active[c].parts) parts[{u.component, u.monomial, u.imaginary}] += coef * v[c];
      }
      for (const auto& [key, coef] : parts) {
        if (coef.is_zero()) continue;
        k.parts.push_back({Unknown{std::get<0>(key), std::get<1>(key), std::get<2>(key)}, coef});
      }
      // Keep the free column first so labels name the pinned unknown.
      for (std::size_t c = 0; c < active.size(); ++c) {
        if (!pivot[c] && v[c] == Rational(1)) {
          const Unknown& lead = active[c].parts.front().first;
          auto pos = std::find_if(k.parts.begin(), k.parts.end(), [&](const auto& p) {
            return p.first.component == lead.component && p.first.monomial == lead.monomial &&
                   p.first.imaginary == lead.imaginary;
          });
          if (pos != k.parts.end()) std::rotate(k.parts.begin(), pos, pos + 1);
          break;
        }
      }
      if (k.image.is_zero()) {
        k.weight_class = cls;
        cs.symmetries.push_back(std::move(k));
        continue;
      }
      k.weight_class = lowest_class(k.image);
      cs.deferred.push_back(k);
      if (k.weight_class <= order_) by_class[k.weight_class].push_back(std::move(k));
    }

    cs.image = Matrix<Rational>(cs.slice.dim(), cs.rank);
    std::size_t out = 0;
    for (std::size_t c = 0; c < active.size(); ++c) {
      if (!pivot[c]) continue;
      for (std::size_t r = 0; r < cs.slice.dim(); ++r) cs.image(r, out) = a(r, c);
      cs.solved.push_back(std::move(active[c]));
      ++out;
    }
    cs.normal_matrix = weighted_normal(cs.image, cs.slice.gram());
    classes_.push_back(std::move(cs));
  }
}

const ClassSystem* NormalizerPlan::find(int weight_class) const {
  for (const auto& cs : classes_) {
    if (cs.weight_class == weight_class) return &cs;
  }
  return nullptr;
}

Poly NormalizerPlan::unknown_image(const Unknown& u) const {
  const int n = model_.n;
  const Gaussian c = u.imaginary ? Gaussian::i() : Gaussian(1);
  const Poly val = on_graph(HoloPoly::monomial(n, u.monomial, c), phi0_, order_);
  if (u.component == n) {
    // Im g − φ_x·Re g
    Poly out = imag_part(val);
    if (model_.s > 0) {
      const Poly phix = phi0_.derivative(key_unit(RealVars::x(n)));
      out -= poly_mul(phix, real_part(val), order_);
    }
    return out.truncate(order_);
  }
  // −2·Re(φ_{z_l}·f)
  const Poly phiz = phi0_.derivative(key_unit(RealVars::z(u.component)));
  return (real_part(poly_mul(phiz, val, order_)) * Gaussian(-2)).truncate(order_);
}

bool NormalizerPlan::is_normal(const ClassSystem& cs, const Poly& part) const {
  const auto t = cs.slice.coordinates(part);
  for (const auto& v : weighted_project(cs.image, cs.slice.gram(), t)) {
    if (!v.is_zero()) return false;
  }
  return true;
}

Poly NormalizerPlan::normal_part(const ClassSystem& cs, const Poly& part) const {
  const auto u = solve(cs, part);
  const auto t = cs.slice.coordinates(part);
  Vector<Rational> v(t);
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < u.size(); ++c) {
      if (!u[c].is_zero() && !cs.image(r, c).is_zero()) v[r] -= cs.image(r, c) * u[c];
    }
  }
  return cs.slice.poly(v);
}

int NormalizerPlan::first_abnormal(const DefiningSeries& m) const {
  for (const auto& cs : classes_) {
    const auto it = m.tail.find(cs.weight_class);
    if (it != m.tail.end() && !is_normal(cs, it->second)) return cs.weight_class;
  }
  return 0;
}

Vector<Rational> NormalizerPlan::solve(const ClassSystem& cs, const Poly& part) const {
  const auto t = cs.slice.coordinates(part);
  const auto rhs = weighted_project(cs.image, cs.slice.gram(), t);
  auto res = normform::solve(cs.normal_matrix, rhs);
  if (res.status != SolveStatus::kUnique) {
    throw SolverFinding(SolverFinding::Kind::kNonUniqueSolution, cs.weight_class, "singular normal matrix");
  }
  return res.solution;
}

FormalMap increment_map(const ClassSystem& cs, const Vector<Rational>& coeffs, int n, int order,
                        const Rational& sign) {
  FormalMap m = FormalMap::identity(n, order);
  for (std::size_t i = 0; i < cs.solved.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (const auto& [u, weight] : cs.solved[i].parts) {
      const Rational c = coeffs[i] * sign * weight;
      const Gaussian g = u.imaginary ? Gaussian(Rational(0), c) : Gaussian(c);
      HoloPoly& target = u.component < n ? m.F[static_cast<std::size_t>(u.component)] : m.G;
      target += HoloPoly::monomial(n, u.monomial, g);
    }
  }
  return m;
}

NormalizationState solve_degree(NormalizationState state, const NormalizerPlan& plan, bool strict) {
  const auto start = std::chrono::steady_clock::now();
  const int T = state.T;
  const int n = state.model.n;
  const int order = plan.order();
  ClassRecord rec;
  rec.weight_class = T;
  const ClassSystem* cs = plan.find(T);
  if (cs != nullptr) {
    rec.rows = cs->slice.dim();
    rec.unknowns = cs->columns.size();
    rec.jet_pinned = cs->jet_pinned.size();
    rec.rank = cs->rank;
    rec.kernel_after_jets = cs->deferred.size() + cs->symmetries.size();
    for (const auto& c : cs->deferred) rec.deferred.push_back(c.label(n));
    for (const auto& c : cs->symmetries) rec.symmetries.push_back(c.label(n));
    if (strict && !cs->symmetries.empty()) {
      state.diagnostics.push_back(rec);
      throw SolverFinding(SolverFinding::Kind::kNonUniqueSolution, T, "kernel witness " + rec.symmetries.front());
    }
    constexpr int kMaxIterations = 6;
    while (true) {
      const auto it = state.current_tail.tail.find(T);
      const Poly part = it == state.current_tail.tail.end() ? Poly(n) : it->second;
      if (plan.is_normal(*cs, part)) break;
      if (rec.iterations == kMaxIterations) {
        rec.normal = false;
        state.diagnostics.push_back(rec);
        throw SolverFinding(SolverFinding::Kind::kNotTriangular, T, "class did not settle after Newton steps");
      }
      const auto coeffs = plan.solve(*cs, part);
      const FormalMap step = increment_map(*cs, coeffs, n, order, Rational(-1));
      DefiningSeries next = transform_defining(state.current_tail, step, order, plan.weights());
      if (next.tail_through(T - 1) != state.current_tail.tail_through(T - 1)) rec.triangular = false;
      state.current_map = compose_maps(step, state.current_map);
      state.current_tail = std::move(next);
      ++rec.iterations;
    }
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  state.diagnostics.push_back(std::move(rec));
  ++state.T;
  return state;
}

FormalMap jet_correction(const FormalMap& map, const ModelSpec& model) {
  const int n = map.n();
  const MonoKey w1 = key_unit(HoloVars::w(n));
  const MonoKey wk = w1 * static_cast<MonoKey>(model.k0);
  FormalMap fix = FormalMap::identity(n, map.order);
  for (int l = 0; l < n; ++l) {
    const Rational c = map.F[static_cast<std::size_t>(l)].coeff(w1).im;
    if (!c.is_zero()) fix.F[static_cast<std::size_t>(l)] -= HoloPoly::monomial(n, w1, Gaussian(Rational(0), c));
  }
  const Rational c = map.G.coeff(wk).re;
  if (!c.is_zero()) fix.G -= HoloPoly::monomial(n, wk, Gaussian(c));
  return fix;
}

NormalFormResult normalize(const DefiningSeries& m, const NormalizerPlan& plan, bool strict) {
  const int order = plan.order();
  if (!(m.model == plan.model())) throw ValidationError("model", "plan built for a different model");
  if (order > m.order) {
    throw OrderOverflow("order " + std::to_string(order) + " exceeds the series order " + std::to_string(m.order));
  }
  NormalizationState state{m.model, FormalMap::identity(m.model.n, order),
                           defining_from_phi(m.model, m.phi(), order, plan.weights()), m.model.k0 + 1, {}};
  // A step may move lower classes when the grading is not a filtration;
  // sweep again from the lowest class that left the normal space.
  constexpr int kMaxSweeps = 6;
  for (int sweep = 0;; ++sweep) {
    while (state.T <= order) {
      state = solve_degree(std::move(state), plan, strict);
      state.diagnostics.back().sweep = sweep;
    }
    // Composition can refill the pinned jet coordinates; clear them exactly.
    if (!jet_conditions_check(state.current_map, state.model)) {
      const FormalMap fix = jet_correction(state.current_map, state.model);
      state.current_tail = transform_defining(state.current_tail, fix, order, plan.weights());
      state.current_map = compose_maps(fix, state.current_map);
    }
    const int bad = plan.first_abnormal(state.current_tail);
    if (bad == 0) break;
    if (sweep + 1 == kMaxSweeps) {
      throw SolverFinding(SolverFinding::Kind::kNotTriangular, bad, "class left the normal space in every sweep");
    }
    state.T = bad;
  }
  return {std::move(state.current_tail), std::move(state.current_map), std::move(state.diagnostics)};
}

NormalFormResult normalize(const DefiningSeries& m, int order, bool strict) {
  return normalize(m, NormalizerPlan(m.model, order), strict);
}

}  // namespace normform
