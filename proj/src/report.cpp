#include "normform/report.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "normform/errors.hpp"

namespace normform {

ParsedInput parse_input(const Json& j, RunConfig config) {
  DefiningSeries m = defining_from_json(j);
  const WeightSystem ws(m.model, config.preset);
  validate_model_homogeneity(m.model, ws);
  if (!check_nondegeneracy(m.model)) throw ValidationError("nondegeneracy", "P is degenerate");
  // Tails may arrive keyed loosely; regroup by weight before validating.
  m = defining_from_phi(m.model, m.phi(), m.order, ws);
  validate_defining(m, ws);
  if (config.order == 0) config.order = m.order;
  if (config.order > m.order) {
    throw ValidationError("order", "requested order " + std::to_string(config.order) + " exceeds the input order " +
                                       std::to_string(m.order));
  }
  if (config.subcommand == "normalize" && config.order < m.model.k0 + 1) {
    throw ValidationError("order >= k0+1", "order " + std::to_string(config.order));
  }
  return {m.model, m, config};
}

ParsedInput parse_input(const std::string& path, RunConfig config) {
  config.input_path = path;
  return parse_input(read_json_file(path), std::move(config));
}

// ---------------------------------------------------------------------------
// Oracle. Shares nothing with fischer_decompose beyond the polynomial type:
// its own weights, slices, pairing and elimination.

namespace {

struct OracleGrading {
  const ModelSpec& model;
  std::vector<std::vector<int>> blocks;  // exponent vectors over the z, z̄ slots
  bool plain = false;

  int pw(MonoKey key) const {
    const int n = model.n;
    std::vector<int> e(static_cast<std::size_t>(2 * n));
    for (int s = 0; s < 2 * n; ++s) e[static_cast<std::size_t>(s)] = key_exponent(key, s);
    const int ex = key_exponent(key, 2 * n);
    int best = 1 << 20;
    std::function<void(std::size_t, int)> rec = [&](std::size_t b, int t) {
      if (b == blocks.size()) {
        int rest = 0;
        for (const int v : e) rest += v;
        best = std::min(best, model.k0 * t + model.k0 * (ex - model.s * t) + rest);
        return;
      }
      rec(b + 1, t);
      int taken = 0;
      while (model.s * (t + taken + 1) <= ex || model.s == 0) {
        bool fits = true;
        for (std::size_t s = 0; s < e.size(); ++s) fits = fits && e[s] >= blocks[b][s];
        if (!fits) break;
        for (std::size_t s = 0; s < e.size(); ++s) e[s] -= blocks[b][s];
        ++taken;
        rec(b + 1, t + taken);
      }
      for (std::size_t s = 0; s < e.size(); ++s) e[s] += taken * blocks[b][s];
    };
    rec(0, 0);
    return best;
  }

  int degree(MonoKey key) const { return plain ? key_degree(key) : pw(key); }

  std::vector<MonoKey> slice(int d) const {
    const int slots = RealVars::slots(model.n);
    std::vector<MonoKey> out;
    std::vector<int> e(static_cast<std::size_t>(slots));
    std::function<void(int, int)> rec = [&](int slot, int left) {
      if (slot == slots) {
        MonoKey key = 0;
        for (int s = 0; s < slots; ++s) key += key_unit(s) * static_cast<MonoKey>(e[static_cast<std::size_t>(s)]);
        if (degree(key) == d) out.push_back(key);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        e[static_cast<std::size_t>(slot)] = v;
        rec(slot + 1, left - v);
      }
      e[static_cast<std::size_t>(slot)] = 0;
    };
    if (d >= 0) rec(0, d);
    return out;
  }
};

Gaussian oracle_pairing(const Poly& a, const Poly& b) {
  Gaussian acc;
  for (const auto& t : a.terms()) {
    const Gaussian c = b.coeff(t.key);
    if (c.is_zero()) continue;
    Rational f(1);
    for (int s = 0; s < a.slots(); ++s) {
      for (int k = 2; k <= key_exponent(t.key, s); ++k) f *= Rational(k);
    }
    acc += t.coef * c.conj() * f;
  }
  return acc;
}

/// Inverse by Gauss–Jordan on [M | I]; empty when M is singular.
std::vector<std::vector<Gaussian>> oracle_inverse(std::vector<std::vector<Gaussian>> m) {
  const std::size_t d = m.size();
  for (std::size_t i = 0; i < d; ++i) {
    m[i].resize(2 * d);
    m[i][d + i] = Gaussian(1);
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (p < d && m[p][c].is_zero()) ++p;
    if (p == d) return {};
    std::swap(m[p], m[c]);
    const Gaussian inv = Gaussian(1) / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const Gaussian f = m[r][c];
      for (std::size_t k = c; k < 2 * d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  for (auto& row : m) row.erase(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(d));
  return m;
}

}  // namespace

FischerDecomposition brute_force_decompose(const Poly& f, const Poly& divisor, const ModelSpec& model) {
  const int n = model.n;
  OracleGrading g{model, {}, false};
  for (const auto& t : model.P.terms()) {
    std::vector<int> e;
    for (int s = 0; s < 2 * n; ++s) e.push_back(key_exponent(t.key, s));
    g.blocks.push_back(std::move(e));
  }
  if (divisor.is_zero()) throw ValidationError("divisor", "divisor is zero");
  const int dpw = g.pw(divisor.terms().front().key);
  bool plain_homogeneous = true;
  for (const auto& t : divisor.terms()) {
    if (g.pw(t.key) != dpw) throw NotHomogeneous(Monomial::from_key(t.key, n).str(), g.pw(t.key), dpw);
    plain_homogeneous = plain_homogeneous && key_degree(t.key) == key_degree(divisor.terms().front().key);
  }
  Grading kind = Grading::kWeighted;
  if (model.s != 0) kind = plain_homogeneous ? Grading::kPlain : Grading::kProjected;
  g.plain = kind == Grading::kPlain;
  const int dq = g.degree(divisor.terms().front().key);

  FischerDecomposition out{Poly(n), Poly(n), kind};
  std::map<int, Poly> parts;
  for (const auto& t : f.terms()) {
    auto [it, inserted] = parts.try_emplace(g.degree(t.key), n);
    it->second += Poly::monomial(n, t.key, t.coef);
  }
  for (const auto& [w, fw] : parts) {
    const std::vector<MonoKey> basis = w >= dq ? g.slice(w - dq) : std::vector<MonoKey>{};
    if (basis.empty()) {
      out.B += fw;
      continue;
    }
    std::vector<Poly> prods;
    for (const MonoKey a : basis) prods.push_back(divisor * Poly::monomial(n, a));
    const std::size_t d = basis.size();
    std::vector<std::vector<Gaussian>> gram(d, std::vector<Gaussian>(d));
    std::vector<Gaussian> rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) gram[i][j] = oracle_pairing(prods[j], prods[i]);
      rhs[i] = oracle_pairing(fw, prods[i]);
    }
    const auto inv = oracle_inverse(std::move(gram));
    if (inv.empty()) throw SingularDecomposition("oracle slice " + std::to_string(w) + " is singular");
    Poly aw(n);
    for (std::size_t j = 0; j < d; ++j) {
      Gaussian c;
      for (std::size_t i = 0; i < d; ++i) c += inv[j][i] * rhs[i];
      aw += Poly::monomial(n, basis[j], c);
    }
    out.A += aw;
    out.B += fw - divisor * aw;
  }
  return out;
}

// ---------------------------------------------------------------------------

bool VerifyReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass && !c.advisory) return false;
  }
  return true;
}

Json VerifyReport::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"pass", c.pass}, {"advisory", c.advisory}, {"witness", c.witness}});
  }
  return {{"pass", pass()}, {"checks", list}};
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : c.advisory ? "NOTE " : "FAIL ") << c.name;
    if (!c.pass && !c.witness.empty()) os << ": " << c.witness;
    os << "\n";
  }
  os << (pass() ? "all checks pass" : "verification failed") << "\n";
  return os.str();
}

namespace {

std::string first_terms(const Poly& p, std::size_t limit = 3) {
  if (p.size() <= limit) return to_string(p);
  return to_string(Poly::from_terms(p.n(), {p.terms().begin(), p.terms().begin() + static_cast<std::ptrdiff_t>(limit)})) +
         " + ...";
}

}  // namespace

VerifyReport verify_result(const DefiningSeries& source, const NormalFormResult& result) {
  const DefiningSeries& nf = result.normal_form;
  if (!(nf.model == source.model)) throw ValidationError("model", "normal form and source use different models");
  const ModelSpec& model = source.model;
  const int order = std::min({nf.order, source.order, result.map.order});
  const WeightSystem ws(model, Preset::kBlockMinimal);
  VerifyReport rep;

  rep.checks.push_back({"map has identity linear part", has_identity_linear_part(result.map, model.k0), false, ""});
  rep.checks.push_back({"jet conditions", jet_conditions_check(result.map, model), false, ""});

  const Poly g = graph_residual(source, result.map, nf, order);
  rep.checks.push_back({"graph consistency", g.is_zero(), false, g.is_zero() ? "" : first_terms(g)});

  const auto fresh = transform_defining(source, result.map, order, ws).tail_through(order);
  const auto have = nf.tail_through(order);
  std::string diff;
  for (int k = model.k0 + 1; k <= order; ++k) {
    const Poly a = fresh.contains(k) ? fresh.at(k) : Poly(model.n);
    const Poly b = have.contains(k) ? have.at(k) : Poly(model.n);
    if (!(a == b)) diff += (diff.empty() ? "class " : ", ") + std::to_string(k);
  }
  rep.checks.push_back({"transform agreement", diff.empty(), false, diff});

  for (const auto& [k, p] : nf.tail) {
    if (!is_real(p)) rep.checks.push_back({"reality class " + std::to_string(k), false, false, first_terms(p)});
  }

  const NormalizerPlan plan(model, order);
  const auto family = assemble_basis_family(model, std::max(2, order / model.k0), ws);
  const std::string dep = dependence_witness(family);
  rep.checks.push_back({"basis family independence", dep.empty(), true, dep});
  for (int k = model.k0 + 1; k <= order; ++k) {
    const Poly part = have.contains(k) ? have.at(k) : Poly(model.n);
    const ClassSystem* cs = plan.find(k);
    const bool normal = cs == nullptr ? part.is_zero() : plan.is_normal(*cs, part);
    rep.checks.push_back({"normal space class " + std::to_string(k), normal, false, normal ? "" : first_terms(part)});
    const auto res = normalization_residual(part, family, ws);
    std::string cert;
    for (const auto& c : res.certificate) cert += (cert.empty() ? "" : "; ") + c;
    rep.checks.push_back({"iterated-division residual class " + std::to_string(k), res.residual.is_zero(), true, cert});
  }
  return rep;
}

}  // namespace normform
