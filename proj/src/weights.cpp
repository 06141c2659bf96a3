#include "normform/weights.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "normform/errors.hpp"

namespace normform {
namespace {

struct Split {
  std::vector<int> z;   // exponents of z and z̄ slots, 2N entries
  int ex = 0;
  int zdeg = 0;
  int zbdeg = 0;
};

Split split(MonoKey key, int n) {
  Split s;
  s.z.resize(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    s.z[static_cast<std::size_t>(k)] = key_exponent(key, RealVars::z(k));
    s.z[static_cast<std::size_t>(n + k)] = key_exponent(key, RealVars::zbar(n, k));
    s.zdeg += s.z[static_cast<std::size_t>(k)];
    s.zbdeg += s.z[static_cast<std::size_t>(n + k)];
  }
  s.ex = key_exponent(key, RealVars::x(n));
  return s;
}

/// Enumerates every multiset of blocks dominated by `rem`, calling
/// visit(count, residual) once per multiset (including the empty one).
void enumerate_multisets(const std::vector<std::vector<int>>& blocks, std::size_t idx, std::vector<int>& rem,
                         int count, int limit, const std::function<void(int, const std::vector<int>&)>& visit) {
  if (idx == blocks.size()) {
    visit(count, rem);
    return;
  }
  const auto& b = blocks[idx];
  int used = 0;
  while (true) {
    enumerate_multisets(blocks, idx + 1, rem, count + used, limit, visit);
    if (count + used >= limit) break;
    bool fits = true;
    for (std::size_t i = 0; i < rem.size(); ++i) {
      if (rem[i] < b[i]) {
        fits = false;
        break;
      }
    }
    if (!fits) break;
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] -= b[i];
    ++used;
  }
  for (std::size_t i = 0; i < rem.size(); ++i) rem[i] += b[i] * used;
}

}  // namespace

std::string to_string(Preset p) { return p == Preset::kLiteral ? "literal" : "block_minimal"; }

Preset parse_preset(const std::string& text) {
  if (text == "literal") return Preset::kLiteral;
  if (text == "block" || text == "block_minimal") return Preset::kBlockMinimal;
  throw ValidationError("weight preset", "unknown preset '" + text + "'");
}

WeightSystem::WeightSystem(ModelSpec model, Preset preset)
    : model_(std::move(model)), preset_(preset), blocks_(model_.blocks()), cache_(std::make_shared<Cache>()) {}

int WeightSystem::holo_weight(MonoKey key) const {
  const int n = model_.n;
  int w = model_.k0 * key_exponent(key, HoloVars::w(n));
  for (int k = 0; k < n; ++k) w += key_exponent(key, HoloVars::z(k));
  return w;
}

int WeightSystem::max_blocks(MonoKey key) const {
  const int n = model_.n;
  const Split m = split(key, n);
  if (model_.s > 0 && m.ex < model_.s) return 0;
  const int limit = model_.s > 0 ? m.ex / model_.s : std::numeric_limits<int>::max();
  std::vector<std::vector<int>> blocks;
  for (const auto b : blocks_) blocks.push_back(split(b, n).z);
  std::vector<int> rem = m.z;
  int best = 0;
  enumerate_multisets(blocks, 0, rem, 0, limit, [&best](int t, const std::vector<int>&) { best = std::max(best, t); });
  return best;
}

int WeightSystem::weight(MonoKey key) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
  }
  const int w = compute(key);
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(key, w);
  return w;
}

int WeightSystem::compute(MonoKey key) const {
  if (preset_ == Preset::kBlockMinimal) {
    const Split m = split(key, model_.n);
    const int plain = model_.k0 * m.ex + m.zdeg + m.zbdeg;
    if (model_.s == 0) return plain;  // a block costs exactly its degree
    return plain - model_.s * (model_.k0 - 1) * max_blocks(key);
  }
  const auto evals = literal_evaluations(key);
  int best = std::numeric_limits<int>::max();
  for (const auto& e : evals) best = std::min(best, e.value);
  return best;
}

std::vector<WeightEvaluation> WeightSystem::evaluations(MonoKey key) const {
  return preset_ == Preset::kBlockMinimal ? block_evaluations(key) : literal_evaluations(key);
}

std::vector<WeightEvaluation> WeightSystem::block_evaluations(MonoKey key) const {
  const int n = model_.n;
  const int s = model_.s;
  const int k0 = model_.k0;
  const Split m = split(key, n);
  std::vector<std::vector<int>> blocks;
  for (const auto b : blocks_) blocks.push_back(split(b, n).z);
  const int limit = s > 0 ? m.ex / s : std::numeric_limits<int>::max();
  std::vector<WeightEvaluation> out;
  std::vector<int> seen;
  std::vector<int> rem = m.z;
  enumerate_multisets(blocks, 0, rem, 0, limit, [&](int t, const std::vector<int>& residual) {
    if (std::find(seen.begin(), seen.end(), t) != seen.end()) return;
    seen.push_back(t);
    int res = 0;
    for (const int e : residual) res += e;
    const int value = k0 * t + k0 * (m.ex - s * t) + res;
    out.push_back({"blocks", value, "t=" + std::to_string(t)});
  });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.detail.size() < b.detail.size() ||
                                                                               (a.detail.size() == b.detail.size() && a.detail < b.detail); });
  return out;
}

std::vector<WeightEvaluation> WeightSystem::literal_evaluations(MonoKey key) const {
  const int n = model_.n;
  const int s = model_.s;
  const int k0 = model_.k0;
  const Split m = split(key, n);
  const int a = m.zdeg;
  const int b = m.zbdeg;
  const int j = m.ex;
  std::vector<WeightEvaluation> out;
  auto add = [&out](const char* rule, int value, std::string detail = {}) {
    if (value >= 0) out.push_back({rule, value, std::move(detail)});
  };

  if (a + b + j == 1) add("pp", j == 1 ? k0 : 1);
  if (j == 0) add("no-x", a + b);
  if (a == 0 && b != 0) add("zbar-only", b + j);
  if (b == 0 && a != 0) add("z-only", a + j);
  if ((a != 0 || b != 0) && a + b < k0 - s) add("low-mixed", j + a + b, "alpha+beta<k0-s");
  if (a != 0 && b != 0 && a + b == k0 - s) add("low-mixed", j - s + a + b, "alpha+beta=k0-s");

  std::vector<std::vector<int>> blocks;
  for (const auto bk : blocks_) blocks.push_back(split(bk, n).z);
  std::vector<int> rem = m.z;
  enumerate_multisets(blocks, 0, rem, 0, std::numeric_limits<int>::max(),
                      [&](int t, const std::vector<int>& residual) {
                        if (t == 0) return;
                        const int base = (j - (s - 1) * t) * k0;
                        if (base < 0) return;
                        int rz = 0;
                        int rzb = 0;
                        for (int k = 0; k < n; ++k) {
                          rz += residual[static_cast<std::size_t>(k)];
                          rzb += residual[static_cast<std::size_t>(n + k)];
                        }
                        const std::string d = "t=" + std::to_string(t);
                        if (rz == 0 && rzb == 0) {
                          add("block", base, d);
                        } else if (rz == 0 || rzb == 0) {
                          add("block-residual", base + rz + rzb, d + ", residual c=" + std::to_string(rz + rzb));
                        }
                      });

  // Second form of the surcharge rule, with the degree hypothesis a+b=k0 as
  // printed: the z-part is μ^t for a mixed μ of degree k0.
  for (int t = 1; t <= a + b; ++t) {
    if ((j - (s - 1) * t) * k0 > 0) continue;
    bool divisible = (a + b) == k0 * t;
    for (const int e : m.z) divisible = divisible && e % t == 0;
    if (!divisible || a == 0 || b == 0) continue;
    int beta_prime = -1;
    for (int bp = t; bp >= 0; --bp) {
      if ((j - (s - 1) * bp) * k0 >= 0) {
        beta_prime = bp;
        break;
      }
    }
    if (beta_prime < 0) {
      throw InfeasibleWeight("no feasible beta' for " + Monomial::from_key(key, n).str());
    }
    add("split-block", (j - (s - 1) * t) * k0 + k0 * (t - beta_prime),
        "t=" + std::to_string(t) + ", beta'=" + std::to_string(beta_prime) + " (a+b=k0 form)");
  }

  if (out.empty()) add("default", a + b + k0 * j);
  return out;
}

int weight(const Monomial& m, const WeightSystem& ws) { return ws.weight(m.key()); }

std::map<int, Poly> weighted_parts(const Poly& p, const WeightSystem& ws) {
  std::map<int, std::vector<Term>> buckets;
  for (const auto& t : p.terms()) buckets[ws.weight(t.key)].push_back(t);
  std::map<int, Poly> out;
  for (auto& [w, terms] : buckets) out.emplace(w, Poly::from_terms(p.n(), std::move(terms)));
  return out;
}

Poly weighted_part(const Poly& p, const WeightSystem& ws, int w) {
  return p.filter([&](MonoKey k) { return ws.weight(k) == w; });
}

int homogeneous_weight(const Poly& p, const WeightSystem& ws) {
  if (p.is_zero()) throw NotHomogeneous("0", -1, -1);
  const int w = ws.weight(p.terms().front().key);
  for (const auto& t : p.terms()) {
    const int wt = ws.weight(t.key);
    if (wt != w) throw NotHomogeneous(Monomial::from_key(t.key, p.n()).str(), wt, w);
  }
  return w;
}

int validate_model_homogeneity(const ModelSpec& model, const WeightSystem& ws) {
  const MonoKey x = key_unit(RealVars::x(model.n));
  const int wx = ws.weight(x);
  if (wx != model.k0) throw NotHomogeneous("x", wx, model.k0);
  const Poly term = model.model_term();
  for (const auto& t : term.terms()) {
    const int w = ws.weight(t.key);
    if (w != model.k0) throw NotHomogeneous(Monomial::from_key(t.key, model.n).str(), w, model.k0);
  }
  return model.k0;
}

std::vector<MonoKey> monomials_of_weight(const WeightSystem& ws, int w) {
  if (ws.preset() != Preset::kBlockMinimal) {
    throw std::invalid_argument("monomials_of_weight: slices are finite only for block_minimal");
  }
  const int n = ws.model().n;
  const int slots = RealVars::slots(n);
  std::vector<MonoKey> out;
  // block_minimal weight never falls below plain degree.
  std::function<void(int, MonoKey, int)> rec = [&](int slot, MonoKey key, int budget) {
    if (slot == slots) {
      if (ws.weight(key) == w) out.push_back(key);
      return;
    }
    for (int e = 0; e <= budget; ++e) rec(slot + 1, key + key_unit(slot) * static_cast<MonoKey>(e), budget - e);
  };
  if (w >= 0) rec(0, 0, w);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace normform
