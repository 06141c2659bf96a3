#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "normform/monomial.hpp"
#include "normform/scalar.hpp"

namespace normform {

struct Term {
  MonoKey key = 0;
  Gaussian coef;
};

/// Sparse polynomial over Gaussian rationals in the variable universe `Vars`.
///
/// Terms are kept sorted by key with no zero coefficients, so equality is
/// structural. `n` is the number of z variables.
template <class Vars>
class SparsePoly {
 public:
  SparsePoly() = default;
  explicit SparsePoly(int n) : n_(n) {}

  static SparsePoly constant(int n, Gaussian c) {
    SparsePoly p(n);
    if (!c.is_zero()) p.terms_.push_back({0, std::move(c)});
    return p;
  }
  static SparsePoly variable(int n, int slot, Gaussian c = Gaussian(1)) {
    return monomial(n, key_unit(slot), std::move(c));
  }
  static SparsePoly monomial(int n, MonoKey key, Gaussian c = Gaussian(1)) {
    SparsePoly p(n);
    if (!c.is_zero()) p.terms_.push_back({key, std::move(c)});
    return p;
  }
  /// Builds from unsorted terms, merging duplicates and dropping zeros.
  static SparsePoly from_terms(int n, std::vector<Term> terms);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int slots() const { return Vars::slots(n_); }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] Gaussian coeff(MonoKey key) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, MonoKey k) { return t.key < k; });
    if (it != terms_.end() && it->key == key) return it->coef;
    return {};
  }
  [[nodiscard]] Gaussian constant_term() const { return coeff(0); }

  /// Highest / lowest total (plain) degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, key_degree(t.key));
    return d;
  }
  [[nodiscard]] int order() const {
    if (terms_.empty()) return -1;
    int d = 1 << 20;
    for (const auto& t : terms_) d = std::min(d, key_degree(t.key));
    return d;
  }

  SparsePoly& operator+=(const SparsePoly& o) { return *this = merge(*this, o, false); }
  SparsePoly& operator-=(const SparsePoly& o) { return *this = merge(*this, o, true); }
  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, false); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, true); }
  SparsePoly operator-() const {
    SparsePoly r(*this);
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return multiply(a, b, std::nullopt); }
  friend SparsePoly operator*(SparsePoly a, const Gaussian& c) { return a.scale(c); }
  friend SparsePoly operator*(const Gaussian& c, SparsePoly a) { return a.scale(c); }

  SparsePoly& scale(const Gaussian& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coef != b.terms_[i].coef) return false;
    }
    return true;
  }

  /// Exact product; terms of total degree > max_degree are never formed.
  static SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, std::optional<int> max_degree);

  /// Keeps terms satisfying `keep(key)`.
  [[nodiscard]] SparsePoly filter(const std::function<bool(MonoKey)>& keep) const {
    SparsePoly r(n_);
    for (const auto& t : terms_) {
      if (keep(t.key)) r.terms_.push_back(t);
    }
    return r;
  }
  [[nodiscard]] SparsePoly truncate(int max_degree) const {
    return filter([max_degree](MonoKey k) { return key_degree(k) <= max_degree; });
  }
  [[nodiscard]] SparsePoly graded_part(int d) const {
    return filter([d](MonoKey k) { return key_degree(k) == d; });
  }

  /// Mixed partial derivative ∂^key (exponents of `key` per slot).
  [[nodiscard]] SparsePoly derivative(MonoKey key) const;

  /// Replaces the coefficient-space map c ↦ f(c) termwise.
  [[nodiscard]] SparsePoly map_coefficients(const std::function<Gaussian(const Gaussian&)>& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.key, f(t.coef)});
    return from_terms(n_, std::move(out));
  }

 private:
  static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool subtract);

  int n_ = 0;
  std::vector<Term> terms_;
};

/// Polynomial in (z, z̄, x).
using Poly = SparsePoly<RealVars>;
/// Polynomial in (z, w).
using HoloPoly = SparsePoly<HoloVars>;

// ---------------------------------------------------------------------------

template <class Vars>
SparsePoly<Vars> SparsePoly<Vars>::from_terms(int n, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
  SparsePoly p(n);
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().key == t.key) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
  return p;
}

template <class Vars>
SparsePoly<Vars> SparsePoly<Vars>::merge(const SparsePoly& a, const SparsePoly& b, bool subtract) {
  SparsePoly r(a.n_ != 0 ? a.n_ : b.n_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].key < b.terms_[j].key)) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].key < a.terms_[i].key) {
      r.terms_.push_back(subtract ? Term{b.terms_[j].key, -b.terms_[j].coef} : b.terms_[j]);
      ++j;
    } else {
      Gaussian c = a.terms_[i].coef;
      if (subtract) {
        c -= b.terms_[j].coef;
      } else {
        c += b.terms_[j].coef;
      }
      if (!c.is_zero()) r.terms_.push_back({a.terms_[i].key, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

template <class Vars>
SparsePoly<Vars> SparsePoly<Vars>::multiply(const SparsePoly& a, const SparsePoly& b,
                                            std::optional<int> max_degree) {
  const int n = a.n_ != 0 ? a.n_ : b.n_;
  if (a.is_zero() || b.is_zero()) return SparsePoly(n);
  const int limit = max_degree.value_or(kMaxExponent - 1);
  if (a.degree() + b.degree() >= kMaxExponent && !max_degree) {
    throw std::overflow_error("polynomial product exceeds the supported exponent range");
  }

  // Right operand ordered by degree so each left term scans a prefix.
  std::vector<std::pair<int, const Term*>> right;
  right.reserve(b.terms_.size());
  for (const auto& t : b.terms_) right.emplace_back(key_degree(t.key), &t);
  std::stable_sort(right.begin(), right.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  std::unordered_map<MonoKey, Gaussian> acc;
  acc.reserve(a.terms_.size() * 4 + b.terms_.size());
  Gaussian prod;
  for (const auto& ta : a.terms_) {
    const int da = key_degree(ta.key);
    for (const auto& [db, tb] : right) {
      if (da + db > limit) break;
      prod = ta.coef;
      prod *= tb->coef;
      auto [it, inserted] = acc.try_emplace(ta.key + tb->key, prod);
      if (!inserted) it->second += prod;
    }
  }
  SparsePoly r(n);
  r.terms_.reserve(acc.size());
  for (auto& [k, c] : acc) {
    if (!c.is_zero()) r.terms_.push_back({k, std::move(c)});
  }
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.key < y.key; });
  return r;
}

template <class Vars>
SparsePoly<Vars> SparsePoly<Vars>::derivative(MonoKey key) const {
  SparsePoly r(n_);
  const int s = slots();
  for (const auto& t : terms_) {
    Rational factor(1);
    bool vanishes = false;
    for (int slot = 0; slot < s && !vanishes; ++slot) {
      const int e = key_exponent(t.key, slot);
      const int d = key_exponent(key, slot);
      if (d > e) {
        vanishes = true;
        break;
      }
      for (int j = 0; j < d; ++j) factor *= Rational(e - j);
    }
    if (vanishes) continue;
    r.terms_.push_back({t.key - key, t.coef * factor});
  }
  return r;  // key subtraction preserves the ordering
}

/// Products truncated at plain total degree (the poly_mul contract).
inline Poly poly_mul(const Poly& p, const Poly& q, std::optional<int> max_degree = std::nullopt) {
  return Poly::multiply(p, q, max_degree);
}
inline Poly poly_add(const Poly& p, const Poly& q) { return p + q; }

/// z^α z̄^β x^j ↦ z^β z̄^α x^j with conjugated coefficient.
Poly conjugate(const Poly& p);
/// True iff conjugate(p) == p.
bool is_real(const Poly& p);
/// Terms of plain total degree exactly d.
Poly plain_graded_part(const Poly& p, int d);
/// (p + conj p)/2 and (p - conj p)/(2i).
Poly real_part(const Poly& p);
Poly imag_part(const Poly& p);

/// Conjugate key: swaps the z and z̄ blocks.
MonoKey conjugate_key(MonoKey key, int n);

/// Holomorphic monomial key → real-universe key (w must not occur).
MonoKey holo_z_key_to_real(MonoKey key, int n);

std::string to_string(const Poly& p);
std::string to_string(const HoloPoly& p);

class NonNilpotentBinding : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Composition target(b_0, …, b_{slots-1}) truncated at plain degree
/// max_degree. Every binding must have zero constant term.
template <class Dst, class Src>
Dst compose(const Src& target, std::span<const Dst> bindings, int n_out, int max_degree);

/// substitute(): unbound variables of a real target keep their identity.
Poly substitute(const Poly& target, const std::vector<std::optional<Poly>>& bindings, int max_degree);
/// Holomorphic target evaluated on real-universe series for (z, w).
Poly substitute(const HoloPoly& target, const std::vector<Poly>& bindings, int max_degree);
/// Holomorphic composition target(b) with b holomorphic.
HoloPoly substitute(const HoloPoly& target, const std::vector<HoloPoly>& bindings, int max_degree);

// ---------------------------------------------------------------------------

namespace detail {

template <class Dst>
class PowerCache {
 public:
  PowerCache(const Dst& base, int max_degree) : max_degree_(max_degree) { powers_.push_back(base); }
  const Dst& get(int e) {
    while (static_cast<int>(powers_.size()) < e) {
      powers_.push_back(Dst::multiply(powers_.back(), powers_.front(), max_degree_));
    }
    return powers_[static_cast<std::size_t>(e - 1)];
  }

 private:
  int max_degree_;
  std::vector<Dst> powers_;
};

template <class Dst>
struct ComposeContext {
  int slots;
  int n_out;
  std::vector<PowerCache<Dst>> caches;
  std::vector<int> orders;
};

template <class Dst>
Dst compose_rec(ComposeContext<Dst>& ctx, std::span<const Term> terms, int slot, int budget) {
  if (slot == ctx.slots) {
    Dst r = Dst::constant(ctx.n_out, Gaussian());
    for (const auto& t : terms) r += Dst::constant(ctx.n_out, t.coef);
    return r;
  }
  Dst result(ctx.n_out);
  std::size_t i = 0;
  while (i < terms.size()) {
    const int e = key_exponent(terms[i].key, slot);
    std::size_t j = i;
    while (j < terms.size() && key_exponent(terms[j].key, slot) == e) ++j;
    const int used = e * ctx.orders[static_cast<std::size_t>(slot)];
    if (used <= budget) {
      Dst sub = compose_rec(ctx, terms.subspan(i, j - i), slot + 1, budget - used);
      if (!sub.is_zero()) {
        if (e == 0) {
          result += sub;
        } else {
          result += Dst::multiply(ctx.caches[static_cast<std::size_t>(slot)].get(e), sub, budget);
        }
      }
    }
    i = j;
  }
  return result;
}

}  // namespace detail

template <class Dst, class Src>
Dst compose(const Src& target, std::span<const Dst> bindings, int n_out, int max_degree) {
  const int slots = target.slots();
  if (static_cast<int>(bindings.size()) != slots) {
    throw std::invalid_argument("compose: binding count does not match the target's variables");
  }
  detail::ComposeContext<Dst> ctx{slots, n_out, {}, {}};
  ctx.caches.reserve(static_cast<std::size_t>(slots));
  for (const auto& b : bindings) {
    if (!b.constant_term().is_zero()) {
      throw NonNilpotentBinding("binding has a nonzero constant term: " + to_string(b));
    }
    ctx.caches.emplace_back(b, max_degree);
    // Zero bindings kill every positive power; any order larger than the
    // budget expresses that.
    ctx.orders.push_back(b.is_zero() ? max_degree + 1 : b.order());
  }
  Dst r = detail::compose_rec(ctx, std::span<const Term>(target.terms()), 0, max_degree);
  return r.truncate(max_degree);
}

}  // namespace normform
