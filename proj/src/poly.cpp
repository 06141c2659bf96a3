#include "normform/poly.hpp"

#include <numeric>
#include <sstream>

namespace normform {

int Monomial::z_degree() const { return std::accumulate(ez.begin(), ez.end(), 0); }
int Monomial::zbar_degree() const { return std::accumulate(ezb.begin(), ezb.end(), 0); }

MonoKey Monomial::key() const {
  const int nn = n();
  if (static_cast<int>(ezb.size()) != nn) throw std::invalid_argument("monomial: ez and ezb lengths differ");
  check_n(nn);
  MonoKey k = 0;
  auto put = [&k](int slot, int e) {
    if (e < 0 || e > kMaxExponent) throw std::invalid_argument("monomial exponent out of range");
    k |= static_cast<MonoKey>(e) << slot_shift(slot);
  };
  for (int i = 0; i < nn; ++i) {
    put(RealVars::z(i), ez[static_cast<std::size_t>(i)]);
    put(RealVars::zbar(nn, i), ezb[static_cast<std::size_t>(i)]);
  }
  put(RealVars::x(nn), ex);
  return k;
}

Monomial Monomial::from_key(MonoKey key, int n) {
  Monomial m;
  m.ez.resize(static_cast<std::size_t>(n));
  m.ezb.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    m.ez[static_cast<std::size_t>(i)] = key_exponent(key, RealVars::z(i));
    m.ezb[static_cast<std::size_t>(i)] = key_exponent(key, RealVars::zbar(n, i));
  }
  m.ex = key_exponent(key, RealVars::x(n));
  return m;
}

std::string Monomial::str() const {
  std::ostringstream os;
  bool any = false;
  auto emit = [&](const std::string& name, int e) {
    if (e == 0) return;
    if (any) os << "*";
    os << name;
    if (e > 1) os << "^" << e;
    any = true;
  };
  const int nn = n();
  for (int i = 0; i < nn; ++i) emit(nn == 1 ? "z" : "z" + std::to_string(i + 1), ez[static_cast<std::size_t>(i)]);
  for (int i = 0; i < nn; ++i) emit(nn == 1 ? "zb" : "zb" + std::to_string(i + 1), ezb[static_cast<std::size_t>(i)]);
  emit("x", ex);
  return any ? os.str() : "1";
}

int HoloMonomial::z_degree() const { return std::accumulate(ez.begin(), ez.end(), 0); }

MonoKey HoloMonomial::key() const {
  const int nn = n();
  check_n(nn);
  MonoKey k = 0;
  auto put = [&k](int slot, int e) {
    if (e < 0 || e > kMaxExponent) throw std::invalid_argument("monomial exponent out of range");
    k |= static_cast<MonoKey>(e) << slot_shift(slot);
  };
  for (int i = 0; i < nn; ++i) put(HoloVars::z(i), ez[static_cast<std::size_t>(i)]);
  put(HoloVars::w(nn), ew);
  return k;
}

HoloMonomial HoloMonomial::from_key(MonoKey key, int n) {
  HoloMonomial m;
  m.ez.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m.ez[static_cast<std::size_t>(i)] = key_exponent(key, HoloVars::z(i));
  m.ew = key_exponent(key, HoloVars::w(n));
  return m;
}

std::string HoloMonomial::str() const {
  std::ostringstream os;
  bool any = false;
  auto emit = [&](const std::string& name, int e) {
    if (e == 0) return;
    if (any) os << "*";
    os << name;
    if (e > 1) os << "^" << e;
    any = true;
  };
  const int nn = n();
  for (int i = 0; i < nn; ++i) emit(nn == 1 ? "z" : "z" + std::to_string(i + 1), ez[static_cast<std::size_t>(i)]);
  emit("w", ew);
  return any ? os.str() : "1";
}

MonoKey conjugate_key(MonoKey key, int n) {
  MonoKey r = 0;
  for (int i = 0; i < n; ++i) {
    r |= static_cast<MonoKey>(key_exponent(key, RealVars::z(i))) << slot_shift(RealVars::zbar(n, i));
    r |= static_cast<MonoKey>(key_exponent(key, RealVars::zbar(n, i))) << slot_shift(RealVars::z(i));
  }
  r |= static_cast<MonoKey>(key_exponent(key, RealVars::x(n))) << slot_shift(RealVars::x(n));
  return r;
}

MonoKey holo_z_key_to_real(MonoKey key, int n) {
  MonoKey r = 0;
  for (int i = 0; i < n; ++i) {
    r |= static_cast<MonoKey>(key_exponent(key, HoloVars::z(i))) << slot_shift(RealVars::z(i));
  }
  return r;
}

Poly conjugate(const Poly& p) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({conjugate_key(t.key, p.n()), t.coef.conj()});
  return Poly::from_terms(p.n(), std::move(out));
}

bool is_real(const Poly& p) { return conjugate(p) == p; }

Poly plain_graded_part(const Poly& p, int d) {
  if (d < 0) throw std::invalid_argument("plain_graded_part: negative degree");
  return p.graded_part(d);
}

Poly real_part(const Poly& p) { return (p + conjugate(p)) * Gaussian(Rational(1, 2)); }

Poly imag_part(const Poly& p) {
  // (p - p̄)/(2i) = -i/2 · (p - p̄)
  return (p - conjugate(p)) * Gaussian(Rational(0), Rational(-1, 2));
}

namespace {

template <class P, class Name>
std::string poly_to_string(const P& p, Name name) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) os << " + ";
    first = false;
    const std::string m = name(t.key);
    if (m == "1") {
      os << t.coef.str();
    } else if (t.coef == Gaussian(1)) {
      os << m;
    } else {
      os << t.coef.str() << "*" << m;
    }
  }
  return os.str();
}

}  // namespace

std::string to_string(const Poly& p) {
  return poly_to_string(p, [&](MonoKey k) { return Monomial::from_key(k, p.n()).str(); });
}

std::string to_string(const HoloPoly& p) {
  return poly_to_string(p, [&](MonoKey k) { return HoloMonomial::from_key(k, p.n()).str(); });
}

Poly substitute(const Poly& target, const std::vector<std::optional<Poly>>& bindings, int max_degree) {
  const int n = target.n();
  const int slots = RealVars::slots(n);
  if (static_cast<int>(bindings.size()) > slots) throw std::invalid_argument("substitute: too many bindings");
  std::vector<Poly> full;
  full.reserve(static_cast<std::size_t>(slots));
  for (int s = 0; s < slots; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    if (idx < bindings.size() && bindings[idx]) {
      full.push_back(*bindings[idx]);
    } else {
      full.push_back(Poly::variable(n, s));
    }
  }
  return compose<Poly>(target, std::span<const Poly>(full), n, max_degree);
}

Poly substitute(const HoloPoly& target, const std::vector<Poly>& bindings, int max_degree) {
  const int n = target.n();
  return compose<Poly>(target, std::span<const Poly>(bindings), n, max_degree);
}

HoloPoly substitute(const HoloPoly& target, const std::vector<HoloPoly>& bindings, int max_degree) {
  return compose<HoloPoly>(target, std::span<const HoloPoly>(bindings), target.n(), max_degree);
}

}  // namespace normform
