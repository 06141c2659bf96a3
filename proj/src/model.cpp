#include "normform/model.hpp"

#include <map>

#include "normform/errors.hpp"
#include "normform/linalg.hpp"

namespace normform {

std::vector<MonoKey> ModelSpec::blocks() const {
  std::vector<MonoKey> out;
  out.reserve(P.size());
  for (const auto& t : P.terms()) out.push_back(t.key);
  return out;
}

Poly ModelSpec::model_term() const {
  Poly xs = Poly::constant(n, Gaussian(1));
  for (int j = 0; j < s; ++j) xs = xs * Poly::variable(n, RealVars::x(n));
  return xs * P;
}

Poly ModelSpec::divisor() const {
  return Poly::variable(n, RealVars::x(n)) + model_term() * Gaussian::i();
}

bool check_nondegeneracy(const ModelSpec& model) {
  const int n = model.n;
  // Column (k, l) holds the coefficients of ∂P/∂z_k · z_l.
  std::vector<Poly> columns;
  std::map<MonoKey, std::size_t> rows;
  for (int k = 0; k < n; ++k) {
    const Poly dk = model.P.derivative(key_unit(RealVars::z(k)));
    for (int l = 0; l < n; ++l) {
      Poly col = dk * Poly::variable(n, RealVars::z(l));
      for (const auto& t : col.terms()) rows.try_emplace(t.key, rows.size());
      columns.push_back(std::move(col));
    }
  }
  const std::size_t unknowns = columns.size();
  if (rows.size() < unknowns) return false;
  Matrix<Gaussian> m(rows.size(), unknowns);
  for (std::size_t c = 0; c < unknowns; ++c) {
    for (const auto& t : columns[c].terms()) m(rows.at(t.key), c) = t.coef;
  }
  return rank(m) == unknowns;
}

void validate_model(const ModelSpec& model) {
  check_n(model.n);
  if (model.P.n() != model.n) throw ValidationError("P variables", "P is not over N z-variables");
  if (model.s < 0) throw ValidationError("s >= 0", "s = " + std::to_string(model.s));
  if (model.k0 < 2) throw ValidationError("k0 >= 2", "k0 = " + std::to_string(model.k0));
  if (model.k0 - model.s < 2) {
    throw ValidationError("k0 - s >= 2", "k0 - s = " + std::to_string(model.k0 - model.s));
  }
  if (model.P.is_zero()) throw ValidationError("nondegeneracy", "P = 0");
  const int deg = model.k0 - model.s;
  for (const auto& t : model.P.terms()) {
    const Monomial m = Monomial::from_key(t.key, model.n);
    if (m.ex != 0) throw ValidationError("P in z and zbar only", "monomial " + m.str() + " contains x");
    if (m.degree() != deg) {
      throw ValidationError("Deg(P)+s=k0", "monomial " + m.str() + " has degree " + std::to_string(m.degree()) +
                                               ", expected " + std::to_string(deg));
    }
    if (m.z_degree() == 0 || m.zbar_degree() == 0) {
      throw ValidationError("a,b in N^*", "monomial " + m.str() + " is not mixed in z and zbar");
    }
  }
  if (!is_real(model.P)) throw ValidationError("P real-valued", "conjugate(P) != P");
  if (!check_nondegeneracy(model)) throw ValidationError("nondegeneracy", "a_{kl} kernel is nontrivial");
}

ModelSpec make_model(int n, int s, int k0, Poly P) {
  ModelSpec m{n, s, k0, std::move(P)};
  validate_model(m);
  return m;
}

Poly hermitian_form(int n) {
  Poly p(n);
  for (int k = 0; k < n; ++k) p += Poly::variable(n, RealVars::z(k)) * Poly::variable(n, RealVars::zbar(n, k));
  return p;
}

}  // namespace normform
