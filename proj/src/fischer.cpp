#include "normform/fischer.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "normform/errors.hpp"
#include "normform/linalg.hpp"

namespace normform {
namespace {

Rational key_factorial(MonoKey key, int slots) {
  Rational f(1);
  for (int s = 0; s < slots; ++s) {
    for (int e = key_exponent(key, s); e > 1; --e) f *= Rational(e);
  }
  return f;
}

/// All exponent vectors of length n summing to k, lexicographically descending.
std::vector<std::vector<int>> compositions(int k, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(pos)] = e;
      rec(pos + 1, left - e);
    }
  };
  if (k >= 0) rec(0, k);
  return out;
}

std::string index_str(const std::vector<int>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + ")";
}

Poly z_power(int n, const std::vector<int>& idx) {
  MonoKey key = 0;
  for (int k = 0; k < n; ++k) key += key_unit(RealVars::z(k)) * static_cast<MonoKey>(idx[static_cast<std::size_t>(k)]);
  return Poly::monomial(n, key);
}

}  // namespace

Gaussian fischer_pairing(const Poly& p, const Poly& q) {
  Gaussian acc;
  const int slots = p.slots();
  std::size_t j = 0;
  for (const auto& t : p.terms()) {
    while (j < q.size() && q.terms()[j].key < t.key) ++j;
    if (j == q.size()) break;
    if (q.terms()[j].key != t.key) continue;
    Gaussian c = t.coef * q.terms()[j].coef.conj();
    acc += c * key_factorial(t.key, slots);
  }
  return acc;
}

Poly adjoint_apply(const AdjointOperator& op, const Poly& p) {
  Poly out(p.n() != 0 ? p.n() : op.source.n());
  for (const auto& t : op.source.terms()) {
    Poly d = p.derivative(t.key);
    if (!d.is_zero()) out += d.scale(t.coef.conj());
  }
  return out;
}

std::string to_string(Grading g) {
  switch (g) {
    case Grading::kPlain:
      return "plain";
    case Grading::kWeighted:
      return "weighted";
    case Grading::kProjected:
      return "projected";
  }
  return "?";
}

Grading decomposition_grading(const Poly& divisor, const WeightSystem& ws) {
  if (ws.preset() != Preset::kBlockMinimal) {
    throw ValidationError("weight preset", "Fischer slices need the block_minimal preset");
  }
  if (divisor.is_zero()) throw ValidationError("divisor", "divisor is zero");
  if (!divisor.constant_term().is_zero()) throw ValidationError("divisor", "divisor has a constant term");
  homogeneous_weight(divisor, ws);
  if (ws.model().s == 0) return Grading::kWeighted;
  const int d = key_degree(divisor.terms().front().key);
  for (const auto& t : divisor.terms()) {
    if (key_degree(t.key) != d) return Grading::kProjected;
  }
  return Grading::kPlain;
}

int grading_degree(MonoKey key, Grading g, const WeightSystem& ws) {
  return g == Grading::kPlain ? key_degree(key) : ws.weight(key);
}

std::vector<MonoKey> grading_slice(Grading g, const WeightSystem& ws, int d) {
  if (g != Grading::kPlain) return monomials_of_weight(ws, d);
  const int slots = RealVars::slots(ws.model().n);
  std::vector<MonoKey> out;
  std::function<void(int, MonoKey, int)> rec = [&](int slot, MonoKey key, int left) {
    if (slot == slots - 1) {
      out.push_back(key + key_unit(slot) * static_cast<MonoKey>(left));
      return;
    }
    for (int e = 0; e <= left; ++e) rec(slot + 1, key + key_unit(slot) * static_cast<MonoKey>(e), left - e);
  };
  if (d >= 0) rec(0, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

FischerDecomposition fischer_decompose(const Poly& f, const Poly& divisor, const WeightSystem& ws) {
  const int n = ws.model().n;
  const Grading g = decomposition_grading(divisor, ws);
  const int dq = grading_degree(divisor.terms().front().key, g, ws);
  FischerDecomposition out{Poly(n), Poly(n), g};

  std::map<int, std::vector<Term>> parts;
  for (const auto& t : f.terms()) parts[grading_degree(t.key, g, ws)].push_back(t);

  for (auto& [w, terms] : parts) {
    const Poly fw = Poly::from_terms(n, std::move(terms));
    if (w < dq) {
      out.B += fw;
      continue;
    }
    const std::vector<MonoKey> basis = grading_slice(g, ws, w - dq);
    std::map<MonoKey, std::size_t> row;
    for (std::size_t i = 0; i < basis.size(); ++i) row.emplace(basis[i], i);
    auto coords = [&](const Poly& p) {
      Vector<Gaussian> v(basis.size());
      for (const auto& t : p.terms()) {
        auto it = row.find(t.key);
        if (it != row.end()) v[it->second] = t.coef;
      }
      return v;
    };
    Matrix<Gaussian> m(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Vector<Gaussian> col = coords(adjoint_apply(divisor, divisor * Poly::monomial(n, basis[j])));
      for (std::size_t i = 0; i < basis.size(); ++i) m(i, j) = col[i];
    }
    const auto res = solve(m, coords(adjoint_apply(divisor, fw)));
    if (res.status != SolveStatus::kUnique) {
      throw SingularDecomposition("slice " + std::to_string(w) + " (" + to_string(g) + ") has rank " +
                                  std::to_string(res.rank) + " of " + std::to_string(basis.size()));
    }
    std::vector<Term> a;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (!res.solution[j].is_zero()) a.push_back({basis[j], res.solution[j]});
    }
    const Poly aw = Poly::from_terms(n, std::move(a));
    out.A += aw;
    out.B += fw - divisor * aw;
  }
  return out;
}

std::string FamilyEntry::label() const {
  std::string s = conjugated ? "conj " : "";
  if (kind == Kind::kPure) return s + "B_I" + index_str(index);
  return s + "Bt_J" + index_str(index) + ",l=" + std::to_string(l + 1);
}

FischerBasisFamily assemble_basis_family(const ModelSpec& model, int kmax, const WeightSystem& ws,
                                         JConvention convention) {
  if (kmax < 2) throw std::invalid_argument("build_basis_family: kmax must be at least 2");
  validate_model(model);
  const int n = model.n;
  const Poly q = model.divisor();
  const Poly x = Poly::variable(n, RealVars::x(n));
  FischerBasisFamily fam{model, kmax, convention, {}};

  std::vector<FamilyEntry> direct;
  for (int k = 2; k <= kmax; ++k) {
    for (const auto& idx : compositions(k, n)) {
      FamilyEntry e{FamilyEntry::Kind::kPure, false, k, idx, 0, z_power(n, idx), Poly(n), Poly(n)};
      auto d = fischer_decompose(e.source, q, ws);
      e.quotient = std::move(d.A);
      e.remainder = std::move(d.B);
      direct.push_back(std::move(e));
    }
    const int jdeg = convention == JConvention::kKMinus1 ? k - 1 : k - 2;
    for (const auto& idx : compositions(jdeg, n)) {
      for (int l = 0; l < n; ++l) {
        const Poly src = x * Poly::variable(n, RealVars::zbar(n, l)) * z_power(n, idx);
        FamilyEntry e{FamilyEntry::Kind::kMixed, false, k, idx, l, src, Poly(n), Poly(n)};
        auto d = fischer_decompose(src, q, ws);
        e.quotient = std::move(d.A);
        e.remainder = std::move(d.B);
        direct.push_back(std::move(e));
      }
    }
  }
  fam.entries = direct;
  for (const auto& e : direct) {
    FamilyEntry c = e;
    c.conjugated = true;
    c.source = conjugate(e.source);
    c.quotient = conjugate(e.quotient);
    c.remainder = conjugate(e.remainder);
    fam.entries.push_back(std::move(c));
  }
  return fam;
}

std::string dependence_witness(const FischerBasisFamily& fam) {
  std::map<MonoKey, std::size_t> rows;
  for (const auto& e : fam.entries) {
    for (const auto& t : e.remainder.terms()) rows.emplace(t.key, 0);
  }
  std::size_t r = 0;
  for (auto& [k, i] : rows) i = r++;
  Matrix<Gaussian> m(rows.size(), fam.entries.size());
  for (std::size_t j = 0; j < fam.entries.size(); ++j) {
    for (const auto& t : fam.entries[j].remainder.terms()) m(rows.at(t.key), j) = t.coef;
  }
  const auto kernel = nullspace(m);
  if (kernel.empty()) return "";
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < kernel.front().size(); ++j) {
    if (kernel.front()[j].is_zero()) continue;
    os << (first ? "" : " + ") << "(" << kernel.front()[j].str() << ")*" << fam.entries[j].label();
    first = false;
  }
  os << " = 0";
  return os.str();
}

FischerBasisFamily build_basis_family(const ModelSpec& model, int kmax, const WeightSystem& ws,
                                      JConvention convention) {
  FischerBasisFamily fam = assemble_basis_family(model, kmax, ws, convention);
  const std::string w = dependence_witness(fam);
  if (!w.empty()) throw DependentFamily("remainders are dependent: " + w);
  return fam;
}

namespace {

struct Condition {
  std::string label;
  Poly value;  // must vanish
};

std::vector<Condition> membership_conditions(const Poly& p, int wt, const FischerBasisFamily& family,
                                             const WeightSystem& ws, KernelClosure closure) {
  const ModelSpec& model = family.model;
  const int n = model.n;
  const Poly q = model.divisor();
  const int stages = wt / model.k0;
  const int xstar = wt % model.k0 == 0 ? wt / model.k0 - 1 : -1;
  std::vector<Condition> out;
  Poly piece = p;
  for (int k = 0; k <= stages; ++k) {
    if (k == xstar) {
      out.push_back({"x* on P_" + std::to_string(k),
                     piece.filter([n](MonoKey key) { return key_exponent(key, RealVars::x(n)) > 0; })});
    }
    auto d = fischer_decompose(piece, q, ws);
    for (const auto& e : family.entries) {
      if (e.k != k) continue;
      if (closure == KernelClosure::kLiteral && e.kind == FamilyEntry::Kind::kPure && !e.conjugated) continue;
      out.push_back({"R_" + std::to_string(k + 1) + " in ker (" + e.label() + ")*", adjoint_apply(e.remainder, d.B)});
    }
    piece = std::move(d.A);
  }
  return out;
}

}  // namespace

NormalizationResidual normalization_residual(const Poly& p, const FischerBasisFamily& family,
                                             const WeightSystem& ws, KernelClosure closure) {
  const int n = family.model.n;
  NormalizationResidual out{Poly(n), {}};
  if (p.is_zero()) return out;
  const int wt = homogeneous_weight(p, ws);
  if (wt / family.model.k0 > family.kmax) {
    throw std::invalid_argument("normalization_residual: family kmax " + std::to_string(family.kmax) +
                                " does not cover weight " + std::to_string(wt));
  }
  for (const auto& c : membership_conditions(p, wt, family, ws, closure)) {
    if (!c.value.is_zero()) out.certificate.push_back(c.label);
  }
  if (out.certificate.empty()) return out;

  // Conditions as a linear map on the slice; the residual is p minus its
  // Fischer-orthogonal projection onto the kernel.
  const std::vector<MonoKey> basis = monomials_of_weight(ws, wt);
  std::map<std::pair<std::size_t, MonoKey>, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Gaussian>>> cols(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto conds = membership_conditions(Poly::monomial(n, basis[j]), wt, family, ws, closure);
    for (std::size_t c = 0; c < conds.size(); ++c) {
      for (const auto& t : conds[c].value.terms()) {
        const auto [it, inserted] = rows.try_emplace({c, t.key}, rows.size());
        cols[j].emplace_back(it->second, t.coef);
      }
    }
  }
  Matrix<Gaussian> l(rows.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (const auto& [i, v] : cols[j]) l(i, j) = v;
  }
  const auto kernel = nullspace(l);
  const int slots = RealVars::slots(n);
  Poly proj(n);
  if (!kernel.empty()) {
    const std::size_t kd = kernel.size();
    std::vector<Gaussian> gram(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) gram[j] = Gaussian(key_factorial(basis[j], slots));
    Matrix<Gaussian> m(kd, kd);
    Vector<Gaussian> rhs(kd);
    for (std::size_t a = 0; a < kd; ++a) {
      for (std::size_t b = 0; b < kd; ++b) {
        Gaussian acc;
        for (std::size_t j = 0; j < basis.size(); ++j) {
          if (!kernel[a][j].is_zero() && !kernel[b][j].is_zero()) acc += kernel[a][j].conj() * gram[j] * kernel[b][j];
        }
        m(a, b) = acc;
      }
      Gaussian acc;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (!kernel[a][j].is_zero()) acc += kernel[a][j].conj() * gram[j] * p.coeff(basis[j]);
      }
      rhs[a] = acc;
    }
    const auto res = solve(m, rhs);
    std::vector<Term> terms;
    for (std::size_t b = 0; b < kd; ++b) {
      if (res.solution[b].is_zero()) continue;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (!kernel[b][j].is_zero()) terms.push_back({basis[j], res.solution[b] * kernel[b][j]});
      }
    }
    proj = Poly::from_terms(n, std::move(terms));
  }
  out.residual = p - proj;
  return out;
}

}  // namespace normform
