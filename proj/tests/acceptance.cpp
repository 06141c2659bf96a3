// Acceptance suite: one PASS/FAIL line per criterion.
//
// A criterion can fail for a reason that is a property of the mathematics,
// not of the code. Those cases are listed in kKnown with the exact case
// that fails; the process exit status is nonzero when a failure falls
// outside that list or when a listed failure stops happening.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "normform/errors.hpp"
#include "normform/report.hpp"

using namespace normform;
using namespace normform::testing;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct FleetModel {
  std::string name;
  ModelSpec model;
  int order;
};

std::vector<FleetModel> fleet() {
  std::vector<FleetModel> out;
  for (int n = 1; n <= 2; ++n) {
    out.push_back({"N=" + std::to_string(n) + ",s=0,k0=2", make_model(n, 0, 2, hermitian_form(n)), 6});
    out.push_back({"N=" + std::to_string(n) + ",s=1,k0=3", make_model(n, 1, 3, hermitian_form(n)), 8});
  }
  return out;
}

/// Failure cases that are expected; keys are "<criterion>|<case>".
const std::set<std::string> kKnown = {
    // x + i·x·P is not homogeneous for any additive grading with finite
    // slices; the slice-projected complement is not annihilated exactly.
    "1|adjoint N=1,s=1,k0=3 divisor x+i*x^s*P",
    "1|adjoint N=2,s=1,k0=3 divisor x+i*x^s*P",
    // The isotropy z ↦ z + a·w (a real) of the sphere satisfies both jet
    // conditions and has zero linearized image.
    "5|N=1,s=0,k0=2",
    "5|N=2,s=0,k0=2",
    // Real remainder of x(|z1|^2 - |z2|^2) against x + i·x·<z,z>.
    "6|N=2,s=1,k0=3",
};

struct Outcome {
  int id;
  std::string title;
  std::vector<std::string> failed;  // case keys
  std::string detail;
  std::string witness;
};

struct Tally {
  std::size_t transforms = 0;
  std::vector<std::string> unreal;
  std::vector<std::string> graph;

  void output(const std::string& where, const DefiningSeries& out) {
    for (const auto& [k, p] : out.tail) {
      if (!is_real(p)) unreal.push_back(where + " class " + std::to_string(k));
    }
  }
  void transform(const std::string& where, const DefiningSeries& src, const FormalMap& g, const DefiningSeries& out,
                 int order) {
    ++transforms;
    output(where, out);
    const Poly r = graph_residual(src, g, out, order);
    if (!r.is_zero()) graph.push_back(where + ": " + to_string(r));
  }
};

Outcome fischer_oracle() {
  Outcome o{1, "Fischer oracle equivalence", {}, "", ""};
  const auto start = Clock::now();
  std::size_t runs = 0;
  for (int n = 1; n <= 2; ++n) {
    for (const int s : {0, 1}) {
      const ModelSpec m = make_model(n, s, s == 0 ? 2 : 3, hermitian_form(n));
      const WeightSystem ws(m, Preset::kBlockMinimal);
      const std::string mname = "N=" + std::to_string(n) + ",s=" + std::to_string(s) + ",k0=" + std::to_string(m.k0);
      for (const auto& [dname, q] : {std::pair{std::string("<z,z>"), hermitian_form(n)},
                                     std::pair{std::string("x+i*x^s*P"), m.divisor()}}) {
        std::size_t bad_oracle = 0;
        std::size_t bad_recon = 0;
        std::size_t bad_adj = 0;
        std::string first;
        for (int d = 0; d <= 6; ++d) {
          for (const MonoKey key : grading_slice(Grading::kPlain, ws, d)) {
            const Poly f = Poly::monomial(n, key);
            const auto a = fischer_decompose(f, q, ws);
            const auto b = brute_force_decompose(f, q, m);
            ++runs;
            if (!(a.A == b.A && a.B == b.B)) {
              ++bad_oracle;
              if (first.empty()) first = "oracle disagrees on " + to_string(f);
            }
            if (!(q * a.A + a.B == f)) ++bad_recon;
            if (!adjoint_apply(q, a.B).is_zero()) {
              ++bad_adj;
              if (first.empty()) first = "adjoint(" + dname + ")B != 0 for f = " + to_string(f);
            }
          }
        }
        const std::string c = mname + " divisor " + dname;
        if (bad_oracle) o.failed.push_back("oracle " + c);
        if (bad_recon) o.failed.push_back("reconstruction " + c);
        if (bad_adj) {
          o.failed.push_back("adjoint " + c);
          o.detail += c + ": adjoint nonzero on " + std::to_string(bad_adj) + " monomials; ";
          if (o.witness.empty()) o.witness = first;
        }
      }
    }
  }
  const double t = since(start);
  o.detail += std::to_string(runs) + " decompositions in " + std::to_string(t) + " s";
  if (t > 60.0) o.failed.push_back("runtime");
  return o;
}

Outcome homogeneity() {
  Outcome o{2, "Model homogeneity", {}, "", ""};
  for (const auto& fm : fleet()) {
    const WeightSystem ws(fm.model, Preset::kBlockMinimal);
    const int n = fm.model.n;
    bool ok = validate_model_homogeneity(fm.model, ws) == fm.model.k0;
    ok = ok && ws.weight(key_unit(RealVars::x(n))) == fm.model.k0;
    const Poly term = fm.model.model_term();
    for (const auto& t : term.terms()) {
      if (ws.weight(t.key) != fm.model.k0) {
        ok = false;
        o.witness = Monomial::from_key(t.key, n).str() + " weighs " + std::to_string(ws.weight(t.key));
      }
    }
    if (!ok) o.failed.push_back(fm.name);
  }
  o.detail = "wt(x) = wt(x^s*z^a*zb^b) = k0 on 4 models";
  return o;
}

Outcome identity_round_trip(Tally& tally) {
  Outcome o{3, "Identity round trip", {}, "", ""};
  for (const auto& fm : fleet()) {
    const auto start = Clock::now();
    const auto res = normalize(model_defining(fm.model, fm.order), fm.order);
    const double t = since(start);
    tally.output("identity " + fm.name, res.normal_form);
    const bool ok = res.map == FormalMap::identity(fm.model.n, fm.order) && res.normal_form.tail_through(fm.order).empty();
    if (!ok || t > 10.0) o.failed.push_back(fm.name);
    o.detail += fm.name + " " + std::to_string(t).substr(0, 5) + " s; ";
  }
  return o;
}

struct RoundTrips {
  Outcome perturbation{4, "Perturbation round trip", {}, "", ""};
  Outcome uniqueness{5, "Uniqueness diagnostics", {}, "", ""};
};

RoundTrips perturbation_round_trips(Tally& tally, int maps) {
  RoundTrips r;
  const auto start = Clock::now();
  std::size_t deferred = 0;
  std::size_t resweeps = 0;
  for (const auto& fm : fleet()) {
    std::mt19937 rng(20240 + fm.model.n * 10 + fm.model.s);
    const NormalizerPlan plan(fm.model, fm.order);
    const WeightSystem& ws = plan.weights();
    const DefiningSeries model = model_defining(fm.model, fm.order);
    int ok = 0;
    std::set<std::string> symmetries;
    for (int rep = 0; rep < maps; ++rep) {
      const FormalMap g = random_normalized_map(rng, fm.model.n, fm.model.k0, fm.order);
      const std::string where = fm.name + " map " + std::to_string(rep);
      const DefiningSeries src = transform_defining(model, g, fm.order, ws);
      tally.transform(where, model, g, src, fm.order);
      try {
        const auto res = normalize(src, plan);
        tally.output(where + " normal form", res.normal_form);
        const Poly gr = graph_residual(src, res.map, res.normal_form, fm.order);
        ++tally.transforms;
        if (!gr.is_zero()) tally.graph.push_back(where + " normalizing map: " + to_string(gr));
        if (res.normal_form.tail_through(fm.order).empty() && jet_conditions_check(res.map, fm.model)) {
          ++ok;
        } else if (r.perturbation.witness.empty()) {
          r.perturbation.witness = where;
        }
        for (const auto& d : res.diagnostics) {
          for (const auto& s : d.symmetries) symmetries.insert("class " + std::to_string(d.weight_class) + ": " + s);
          deferred += d.deferred.size();
          if (d.sweep > 0) ++resweeps;
        }
      } catch (const SolverFinding& e) {
        if (r.perturbation.witness.empty()) r.perturbation.witness = where + ": " + e.what();
      }
    }
    if (ok != maps) r.perturbation.failed.push_back(fm.name);
    r.perturbation.detail += fm.name + " " + std::to_string(ok) + "/" + std::to_string(maps) + "; ";
    if (!symmetries.empty()) {
      r.uniqueness.failed.push_back(fm.name);
      if (r.uniqueness.witness.empty()) r.uniqueness.witness = fm.name + " " + *symmetries.begin();
    }
  }
  const double t = since(start);
  r.perturbation.detail += std::to_string(t).substr(0, 6) + " s";
  if (t > 300.0) r.perturbation.failed.push_back("runtime");
  r.uniqueness.detail = "kernel directions with zero image after the jet conditions; " + std::to_string(deferred) +
                        " deferred kernel columns, " + std::to_string(resweeps) + " re-sweep class solves";
  return r;
}

Outcome family_independence() {
  Outcome o{6, "Basis-family independence", {}, "kmax = 5", ""};
  for (const auto& fm : fleet()) {
    const WeightSystem ws(fm.model, Preset::kBlockMinimal);
    try {
      const auto fam = build_basis_family(fm.model, 5, ws);
      o.detail += "; " + fm.name + " rank " + std::to_string(fam.entries.size());
    } catch (const DependentFamily& e) {
      o.failed.push_back(fm.name);
      if (o.witness.empty()) o.witness = fm.name + ": " + e.what();
    }
  }
  return o;
}

/// Extra transforms beyond the round trips: compositions of random maps.
void composition_transforms(Tally& tally) {
  std::mt19937 rng(77);
  for (const auto& fm : fleet()) {
    const WeightSystem ws(fm.model, Preset::kBlockMinimal);
    const DefiningSeries model = model_defining(fm.model, fm.order);
    for (int rep = 0; rep < 3; ++rep) {
      const FormalMap g = random_normalized_map(rng, fm.model.n, fm.model.k0, fm.order);
      const FormalMap f = random_normalized_map(rng, fm.model.n, fm.model.k0, fm.order);
      const std::string where = fm.name + " composition " + std::to_string(rep);
      const auto a = transform_defining(model, g, fm.order, ws);
      tally.transform(where + " g", model, g, a, fm.order);
      const auto b = transform_defining(a, f, fm.order, ws);
      tally.transform(where + " f", a, f, b, fm.order);
    }
  }
}

std::string join(const std::vector<std::string>& v, std::size_t limit = 4) {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) s += (i ? "; " : "") + v[i];
  if (v.size() > limit) s += "; ...";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  int maps = 20;
  if (argc > 1) maps = std::max(20, std::atoi(argv[1]));

  Tally tally;
  std::vector<Outcome> outcomes;
  outcomes.push_back(fischer_oracle());
  outcomes.push_back(homogeneity());
  outcomes.push_back(identity_round_trip(tally));
  auto rt = perturbation_round_trips(tally, maps);
  outcomes.push_back(rt.perturbation);
  outcomes.push_back(rt.uniqueness);
  outcomes.push_back(family_independence());
  composition_transforms(tally);
  outcomes.push_back({7, "Reality preservation", {}, "", join(tally.unreal)});
  if (!tally.unreal.empty()) outcomes.back().failed.push_back("reality");
  outcomes.back().detail = std::to_string(tally.transforms) + " transform outputs checked";
  outcomes.push_back({8, "Graph-consistency oracle", {}, "", join(tally.graph)});
  if (!tally.graph.empty()) outcomes.back().failed.push_back("graph");
  outcomes.back().detail = std::to_string(tally.transforms) + " graph substitutions";

  bool unexpected = false;
  std::set<std::string> seen;
  for (const auto& o : outcomes) {
    std::cout << (o.failed.empty() ? "PASS" : "FAIL") << " [" << o.id << "] " << o.title << " -- " << o.detail << "\n";
    for (const auto& c : o.failed) {
      const std::string key = std::to_string(o.id) + "|" + c;
      seen.insert(key);
      const bool known = kKnown.contains(key);
      unexpected = unexpected || !known;
      std::cout << "       failing case: " << c << (known ? " (known)" : " (UNEXPECTED)") << "\n";
    }
    if (!o.failed.empty() && !o.witness.empty()) std::cout << "       witness: " << o.witness << "\n";
  }
  for (const auto& k : kKnown) {
    if (!seen.contains(k)) {
      std::cout << "UNEXPECTED PASS of known failure " << k << "\n";
      unexpected = true;
    }
  }
  return unexpected ? 1 : 0;
}
