// normform: command-line front end.
//
//   normform normalize --input M.json [--order T] [--output R.json] [--diagnostics D.json] [--strict]
//   normform verify    --input R.json [--output report.json]
//   normform fischer   --input F.json [--output out.json]
//   normform weights   --input W.json [--output out.json]
//
// Exit codes: 0 ok, 1 validation failure, 2 solver degeneracy, 3 I/O or parse error.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "normform/errors.hpp"
#include "normform/report.hpp"

using namespace normform;

namespace {

void emit(const RunConfig& cfg, const Json& j) {
  if (cfg.output_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(cfg.output_path, j);
  }
}

int run_normalize(const RunConfig& cfg) {
  if (cfg.preset != Preset::kBlockMinimal) {
    throw ValidationError("weight preset", "normalize runs on block_minimal weights");
  }
  const ParsedInput in = parse_input(cfg.input_path, cfg);
  const int order = in.config.order;
  const auto start = std::chrono::steady_clock::now();
  const NormalizerPlan plan(in.model, order);
  const NormalFormResult res = normalize(in.series, plan, cfg.strict);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  DefiningSeries source = in.series;
  Json out = {{"source", to_json(source)}, {"normal_form", to_json(res.normal_form)}, {"map", to_json(res.map)}};
  emit(cfg, out);
  if (!cfg.diagnostics_path.empty()) {
    Json classes = Json::array();
    for (const auto& r : res.diagnostics) classes.push_back(to_json(r));
    write_json_file(cfg.diagnostics_path, {{"order", order}, {"seconds", secs}, {"classes", classes}});
  }
  return 0;
}

int run_verify(const RunConfig& cfg) {
  const Json j = read_json_file(cfg.input_path);
  if (!j.contains("source") || !j.contains("normal_form") || !j.contains("map")) {
    throw ParseError("verify input needs \"source\", \"normal_form\" and \"map\"");
  }
  RunConfig c = cfg;
  c.subcommand = "verify";
  const ParsedInput in = parse_input(j.at("source"), c);
  NormalFormResult res;
  res.normal_form = defining_from_json(j.at("normal_form"));
  res.map = map_from_json(j.at("map"), in.model.n);
  validate_map(res.map, in.model.k0);
  const VerifyReport rep = verify_result(in.series, res);
  std::cerr << rep.summary();
  emit(cfg, rep.to_json());
  return rep.pass() ? 0 : 1;
}

int run_fischer(const RunConfig& cfg) {
  const Json j = read_json_file(cfg.input_path);
  if (!j.contains("model") || !j.contains("f")) throw ParseError("fischer input needs \"model\" and \"f\"");
  const ModelSpec model = model_from_json(j.at("model"));
  const WeightSystem ws(model, cfg.preset);
  const Poly f = poly_from_json(j.at("f"), model.n);
  const Poly q = j.contains("divisor") ? poly_from_json(j.at("divisor"), model.n) : model.divisor();
  const auto d = fischer_decompose(f, q, ws);
  const Poly adj = adjoint_apply(q, d.B);
  Json cert = {{"reconstruction", q * d.A + d.B == f}, {"adjoint_of_divisor_on_B", to_json(adj)},
               {"kernel", adj.is_zero()}, {"grading", to_string(d.grading)}};
  emit(cfg, {{"A", to_json(d.A)}, {"B", to_json(d.B)}, {"certificate", cert}});
  return 0;
}

int run_weights(const RunConfig& cfg) {
  const Json j = read_json_file(cfg.input_path);
  if (!j.contains("model")) throw ParseError("weights input needs \"model\"");
  const ModelSpec model = model_from_json(j.at("model"));
  Json monos = j.contains("monomials") ? j.at("monomials") : Json::array();
  if (j.contains("monomial")) monos.push_back(j.at("monomial"));
  Json out = Json::array();
  for (const auto& mj : monos) {
    const Monomial m = monomial_from_json(mj, model.n);
    Json entry = {{"monomial", m.str()}};
    for (const Preset p : {Preset::kBlockMinimal, Preset::kLiteral}) {
      const WeightSystem ws(model, p);
      Json evals = Json::array();
      for (const auto& e : ws.evaluations(m.key())) {
        evals.push_back({{"rule", e.rule}, {"value", e.value}, {"detail", e.detail}});
      }
      Json w;
      try {
        w = ws.weight(m.key());
      } catch (const InfeasibleWeight& e) {
        w = std::string("infeasible: ") + e.what();
      }
      entry[to_string(p)] = {{"weight", w}, {"evaluations", evals}};
    }
    out.push_back(entry);
  }
  Json homogeneity;
  try {
    homogeneity = validate_model_homogeneity(model, WeightSystem(model, cfg.preset));
  } catch (const NotHomogeneous& e) {
    homogeneity = e.what();
  }
  emit(cfg, {{"model_weight", homogeneity}, {"preset", to_string(cfg.preset)}, {"weights", out}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact normal forms of real hypersurfaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string preset = "block_minimal";
  for (const char* name : {"normalize", "fischer", "weights", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", cfg.input_path, "input JSON")->required();
    sub->add_option("--order", cfg.order, "working order (default: the input's)")->check(CLI::NonNegativeNumber);
    sub->add_option("--weights", preset, "weight preset: block_minimal | literal");
    sub->add_option("--output", cfg.output_path, "output JSON (default: stdout)");
    sub->add_option("--diagnostics", cfg.diagnostics_path, "per-class diagnostics JSON");
    sub->add_flag("--strict", cfg.strict, "fail on directions the jet conditions leave free");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    cfg.preset = parse_preset(preset);
    if (cfg.subcommand == "normalize") return run_normalize(cfg);
    if (cfg.subcommand == "verify") return run_verify(cfg);
    if (cfg.subcommand == "fischer") return run_fischer(cfg);
    return run_weights(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const SolverFinding& e) {
    std::cerr << "solver: " << e.what() << "\n";
    return 2;
  } catch (const SingularDecomposition& e) {
    std::cerr << "solver: " << e.what() << "\n";
    return 2;
  } catch (const DependentFamily& e) {
    std::cerr << "solver: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // ValidationError, NotHomogeneous, InfeasibleWeight, OrderOverflow and
    // other rejected inputs.
    std::cerr << "invalid: " << e.what() << "\n";
    return 1;
  }
}
