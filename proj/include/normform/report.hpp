#pragma once

#include <string>
#include <vector>

#include "normform/fischer.hpp"
#include "normform/io.hpp"

namespace normform {

struct RunConfig {
  std::string subcommand;
  std::string input_path;
  int order = 0;  // 0: take the input's order
  Preset preset = Preset::kBlockMinimal;
  std::string output_path;
  std::string diagnostics_path;
  bool strict = false;
};

struct ParsedInput {
  ModelSpec model;
  DefiningSeries series;
  RunConfig config;
};

/// Reads a defining series and checks it against `config` (reality,
/// homogeneity under the chosen preset, nondegeneracy, order range).
ParsedInput parse_input(const std::string& path, RunConfig config);
ParsedInput parse_input(const Json& j, RunConfig config);

/// Dense pairing-matrix solve per slice: A minimizes the Fischer distance
/// of f from divisor·(slice), found by inverting the Gram matrix of the
/// products divisor·a over the monomials a of the slice.
FischerDecomposition brute_force_decompose(const Poly& f, const Poly& divisor, const ModelSpec& model);

struct Check {
  std::string name;
  bool pass = true;
  bool advisory = false;  // reported, not counted
  std::string witness;
};

struct VerifyReport {
  std::vector<Check> checks;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] Json to_json() const;
  [[nodiscard]] std::string summary() const;
};

/// Re-checks a normal form against its source: graph oracle, agreement with
/// a fresh transform, reality, jets, the normal-space condition per class
/// and (advisory) the iterated-division membership per class.
VerifyReport verify_result(const DefiningSeries& source, const NormalFormResult& result);

}  // namespace normform
