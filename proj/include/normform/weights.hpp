#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "normform/model.hpp"

namespace normform {

enum class Preset { kLiteral, kBlockMinimal };

std::string to_string(Preset p);
Preset parse_preset(const std::string& text);

/// One admissible evaluation of a monomial's pseudo-weight.
struct WeightEvaluation {
  std::string rule;  // rule label, e.g. "block" or "blocks"
  int value = 0;
  std::string detail;
};

/// Pseudo-weight grading attached to a model.
///
/// block_minimal: x weighs k0, z_k and z̄_k weigh 1, and every sub-product
/// x^s·μ with μ a monomial of P may be priced as one block of weight k0;
/// the weight is the minimum over all block extractions.
///
/// literal: every rule of the literal rule table whose hypothesis
/// matches is evaluated and the minimum is taken.
class WeightSystem {
 public:
  WeightSystem(ModelSpec model, Preset preset);

  [[nodiscard]] const ModelSpec& model() const { return model_; }
  [[nodiscard]] Preset preset() const { return preset_; }

  /// Weight of a real-universe monomial.
  [[nodiscard]] int weight(MonoKey key) const;
  [[nodiscard]] int weight(const Monomial& m) const { return weight(m.key()); }
  /// Weight of a holomorphic monomial z^α w^n: |α| + k0·n.
  [[nodiscard]] int holo_weight(MonoKey key) const;

  /// Every admissible evaluation, in deterministic enumeration order.
  [[nodiscard]] std::vector<WeightEvaluation> evaluations(MonoKey key) const;

  /// Largest number of blocks extractable from the monomial.
  [[nodiscard]] int max_blocks(MonoKey key) const;

 private:
  [[nodiscard]] int compute(MonoKey key) const;
  [[nodiscard]] std::vector<WeightEvaluation> literal_evaluations(MonoKey key) const;
  [[nodiscard]] std::vector<WeightEvaluation> block_evaluations(MonoKey key) const;

  struct Cache {
    std::mutex mutex;
    std::unordered_map<MonoKey, int> values;
  };

  ModelSpec model_;
  Preset preset_;
  std::vector<MonoKey> blocks_;
  std::shared_ptr<Cache> cache_;
};

/// The weight() operation.
int weight(const Monomial& m, const WeightSystem& ws);

/// Partition of p by weight; the parts sum to p.
std::map<int, Poly> weighted_parts(const Poly& p, const WeightSystem& ws);

/// Part of p of weight exactly w.
Poly weighted_part(const Poly& p, const WeightSystem& ws, int w);

/// Weight of a weighted-homogeneous p; throws NotHomogeneous otherwise.
int homogeneous_weight(const Poly& p, const WeightSystem& ws);

/// Checks that x and every monomial of x^s·P weigh k0; returns k0.
int validate_model_homogeneity(const ModelSpec& model, const WeightSystem& ws);

/// All real monomials (N variables) of weight exactly w, canonical order.
std::vector<MonoKey> monomials_of_weight(const WeightSystem& ws, int w);

}  // namespace normform
