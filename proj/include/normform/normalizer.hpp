#pragma once

#include <string>
#include <vector>

#include "normform/hypersurface.hpp"
#include "normform/linalg.hpp"

namespace normform {

/// One real unknown of the per-class system: the real or imaginary part of
/// the coefficient of `monomial` in F_component (component < N) or in G
/// (component == N).
struct Unknown {
  int component = 0;
  MonoKey monomial = 0;
  bool imaginary = false;

  [[nodiscard]] std::string label(int n) const;
};

/// A column of a class system: a fixed real combination of unknowns whose
/// linearized image first becomes nonzero at `weight_class`.
struct Column {
  std::vector<std::pair<Unknown, Rational>> parts;
  Poly image;
  int weight_class = 0;

  [[nodiscard]] std::string label(int n) const;
};

/// Real coordinates on the real polynomials of one weight class.
///
/// A self-conjugate monomial contributes Re c; a pair (m, m̄) with m < m̄
/// contributes Re c_m and Im c_m.
class RealSlice {
 public:
  RealSlice() = default;
  RealSlice(int n, std::vector<MonoKey> monomials);

  [[nodiscard]] std::size_t dim() const { return coords_.size(); }
  [[nodiscard]] Vector<Rational> coordinates(const Poly& p) const;
  [[nodiscard]] Poly poly(const Vector<Rational>& v) const;
  /// Diagonal of the Fischer Gram matrix in these coordinates.
  [[nodiscard]] const Vector<Rational>& gram() const { return gram_; }
  [[nodiscard]] const std::vector<MonoKey>& monomials() const { return monomials_; }

 private:
  struct Coord {
    MonoKey key;
    bool imaginary;
  };
  int n_ = 1;
  std::vector<MonoKey> monomials_;
  std::vector<Coord> coords_;
  Vector<Rational> gram_;
};

/// The linear system attached to one weight class.
struct ClassSystem {
  int weight_class = 0;
  RealSlice slice;
  std::vector<Column> columns;        // every column entering the class
  std::vector<Column> jet_pinned;     // removed by the jet conditions
  std::vector<Column> solved;         // independent columns actually solved for
  std::vector<Column> deferred;       // kernel combinations moved to a later class
  std::vector<Column> symmetries;     // kernel combinations with zero image through the order
  Matrix<Rational> image;             // slice.dim() × solved.size()
  std::size_t rank = 0;               // rank after the jet conditions
  Matrix<Rational> normal_matrix;     // imageᵀ·Gram·image
};

/// Per-class unknowns, images and gauge, computed once per (model, order).
class NormalizerPlan {
 public:
  NormalizerPlan(const ModelSpec& model, int order);

  [[nodiscard]] const ModelSpec& model() const { return model_; }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] const WeightSystem& weights() const { return ws_; }
  [[nodiscard]] const std::vector<ClassSystem>& classes() const { return classes_; }
  [[nodiscard]] const ClassSystem* find(int weight_class) const;

  /// Linearized action of one unknown at the model, truncated at the order.
  [[nodiscard]] Poly unknown_image(const Unknown& u) const;

  /// Normal-space test: the class part is Fischer-orthogonal to the image.
  [[nodiscard]] bool is_normal(const ClassSystem& cs, const Poly& part) const;

  /// Fischer-orthogonal projection of a real class part onto the normal space.
  [[nodiscard]] Poly normal_part(const ClassSystem& cs, const Poly& part) const;

  /// Lowest class whose part is not normal; 0 when all are.
  [[nodiscard]] int first_abnormal(const DefiningSeries& m) const;

  /// Projection data: returns the solved coefficients u with part − image·u
  /// normal.
  [[nodiscard]] Vector<Rational> solve(const ClassSystem& cs, const Poly& part) const;

 private:
  ModelSpec model_;
  int order_;
  WeightSystem ws_;
  Poly phi0_;
  std::vector<ClassSystem> classes_;
};

struct ClassRecord {
  int weight_class = 0;
  std::size_t rows = 0;
  std::size_t unknowns = 0;
  std::size_t jet_pinned = 0;
  std::size_t rank = 0;
  std::size_t kernel_after_jets = 0;
  std::vector<std::string> deferred;
  std::vector<std::string> symmetries;
  int iterations = 0;
  int sweep = 0;
  double seconds = 0.0;
  bool triangular = true;
  bool normal = true;
};

struct NormalizationState {
  ModelSpec model;
  FormalMap current_map;
  DefiningSeries current_tail;
  int T = 0;
  std::vector<ClassRecord> diagnostics;
};

struct NormalFormResult {
  DefiningSeries normal_form;
  FormalMap map;
  std::vector<ClassRecord> diagnostics;
};

/// Processes class state.T and advances T. With `strict`, a kernel
/// direction whose image vanishes through the order raises
/// NonUniqueSolution instead of being pinned.
NormalizationState solve_degree(NormalizationState state, const NormalizerPlan& plan, bool strict = false);

/// Normal form through class `order`, with the normalizing map.
NormalFormResult normalize(const DefiningSeries& m, int order, bool strict = false);
NormalFormResult normalize(const DefiningSeries& m, const NormalizerPlan& plan, bool strict = false);

/// Map fix such that fix ∘ map satisfies the jet conditions exactly.
FormalMap jet_correction(const FormalMap& map, const ModelSpec& model);

/// Map increment z + f, w + g built from solved coefficients (scaled by sign).
FormalMap increment_map(const ClassSystem& cs, const Vector<Rational>& coeffs, int n, int order,
                        const Rational& sign);

}  // namespace normform
