#pragma once

#include <string>
#include <vector>

#include "normform/weights.hpp"

namespace normform {

/// q*(∂): the Fischer adjoint of multiplication by `source`.
struct AdjointOperator {
  Poly source;
};

/// ⟨p, q⟩ = Σ p_m·conj(q_m)·m!, with m! the product of factorials of the
/// exponents of m.
Gaussian fischer_pairing(const Poly& p, const Poly& q);

/// Each monomial of op.source becomes the matching mixed partial derivative,
/// with conjugated coefficient.
Poly adjoint_apply(const AdjointOperator& op, const Poly& p);
inline Poly adjoint_apply(const Poly& q, const Poly& p) { return adjoint_apply(AdjointOperator{q}, p); }

/// Slice grading used to split a decomposition into finite systems.
enum class Grading {
  kPlain,      // total degree; divisor homogeneous in degree
  kWeighted,   // pseudo-weight, additive for s = 0
  kProjected,  // pseudo-weight slices, kernel condition projected onto the slice
};

std::string to_string(Grading g);

/// Grading chosen for `divisor`: pseudo-weight when it is additive, plain
/// degree when the divisor is homogeneous in it, projected slices otherwise.
/// Throws NotHomogeneous when the divisor is not weighted-homogeneous.
Grading decomposition_grading(const Poly& divisor, const WeightSystem& ws);

/// Slice label of a monomial under a grading.
int grading_degree(MonoKey key, Grading g, const WeightSystem& ws);

/// Monomials of slice `d` under a grading.
std::vector<MonoKey> grading_slice(Grading g, const WeightSystem& ws, int d);

struct FischerDecomposition {
  Poly A;
  Poly B;
  Grading grading = Grading::kPlain;
};

/// f = divisor·A + B with adjoint_apply(divisor, B) = 0 slice by slice.
///
/// Under kProjected only the slice component of the kernel condition is
/// imposed; reconstruction stays exact.
FischerDecomposition fischer_decompose(const Poly& f, const Poly& divisor, const WeightSystem& ws);

enum class JConvention { kKMinus1, kKMinus2 };

struct FamilyEntry {
  enum class Kind { kPure, kMixed };  // z^I or x·z̄_l·z^J
  Kind kind = Kind::kPure;
  bool conjugated = false;
  int k = 0;
  std::vector<int> index;  // I or J
  int l = 0;
  Poly source;
  Poly quotient;
  Poly remainder;

  [[nodiscard]] std::string label() const;
};

struct FischerBasisFamily {
  ModelSpec model;
  int kmax = 0;
  JConvention convention = JConvention::kKMinus1;
  std::vector<FamilyEntry> entries;
};

/// Decompositions of z^I (|I| = k) and x·z̄_l·z^J against the model divisor
/// for 2 ≤ k ≤ kmax, plus conjugates. Throws DependentFamily when the
/// remainders are linearly dependent.
FischerBasisFamily build_basis_family(const ModelSpec& model, int kmax, const WeightSystem& ws,
                                      JConvention convention = JConvention::kKMinus1);

/// The same family without the independence check.
FischerBasisFamily assemble_basis_family(const ModelSpec& model, int kmax, const WeightSystem& ws,
                                         JConvention convention = JConvention::kKMinus1);

/// A vanishing combination of the remainders, rendered; empty if independent.
std::string dependence_witness(const FischerBasisFamily& family);

/// Kernel conditions imposed at each stage of the iterated division.
enum class KernelClosure {
  kSymmetric,  // B̃, B, conj B, conj B̃
  kLiteral,    // B̃, conj B, conj B̃
};

struct NormalizationResidual {
  Poly residual;
  std::vector<std::string> certificate;
};

/// Membership of a weighted-homogeneous p in the normalization space of its
/// class: iterated division P_k = divisor·P_{k+1} + R_{k+1} for
/// k = 0..⌊wt/k0⌋, each R_{k+1} in the adjoint kernels of the family
/// entries of index k, and P_{wt/k0−1} free of x when k0 divides wt.
///
/// The residual is the Fischer-orthogonal component of p off the space; it
/// vanishes iff p belongs to it.
NormalizationResidual normalization_residual(const Poly& p, const FischerBasisFamily& family,
                                             const WeightSystem& ws,
                                             KernelClosure closure = KernelClosure::kSymmetric);

}  // namespace normform
