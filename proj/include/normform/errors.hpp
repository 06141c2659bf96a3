#pragma once

#include <stdexcept>
#include <string>

namespace normform {

/// Malformed input text (JSON shape, rational strings).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A domain invariant does not hold; `invariant` names it.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  [[nodiscard]] const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

class NotHomogeneous : public std::runtime_error {
 public:
  NotHomogeneous(std::string monomial, int weight, int expected)
      : std::runtime_error("monomial " + monomial + " has weight " + std::to_string(weight) +
                           ", expected " + std::to_string(expected)),
        monomial_(std::move(monomial)),
        weight_(weight) {}
  [[nodiscard]] const std::string& monomial() const { return monomial_; }
  [[nodiscard]] int weight() const { return weight_; }

 private:
  std::string monomial_;
  int weight_;
};

class InfeasibleWeight : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal fault: a graded slice of a Fischer decomposition is singular.
class SingularDecomposition : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DependentFamily : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OrderOverflow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The class-T normalization system is rank deficient or inconsistent.
class SolverFinding : public std::runtime_error {
 public:
  enum class Kind { kNonUniqueSolution, kInconsistent, kNotTriangular };
  SolverFinding(Kind kind, int weight_class, const std::string& detail)
      : std::runtime_error(std::string(kind == Kind::kNonUniqueSolution ? "NonUniqueSolution"
                                       : kind == Kind::kInconsistent    ? "Inconsistent"
                                                                        : "NotTriangular") +
                           " at weight class " + std::to_string(weight_class) + ": " + detail),
        kind_(kind),
        weight_class_(weight_class) {}
  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int weight_class() const { return weight_class_; }

 private:
  Kind kind_;
  int weight_class_;
};

}  // namespace normform
