#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "pdnf/core_model.hpp"

namespace pdnf {

/// Distribution over {negated, absent, present} at one position.
struct ProbTriple {
  double neg = 0.0;
  double eps = 1.0;
  double pos = 0.0;

  double at(Literal l) const;
  std::array<double, 3> as_array() const { return {neg, eps, pos}; }
  double sum() const { return neg + eps + pos; }
  bool is_valid(double tol = 1e-12) const;

  static ProbTriple uniform() { return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; }
  static ProbTriple certain(Literal l);

  friend bool operator==(const ProbTriple&, const ProbTriple&) = default;
};

/// Throws unless the triple is a probability vector within tol.
void require_valid(const ProbTriple& p, double tol = 1e-12);

/// Exponential family F_l(xi) = exp(a_l xi) / sum_k exp(a_k xi), one coefficient
/// triple (a_neg, a_eps, a_pos) per variable.
class SoftmaxFamily {
 public:
  using Coefficients = std::array<double, 3>;

  explicit SoftmaxFamily(std::vector<Coefficients> alpha);
  /// m variables sharing the default coefficients (-1, 0, +1).
  static SoftmaxFamily symmetric(std::size_t m);

  std::size_t m() const { return alpha_.size(); }
  const std::vector<Coefficients>& alpha() const { return alpha_; }

  ProbTriple eval(std::size_t j, double xi) const;

  /// All three coefficients equal: the family is constant-uniform.
  bool is_constant(std::size_t j) const;

 private:
  std::vector<Coefficients> alpha_;
};

/// Piecewise-linear threshold family: certain negation below `low`, a linear
/// crossfade from negation to absence on [low, high), certain presence at and
/// above `high`.
class ThresholdFamily {
 public:
  ThresholdFamily(std::vector<double> low, std::vector<double> high);

  std::size_t m() const { return low_.size(); }
  const std::vector<double>& low() const { return low_; }
  const std::vector<double>& high() const { return high_; }

  ProbTriple eval(std::size_t j, double xi) const;

 private:
  std::vector<double> low_;
  std::vector<double> high_;
};

/// The weight map used by a PDNF: one of the built-in families.
class ProbabilityFamily {
 public:
  ProbabilityFamily(SoftmaxFamily f) : impl_(std::move(f)) {}
  ProbabilityFamily(ThresholdFamily f) : impl_(std::move(f)) {}

  std::size_t m() const;
  /// Throws pdnf::Error when j >= m() or xi is not finite.
  ProbTriple eval(std::size_t j, double xi) const;

  bool is_softmax() const { return std::holds_alternative<SoftmaxFamily>(impl_); }
  const SoftmaxFamily* softmax() const { return std::get_if<SoftmaxFamily>(&impl_); }
  const ThresholdFamily* threshold() const { return std::get_if<ThresholdFamily>(&impl_); }
  std::string kind() const { return is_softmax() ? "softmax" : "threshold"; }

 private:
  std::variant<SoftmaxFamily, ThresholdFamily> impl_;
};

/// Clause-by-clause check of the weight-map axioms on a sample grid.
struct DefinitionReport {
  struct Variable {
    bool pos_nondecreasing = true;
    bool neg_nonincreasing = true;
    bool sums_to_one = true;
    bool pos_zero_at_origin = true;
    bool neg_zero_at_origin = true;
    bool strict() const {
      return pos_nondecreasing && neg_nonincreasing && sums_to_one && pos_zero_at_origin && neg_zero_at_origin;
    }
  };
  std::vector<Variable> variables;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;

  /// Every clause holds for every variable; otherwise the family is "non-strict".
  bool strict() const;
};

/// Evaluates each variable of `family` on `points` (>= 100) equally spaced
/// values spanning [lo, hi] plus the origin.
DefinitionReport validate_definition(const ProbabilityFamily& family, double lo, double hi,
                                     std::size_t points = 1001);

/// Shannon entropy in nats, 0 log 0 := 0.
double entropy(const ProbTriple& p);

/// Output probabilities of an automaton whose inputs are equiprobable, from
/// the cardinalities of the input classes mapped to each output.
ProbTriple partition_probs(std::size_t count_pos, std::size_t count_neg, std::size_t count_eps);

}  // namespace pdnf
