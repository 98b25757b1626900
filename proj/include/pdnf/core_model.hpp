#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pdnf {

/// Ternary realisation of a weighted literal: negated, absent or present.
enum class Literal : std::int8_t { kNegated = -1, kAbsent = 0, kPresent = 1 };

/// Throws pdnf::Error unless value is -1, 0 or +1.
Literal literal_from_int(int value);

inline int to_int(Literal l) { return static_cast<int>(l); }

/// Index 0, 1, 2 for negated, absent, present.
inline std::size_t literal_slot(Literal l) { return static_cast<std::size_t>(to_int(l) + 1); }

/// The n x m matrix of literal weights. Row i is the conjunction observed at
/// time i (ascending), column j is variable j. Indices are zero-based.
class WeightMatrix {
 public:
  /// Zero matrix.
  WeightMatrix(std::size_t n, std::size_t m);
  /// Row-major values; size must be n*m and every entry finite.
  WeightMatrix(std::size_t n, std::size_t m, std::vector<double> values);

  static WeightMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * m_ + j]; }

  std::span<const double> values() const { return values_; }
  std::vector<std::vector<double>> rows() const;

  /// Appends all-zero conjunctions up to n rows (no-op when already that long).
  WeightMatrix padded_to(std::size_t n) const;

  bool is_zero() const;
  std::string shape_string() const;

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<double> values_;
};

/// Whether operands with a different number of conjunctions are padded with
/// empty conjunctions (the default) or rejected.
enum class ShapePolicy { kPad, kStrict };

WeightMatrix add(const WeightMatrix& a, const WeightMatrix& b, ShapePolicy policy = ShapePolicy::kPad);
WeightMatrix subtract(const WeightMatrix& a, const WeightMatrix& b,
                      ShapePolicy policy = ShapePolicy::kPad);
WeightMatrix scale(double alpha, const WeightMatrix& z);

/// Sum of absolute weights.
double norm_l1(const WeightMatrix& z);

/// norm_l1(a - b).
double distance_l1(const WeightMatrix& a, const WeightMatrix& b,
                   ShapePolicy policy = ShapePolicy::kPad);

}  // namespace pdnf
