#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "pdnf/core_model.hpp"
#include "pdnf/families.hpp"

namespace pdnf {

/// Piecewise-constant function on [0, nm]. Segment (t, j) is the unit
/// interval [j + t m, j + 1 + t m] (zero-based t, j) and carries one height.
class Encoder {
 public:
  Encoder(std::size_t n, std::size_t m, std::vector<double> heights);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  double height(std::size_t t, std::size_t j) const { return heights_[t * m_ + j]; }
  const std::vector<double>& heights() const { return heights_; }

  /// [start, end] of segment (t, j).
  std::pair<double, double> segment(std::size_t t, std::size_t j) const;

  /// Value at x in [0, nm]; interior breakpoints belong to the right segment.
  double operator()(double x) const;

  friend bool operator==(const Encoder&, const Encoder&) = default;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<double> heights_;
};

Encoder encode(const WeightMatrix& z);
WeightMatrix decode(const Encoder& e);

/// Literal probabilities from the clamped integral of the encoder over a
/// segment: positive mass up to 1 is presence, negative mass down to -1 is
/// negation, the remainder is absence.
ProbTriple segment_probs(const Encoder& e, std::size_t t, std::size_t j);

/// Integral of |e| over [0, nm].
double l1_norm(const Encoder& e);

/// (max(e, 0), min(e, 0)).
std::pair<Encoder, Encoder> signed_parts(const Encoder& e);

/// l1 mass of the positive part minus l1 mass of the negative part.
double asymmetry(const Encoder& e);

/// Rows "segment_start,segment_end,height" with a header line.
void write_csv(std::ostream& out, const Encoder& e);

}  // namespace pdnf
