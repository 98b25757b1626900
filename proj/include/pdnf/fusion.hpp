#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pdnf/families.hpp"
#include "pdnf/model.hpp"
#include "pdnf/rng.hpp"
#include "pdnf/venjunction.hpp"

namespace pdnf {

/// (p * q)_l = p_l q_l / sum_k p_k q_k. Throws ContradictoryEvidence when the
/// two triples have no common support.
ProbTriple fuse(const ProbTriple& p, const ProbTriple& q);

/// Combined evidence of two PDNFs. For a softmax family this is weight
/// addition; any other family is rejected since addition is then only an
/// approximation of fusion (use fuse_positions instead).
Pdnf fuse_pdnf(const Pdnf& a, const Pdnf& b);

/// Position-wise fusion of the two induced triple grids.
std::vector<ProbTriple> fuse_positions(const Pdnf& a, const Pdnf& b);

/// A scalar weight map xi -> triple (one variable of a family).
using WeightMap = std::function<ProbTriple(double)>;

/// max_l |F_l(xi + eta) - fuse(F(xi), F(eta))_l|.
double composition_deviation(const WeightMap& map, double xi, double eta);
double check_composition(const SoftmaxFamily& family, std::size_t j, double xi, double eta);

struct CompositionWitness {
  double xi;
  double eta;
  double deviation;
};

/// Searches all grid pairs for a violation of additive fusion larger than
/// `tolerance`; nullopt means none found on the grid. Pairs whose triples
/// cannot be fused are skipped. Returns the largest violation found.
std::optional<CompositionWitness> check_characterization(const WeightMap& map, std::span<const double> grid,
                                                         double tolerance = 1e-6);

/// Accumulates a one-signed weight stream and returns the first k (1-based)
/// at which the favoured literal exceeds 1 - epsilon: presence for a positive
/// stream (a_pos must be the strict maximum), negation for a negative one
/// (a_neg must be the strict minimum). Throws on zero or mixed-sign entries,
/// or if the stream ends first.
std::size_t convergence_experiment(const SoftmaxFamily& family, std::size_t j, std::span<const double> stream,
                                   double epsilon);

struct IdentificationBound {
  double p_min;
  double delta;
  std::size_t n;
  std::size_t m;
  std::uint64_t draws;  // N = ceil(ln(3^{nm} / delta) / p_min)
};

IdentificationBound coupon_bound(double p_min, double delta, std::size_t n, std::size_t m);

struct IdentificationTrial {
  std::size_t trial;
  std::uint64_t draws_used;  // draws until the support was covered, N if it never was
  bool covered;
};

struct IdentificationResult {
  IdentificationBound bound;
  std::size_t support_size;
  std::vector<IdentificationTrial> trials;
  double success_rate;
};

/// Repeats the fixed-N coupon experiment. p_min defaults to the smallest
/// positive mass of the enumerated support. Trial k draws from its own
/// stream, so results do not depend on scheduling.
IdentificationResult identification_experiment(const VenjunctionMeasure& meas, Rng& rng, std::size_t trials,
                                               double delta, std::optional<double> p_min = std::nullopt,
                                               std::uint64_t cap = kDefaultEnumerationCap);

/// Rows "trial,draws_used,covered" followed by a "# summary" line.
void write_identification_csv(std::ostream& out, const IdentificationResult& result);

}  // namespace pdnf
