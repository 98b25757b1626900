#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "pdnf/core_model.hpp"
#include "pdnf/venjunction.hpp"

namespace pdnf {

/// 0 for equal literals, 1 when exactly one is absent, 2 for a sign flip.
int literal_weight(Literal a, Literal b);

/// Weighted Hamming distance, in [0, 2nm].
int venjunction_distance(const Venjunction& u, const Venjunction& v);

/// Exact law of S = d(V, target) for V drawn from a product measure.
struct DistanceDistribution {
  std::vector<double> coeffs;  // coeffs[k] = P{S = k}, k = 0..2nm
  double mean = 0.0;           // sum of per-position E[zeta]
  double stddev = 0.0;         // sqrt of the summed per-position variances

  std::size_t max_distance() const { return coeffs.size() - 1; }
};

/// Multiplies the per-position generating polynomials p0 + p1 t + p2 t^2.
DistanceDistribution distance_distribution(const VenjunctionMeasure& meas, const Venjunction& target);

/// P{S <= rho}; rho must lie in [0, 2nm].
double ball_probability(const DistanceDistribution& dist, int rho);

/// Standard normal CDF.
double normal_cdf(double z);

/// Phi((rho + 0.5 - mean) / stddev). Throws for a degenerate distribution.
double normal_approx(const DistanceDistribution& dist, double rho);

/// Rows "k,c_k,cumulative".
void write_distance_csv(std::ostream& out, const DistanceDistribution& dist);

}  // namespace pdnf
