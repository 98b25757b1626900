#include "pdnf/distance.hpp"

#include <cmath>
#include <ostream>

#include "pdnf/error.hpp"
#include "pdnf/format.hpp"

namespace pdnf {

int literal_weight(Literal a, Literal b) {
  if (a == b) return 0;
  if (a == Literal::kAbsent || b == Literal::kAbsent) return 1;
  return 2;
}

int venjunction_distance(const Venjunction& u, const Venjunction& v) {
  if (u.n() != v.n() || u.m() != v.m()) throw Error("shape mismatch between venjunctions");
  int d = 0;
  for (std::size_t k = 0; k < u.literals().size(); ++k) d += literal_weight(u.literals()[k], v.literals()[k]);
  return d;
}

DistanceDistribution distance_distribution(const VenjunctionMeasure& meas, const Venjunction& target) {
  if (target.n() != meas.n() || target.m() != meas.m()) throw Error("shape mismatch between target and measure");
  const std::size_t cells = meas.n() * meas.m();
  DistanceDistribution dist;
  dist.coeffs.assign(2 * cells + 1, 0.0);
  dist.coeffs[0] = 1.0;
  double variance = 0.0;
  std::size_t degree = 0;
  for (std::size_t k = 0; k < cells; ++k) {
    const ProbTriple& p = meas.triples()[k];
    double q0 = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    switch (target.literals()[k]) {
      case Literal::kPresent:
        q0 = p.pos;
        q1 = p.eps;
        q2 = p.neg;
        break;
      case Literal::kNegated:
        q0 = p.neg;
        q1 = p.eps;
        q2 = p.pos;
        break;
      case Literal::kAbsent:
        q0 = p.eps;
        q1 = p.pos + p.neg;
        break;
    }
    // In-place multiplication by q0 + q1 t + q2 t^2, highest degree first.
    degree += 2;
    for (std::size_t d = degree + 1; d-- > 0;) {
      double c = q0 * dist.coeffs[d];
      if (d >= 1) c += q1 * dist.coeffs[d - 1];
      if (d >= 2) c += q2 * dist.coeffs[d - 2];
      dist.coeffs[d] = c;
    }
    const double mean = q1 + 2.0 * q2;
    dist.mean += mean;
    variance += (q1 + 4.0 * q2) - mean * mean;
  }
  dist.stddev = std::sqrt(std::max(variance, 0.0));
  return dist;
}

double ball_probability(const DistanceDistribution& dist, int rho) {
  if (rho < 0 || static_cast<std::size_t>(rho) > dist.max_distance()) {
    throw Error("radius " + std::to_string(rho) + " outside [0, " + std::to_string(dist.max_distance()) + "]");
  }
  double total = 0.0;
  for (int k = 0; k <= rho; ++k) total += dist.coeffs[static_cast<std::size_t>(k)];
  return std::min(total, 1.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_approx(const DistanceDistribution& dist, double rho) {
  if (!(dist.stddev > 0.0)) throw Error("normal approximation undefined for a degenerate distance distribution");
  return normal_cdf((rho + 0.5 - dist.mean) / dist.stddev);
}

void write_distance_csv(std::ostream& out, const DistanceDistribution& dist) {
  out << "k,c_k,cumulative\n";
  double cumulative = 0.0;
  for (std::size_t k = 0; k < dist.coeffs.size(); ++k) {
    cumulative += dist.coeffs[k];
    out << k << ',' << format_real(dist.coeffs[k]) << ',' << format_real(std::min(cumulative, 1.0)) << '\n';
  }
}

}  // namespace pdnf
