#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "pdnf/core_model.hpp"
#include "pdnf/encoder.hpp"
#include "pdnf/families.hpp"
#include "pdnf/rng.hpp"
#include "pdnf/venjunction.hpp"

namespace pdnf {

/// Finite-support increment distribution of a random walk.
class StepDistribution {
 public:
  struct Atom {
    double value;
    double prob;
  };

  explicit StepDistribution(std::vector<Atom> atoms);

  /// scale * (+1 w.p. p_up, -1 w.p. p_down, 0 otherwise).
  static StepDistribution lattice(double p_up, double p_down, double scale = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double mean() const;
  double variance() const;

  /// Inverse-CDF draw consuming one uniform.
  double draw(Rng& rng) const;

 private:
  std::vector<Atom> atoms_;
};

/// Independent random walks, one per variable, observed at t = 1..horizon:
/// xi_t = xi_{t-1} + eta_t. Initial values have the given mean and, when
/// the variance is positive, are drawn from a normal law.
struct WalkProcess {
  std::vector<StepDistribution> steps;
  std::vector<double> initial;
  std::vector<double> initial_variance;
  std::size_t horizon = 1;

  /// Same step law and deterministic start for all m variables.
  static WalkProcess uniform(std::size_t m, const StepDistribution& step, double initial, std::size_t horizon);

  std::size_t m() const { return steps.size(); }
  void validate() const;
};

/// Heights xi0_j + t mu_j.
Encoder mean_encoder(const WalkProcess& proc);
/// Heights Var(xi0_j) + t sigma_j^2.
Encoder variance_encoder(const WalkProcess& proc);

/// One trajectory drawn directly from rng (variable by variable: the initial
/// value, then steps t = 1..horizon).
WeightMatrix simulate_walk(const WalkProcess& proc, Rng& rng);

/// `count` trajectories; walk k uses its own stream derived from one draw
/// of rng, so the result is independent of thread count.
std::vector<WeightMatrix> simulate_walks(const WalkProcess& proc, Rng& rng, std::size_t count);

struct MeanEncoderEstimate {
  Encoder mean;
  double l1_error;  // distance to the analytic mean encoder
};

MeanEncoderEstimate monte_carlo_mean_encoder(const WalkProcess& proc, Rng& rng, std::size_t count);

struct HmmDraw {
  WeightMatrix trajectory;
  Venjunction emission;
};

/// Hidden walk, then one venjunction from the measure it induces.
HmmDraw hmm_sample(const WalkProcess& proc, const ProbabilityFamily& family, Rng& rng);
std::vector<HmmDraw> hmm_samples(const WalkProcess& proc, const ProbabilityFamily& family, Rng& rng,
                                 std::size_t count);

/// Rows "walk_id,t,j,xi" (t and j one-based).
void write_trajectories_csv(std::ostream& out, const std::vector<WeightMatrix>& walks);
/// Rows "t,j,mean,variance" from the analytic encoders.
void write_moments_csv(std::ostream& out, const WalkProcess& proc);

}  // namespace pdnf
