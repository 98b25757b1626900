#include "pdnf/stochastic.hpp"

#include <cmath>
#include <ostream>

#include "parallel.hpp"
#include "pdnf/error.hpp"
#include "pdnf/format.hpp"

namespace pdnf {

StepDistribution::StepDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error("step distribution needs at least one atom");
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (!std::isfinite(a.value) || !(a.prob >= 0.0)) throw Error("step atoms need finite values and p >= 0");
    total += a.prob;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("step probabilities must sum to 1");
}

StepDistribution StepDistribution::lattice(double p_up, double p_down, double scale) {
  if (!(p_up >= 0.0 && p_down >= 0.0 && p_up + p_down <= 1.0 + 1e-12)) {
    throw Error("lattice walk needs p_up, p_down >= 0 with p_up + p_down <= 1");
  }
  const double p_stay = std::max(0.0, 1.0 - p_up - p_down);
  return StepDistribution({{scale, p_up}, {-scale, p_down}, {0.0, p_stay}});
}

double StepDistribution::mean() const {
  double mu = 0.0;
  for (const Atom& a : atoms_) mu += a.prob * a.value;
  return mu;
}

double StepDistribution::variance() const {
  const double mu = mean();
  double v = 0.0;
  for (const Atom& a : atoms_) v += a.prob * (a.value - mu) * (a.value - mu);
  return v;
}

double StepDistribution::draw(Rng& rng) const {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (const Atom& a : atoms_) {
    cumulative += a.prob;
    if (u < cumulative) return a.value;
  }
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) {
    if (it->prob > 0.0) return it->value;
  }
  return atoms_.back().value;
}

WalkProcess WalkProcess::uniform(std::size_t m, const StepDistribution& step, double initial, std::size_t horizon) {
  WalkProcess proc{std::vector<StepDistribution>(m, step), std::vector<double>(m, initial),
                   std::vector<double>(m, 0.0), horizon};
  proc.validate();
  return proc;
}

void WalkProcess::validate() const {
  if (steps.empty()) throw Error("walk process needs at least one variable");
  if (horizon == 0) throw Error("walk horizon must be at least 1");
  if (initial.size() != steps.size() || initial_variance.size() != steps.size()) {
    throw Error("walk process: initial values and variances must match the variable count");
  }
  for (std::size_t j = 0; j < steps.size(); ++j) {
    if (!std::isfinite(initial[j]) || !(initial_variance[j] >= 0.0)) {
      throw Error("walk process: initial mean must be finite and variance nonnegative");
    }
  }
}

Encoder mean_encoder(const WalkProcess& proc) {
  proc.validate();
  std::vector<double> heights(proc.horizon * proc.m());
  for (std::size_t t = 0; t < proc.horizon; ++t) {
    for (std::size_t j = 0; j < proc.m(); ++j) {
      heights[t * proc.m() + j] = proc.initial[j] + static_cast<double>(t + 1) * proc.steps[j].mean();
    }
  }
  return Encoder(proc.horizon, proc.m(), std::move(heights));
}

Encoder variance_encoder(const WalkProcess& proc) {
  proc.validate();
  std::vector<double> heights(proc.horizon * proc.m());
  for (std::size_t t = 0; t < proc.horizon; ++t) {
    for (std::size_t j = 0; j < proc.m(); ++j) {
      heights[t * proc.m() + j] = proc.initial_variance[j] + static_cast<double>(t + 1) * proc.steps[j].variance();
    }
  }
  return Encoder(proc.horizon, proc.m(), std::move(heights));
}

WeightMatrix simulate_walk(const WalkProcess& proc, Rng& rng) {
  std::vector<double> values(proc.horizon * proc.m());
  for (std::size_t j = 0; j < proc.m(); ++j) {
    double xi = proc.initial[j];
    if (proc.initial_variance[j] > 0.0) xi += std::sqrt(proc.initial_variance[j]) * rng.normal();
    for (std::size_t t = 0; t < proc.horizon; ++t) {
      xi += proc.steps[j].draw(rng);
      values[t * proc.m() + j] = xi;
    }
  }
  return WeightMatrix(proc.horizon, proc.m(), std::move(values));
}

std::vector<WeightMatrix> simulate_walks(const WalkProcess& proc, Rng& rng, std::size_t count) {
  proc.validate();
  if (count == 0) throw Error("walk count must be at least 1");
  const std::uint64_t base = rng.next_u64();
  std::vector<WeightMatrix> walks(count, WeightMatrix(proc.horizon, proc.m()));
  detail::parallel_for(count, [&](std::size_t k) {
    Rng stream = Rng::stream(base, k);
    walks[k] = simulate_walk(proc, stream);
  });
  return walks;
}

MeanEncoderEstimate monte_carlo_mean_encoder(const WalkProcess& proc, Rng& rng, std::size_t count) {
  const auto walks = simulate_walks(proc, rng, count);
  std::vector<double> sum(proc.horizon * proc.m(), 0.0);
  for (const WeightMatrix& w : walks) {
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += w.values()[k];
  }
  for (double& s : sum) s /= static_cast<double>(count);
  Encoder mean(proc.horizon, proc.m(), std::move(sum));
  const double error = distance_l1(decode(mean), decode(mean_encoder(proc)));
  return {std::move(mean), error};
}

HmmDraw hmm_sample(const WalkProcess& proc, const ProbabilityFamily& family, Rng& rng) {
  proc.validate();
  WeightMatrix trajectory = simulate_walk(proc, rng);
  const VenjunctionMeasure meas(Pdnf(trajectory, family));
  Venjunction emission = sample_one(meas, rng);
  return {std::move(trajectory), std::move(emission)};
}

std::vector<HmmDraw> hmm_samples(const WalkProcess& proc, const ProbabilityFamily& family, Rng& rng,
                                 std::size_t count) {
  proc.validate();
  if (count == 0) throw Error("run count must be at least 1");
  if (family.m() != proc.m()) throw Error("family and walk process differ in variable count");
  const std::uint64_t base = rng.next_u64();
  std::vector<HmmDraw> draws(count, HmmDraw{WeightMatrix(proc.horizon, proc.m()), Venjunction(proc.horizon, proc.m())});
  detail::parallel_for(count, [&](std::size_t k) {
    Rng stream = Rng::stream(base, k);
    draws[k] = hmm_sample(proc, family, stream);
  });
  return draws;
}

void write_trajectories_csv(std::ostream& out, const std::vector<WeightMatrix>& walks) {
  out << "walk_id,t,j,xi\n";
  for (std::size_t k = 0; k < walks.size(); ++k) {
    for (std::size_t t = 0; t < walks[k].n(); ++t) {
      for (std::size_t j = 0; j < walks[k].m(); ++j) {
        out << k + 1 << ',' << t + 1 << ',' << j + 1 << ',' << format_real(walks[k](t, j)) << '\n';
      }
    }
  }
}

void write_moments_csv(std::ostream& out, const WalkProcess& proc) {
  const Encoder mean = mean_encoder(proc);
  const Encoder var = variance_encoder(proc);
  out << "t,j,mean,variance\n";
  for (std::size_t t = 0; t < proc.horizon; ++t) {
    for (std::size_t j = 0; j < proc.m(); ++j) {
      out << t + 1 << ',' << j + 1 << ',' << format_real(mean.height(t, j)) << ',' << format_real(var.height(t, j))
          << '\n';
    }
  }
}

}  // namespace pdnf
