#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdnf/families.hpp"
#include "pdnf/rng.hpp"
#include "pdnf/stochastic.hpp"

namespace pdnf {

/// How the error variable is drawn inside a sensor's dubious band.
enum class ErrorCoin {
  kFair,  // error = 1 with probability 1/2
  kRamp,  // error = 1 with probability equal to the ramp value F_0
};

/// Temperature/pressure sensor pair with threshold families and lattice
/// random-walk drivers theta(t) = theta_base + theta_scale * RW(t),
/// p(t) = p_base + p_scale * RW'(t).
struct SensorConfig {
  double theta_x = 20.0;  // false-trigger threshold
  double theta_0 = 22.0;  // trigger threshold
  double p_y = 105.0;
  double p_0 = 106.0;
  double sigma_theta = 0.5;  // margin fractions in (0, 1)
  double sigma_p = 0.5;
  std::vector<std::size_t> times = {30, 31, 32, 33, 34, 35, 36, 37, 38, 39};

  double theta_base = 20.0;
  double theta_scale = 0.25;
  double p_base = 100.0;
  double p_scale = 0.5;
  double p_up = 1.0 / 2.0;
  double p_down = 1.0 / 3.0;
  ErrorCoin coin = ErrorCoin::kFair;

  double margin_theta() const { return sigma_theta * (theta_0 - theta_x); }
  double margin_p() const { return sigma_p * (p_0 - p_y); }
  ThresholdFamily temperature_family() const { return ThresholdFamily({theta_x}, {theta_0}); }
  ThresholdFamily pressure_family() const { return ThresholdFamily({p_y}, {p_0}); }

  void validate() const;
};

struct DemoRow {
  std::string sensor;  // "temperature" or "pressure"
  std::size_t t;
  int component;  // -1, 0, +1
  double analytic_avg;
  double empirical_freq;
  double std_err;  // standard error of analytic_avg - empirical_freq, as two estimates
};

/// Averages the threshold-family components over simulated experiments and
/// compares them with the frequencies of the matching sensor events. Within
/// an experiment the temperature walk, pressure walk and per-time error
/// coins come from one stream derived from rng and the experiment index.
std::vector<DemoRow> run_demo(const SensorConfig& cfg, std::size_t experiments, Rng& rng);

void write_demo_csv(std::ostream& out, const std::vector<DemoRow>& rows);

struct SensorReading {
  double theta;
  double pressure;
  bool theta_triggered;
  bool pressure_triggered;
};

struct Decision {
  bool act = false;
  std::optional<std::size_t> failing_index;  // first reading that blocks action
  std::string clause;
};

/// Acts only if at every reading F_1(theta - margin) = 1, F_1(p - margin) = 1
/// and both sensors triggered.
Decision decision_rule(const SensorConfig& cfg, std::span<const SensorReading> readings);

}  // namespace pdnf
