#include "pdnf/sensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "parallel.hpp"
#include "pdnf/error.hpp"
#include "pdnf/format.hpp"

namespace pdnf {

void SensorConfig::validate() const {
  if (!(theta_x < theta_0)) throw Error("sensor config needs theta_x < theta_0");
  if (!(p_y < p_0)) throw Error("sensor config needs p_y < p_0");
  if (!(sigma_theta > 0.0 && sigma_theta < 1.0) || !(sigma_p > 0.0 && sigma_p < 1.0)) {
    throw Error("margin fractions must lie in (0, 1)");
  }
  if (times.empty()) throw Error("sensor config needs at least one observation time");
  if (std::find(times.begin(), times.end(), std::size_t{0}) != times.end()) {
    throw Error("observation times start at 1");
  }
  StepDistribution::lattice(p_up, p_down);
}

namespace {

// One experiment's contribution: [sensor][time][component] -> (F value, event indicator).
struct Sample {
  std::vector<std::array<double, 3>> f;
  std::vector<std::array<double, 3>> chi;
};

std::array<double, 3> events(double value, double low, double high, ErrorCoin coin, double ramp, Rng& rng) {
  // The error variable is drawn at every time step so that stream usage
  // does not depend on where the walk is.
  const double u = rng.uniform();
  const bool error = coin == ErrorCoin::kFair ? u < 0.5 : u < ramp;
  if (value < low) return {1.0, 0.0, 0.0};
  if (value >= high) return {0.0, 0.0, 1.0};
  return error ? std::array<double, 3>{0.0, 1.0, 0.0} : std::array<double, 3>{1.0, 0.0, 0.0};
}

}  // namespace

std::vector<DemoRow> run_demo(const SensorConfig& cfg, std::size_t experiments, Rng& rng) {
  cfg.validate();
  if (experiments == 0) throw Error("sensor demo needs at least one experiment");
  const std::size_t horizon = *std::max_element(cfg.times.begin(), cfg.times.end());
  const StepDistribution step = StepDistribution::lattice(cfg.p_up, cfg.p_down);
  const WalkProcess walk = WalkProcess::uniform(1, step, 0.0, horizon);
  const ThresholdFamily temp = cfg.temperature_family();
  const ThresholdFamily pres = cfg.pressure_family();
  const std::size_t slots = cfg.times.size();

  const std::uint64_t base = rng.next_u64();
  std::vector<Sample> samples(experiments);
  detail::parallel_for(experiments, [&](std::size_t e) {
    Rng stream = Rng::stream(base, e);
    const WeightMatrix theta_walk = simulate_walk(walk, stream);
    const WeightMatrix p_walk = simulate_walk(walk, stream);
    Sample s{std::vector<std::array<double, 3>>(2 * slots), std::vector<std::array<double, 3>>(2 * slots)};
    for (std::size_t k = 0; k < slots; ++k) {
      const std::size_t row = cfg.times[k] - 1;
      const double theta = cfg.theta_base + cfg.theta_scale * theta_walk(row, 0);
      const double p = cfg.p_base + cfg.p_scale * p_walk(row, 0);
      const ProbTriple ft = temp.eval(0, theta);
      const ProbTriple fp = pres.eval(0, p);
      s.f[k] = ft.as_array();
      s.f[slots + k] = fp.as_array();
      s.chi[k] = events(theta, cfg.theta_x, cfg.theta_0, cfg.coin, ft.eps, stream);
      s.chi[slots + k] = events(p, cfg.p_y, cfg.p_0, cfg.coin, fp.eps, stream);
    }
    samples[e] = std::move(s);
  });

  const double count = static_cast<double>(experiments);
  std::vector<DemoRow> rows;
  for (std::size_t sensor = 0; sensor < 2; ++sensor) {
    for (std::size_t k = 0; k < slots; ++k) {
      for (std::size_t c = 0; c < 3; ++c) {
        double f_sum = 0.0;
        double f_sq = 0.0;
        double chi_sum = 0.0;
        for (const Sample& s : samples) {
          const double f = s.f[sensor * slots + k][c];
          f_sum += f;
          f_sq += f * f;
          chi_sum += s.chi[sensor * slots + k][c];
        }
        const double f_mean = f_sum / count;
        const double chi_mean = chi_sum / count;
        const double f_var = std::max(0.0, f_sq / count - f_mean * f_mean);
        const double chi_var = chi_mean * (1.0 - chi_mean);
        rows.push_back({sensor == 0 ? "temperature" : "pressure", cfg.times[k], static_cast<int>(c) - 1, f_mean,
                        chi_mean, std::sqrt((f_var + chi_var) / count)});
      }
    }
  }
  return rows;
}

void write_demo_csv(std::ostream& out, const std::vector<DemoRow>& rows) {
  out << "sensor,t,component,analytic_avg,empirical_freq,std_err\n";
  for (const DemoRow& r : rows) {
    out << r.sensor << ',' << r.t << ',' << r.component << ',' << format_real(r.analytic_avg) << ','
        << format_real(r.empirical_freq) << ',' << format_real(r.std_err) << '\n';
  }
}

Decision decision_rule(const SensorConfig& cfg, std::span<const SensorReading> readings) {
  cfg.validate();
  if (readings.empty()) throw Error("decision rule needs at least one reading");
  const ThresholdFamily temp = cfg.temperature_family();
  const ThresholdFamily pres = cfg.pressure_family();
  for (std::size_t k = 0; k < readings.size(); ++k) {
    const SensorReading& r = readings[k];
    if (temp.eval(0, r.theta - cfg.margin_theta()).pos != 1.0) return {false, k, "temperature below margin"};
    if (pres.eval(0, r.pressure - cfg.margin_p()).pos != 1.0) return {false, k, "pressure below margin"};
    if (!r.theta_triggered) return {false, k, "temperature sensor not triggered"};
    if (!r.pressure_triggered) return {false, k, "pressure sensor not triggered"};
  }
  return {true, std::nullopt, ""};
}

}  // namespace pdnf
