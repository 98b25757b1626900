// One PASS/FAIL line per acceptance criterion. Tolerances, seeds and runtime
// limits are fixed here; exit status is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "support/oracles.hpp"

using namespace pdnf;
namespace t = pdnf::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_ms;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

VenjunctionMeasure two_step_example() {
  return VenjunctionMeasure(2, 1, std::vector<ProbTriple>(2, {0.1, 0.3, 0.6}));
}

Outcome exact_distribution() {
  const auto dist = distance_distribution(two_step_example(), parse_venjunction("+ ∠ +"));
  const double expected[] = {0.36, 0.36, 0.21, 0.06, 0.01};
  double worst = 0.0;
  bool shape = dist.coeffs.size() == 5;
  for (std::size_t k = 0; shape && k < 5; ++k) worst = std::max(worst, std::abs(dist.coeffs[k] - expected[k]));
  const double ball = ball_probability(dist, 2);
  const bool pass = shape && worst <= 1e-12 && std::abs(ball - 0.93) <= 1e-12;
  return {pass, fmt("max|c_k - ref| = %.3g, P{S<=2} = %.15g (tol 1e-12)", worst, ball)};
}

Outcome normal_approximation() {
  const auto dist = distance_distribution(two_step_example(), parse_venjunction("+ ∠ +"));
  const double p = normal_approx(dist, 2);
  return {std::abs(p - 0.9429) <= 0.002, fmt("Phi approx = %.6f, target 0.9429 +- 0.002", p)};
}

Outcome normalization() {
  Rng rng(3001);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + t::index_below(rng, 8);
    const std::size_t m = 1 + t::index_below(rng, 8 / n);
    const WeightMatrix w = t::random_matrix(rng, n, m, 4.0);
    const ProbabilityFamily fam = k % 2 == 0 ? ProbabilityFamily(t::random_softmax(rng, m))
                                             : ProbabilityFamily(t::random_threshold(rng, m));
    double total = 0.0;
    for (const auto& [v, p] : enumerate_support(VenjunctionMeasure(Pdnf(w, fam)))) total += p;
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return {worst <= 1e-9, fmt("100 PDNFs (50 softmax, 50 threshold), max |sum - 1| = %.3g (tol 1e-9)", worst)};
}

Outcome fusion_equivalence() {
  Rng rng(4001);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const SoftmaxFamily fam = t::random_softmax(rng, 1, 3.0);
    const double xi = t::uniform_in(rng, -50, 50), eta = t::uniform_in(rng, -50, 50);
    worst = std::max(worst, check_composition(fam, 0, xi, eta));
  }
  std::vector<double> grid(41);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = -2.0 + 0.1 * static_cast<double>(k);
  const auto witness = check_characterization([](double x) { return t::perturbed_softmax(x); }, grid);
  const bool found = witness && witness->deviation > 1e-6;
  return {worst <= 1e-12 && found,
          fmt("softmax max deviation %.3g (tol 1e-12); perturbed family witness %s", worst,
              found ? fmt("(%.2f, %.2f) deviation %.3g", witness->xi, witness->eta, witness->deviation).c_str()
                    : "not found")};
}

Outcome identification() {
  Rng rng(5001);
  const auto r = identification_experiment(two_step_example(), rng, 200, 0.1);
  const double floor = 0.9 - 3 * std::sqrt(0.09 / 200);
  return {r.success_rate >= floor,
          fmt("p_min = %.4g, N = %llu, coverage %.3f over 200 trials (floor %.4f)", r.bound.p_min,
              static_cast<unsigned long long>(r.bound.draws), r.success_rate, floor)};
}

Outcome walk_moments() {
  const std::size_t horizon = 10, m = 2;
  constexpr std::size_t kCount = 100000;
  const auto proc = WalkProcess::uniform(m, StepDistribution::lattice(0.5, 1.0 / 3.0), 0.0, horizon);
  Rng rng(6001);
  const auto walks = simulate_walks(proc, rng, kCount);
  const double sigma = std::sqrt(29.0 / 36);
  double worst_mean_z = 0.0, worst_var_rel = 0.0;
  for (std::size_t s = 0; s < horizon; ++s) {
    for (std::size_t j = 0; j < m; ++j) {
      double sum = 0.0, sq = 0.0;
      for (const auto& w : walks) {
        sum += w(s, j);
        sq += w(s, j) * w(s, j);
      }
      const double tt = static_cast<double>(s + 1);
      const double mean = sum / kCount;
      const double var = (sq - kCount * mean * mean) / (kCount - 1);
      worst_mean_z = std::max(worst_mean_z, std::abs(mean - tt / 6) / (sigma * std::sqrt(tt) / std::sqrt(double(kCount))));
      worst_var_rel = std::max(worst_var_rel, std::abs(var / (29.0 / 36 * tt) - 1));
    }
  }
  return {worst_mean_z <= 3 && worst_var_rel <= 0.05,
          fmt("max mean deviation %.2f sigma (tol 3), max variance error %.2f%% (tol 5%%)", worst_mean_z,
              100 * worst_var_rel)};
}

Outcome sensor_demo() {
  Rng rng(7001);
  const auto rows = run_demo(SensorConfig{}, 10000, rng);
  std::map<std::string, std::pair<int, double>> by_sensor;  // failures, worst z
  std::string worst_row;
  double worst = 0.0;
  for (const auto& row : rows) {
    const double diff = std::abs(row.analytic_avg - row.empirical_freq);
    const double z = row.std_err > 0 ? diff / row.std_err : (diff > 0 ? INFINITY : 0.0);
    auto& [fails, top] = by_sensor[row.sensor];
    fails += z > 3;
    top = std::max(top, z);
    if (z > worst) {
      worst = z;
      worst_row = fmt("%s t=%zu component %+d: F avg %.4f vs chi freq %.4f", row.sensor.c_str(), row.t, row.component,
                      row.analytic_avg, row.empirical_freq);
    }
  }
  const auto& temp = by_sensor["temperature"];
  const auto& press = by_sensor["pressure"];
  return {temp.first == 0 && press.first == 0,
          fmt("rows beyond 3 SE: temperature %d/30 (max %.1f SE), pressure %d/30 (max %.1f SE); worst %s",
              temp.first, temp.second, press.first, press.second, worst_row.c_str())};
}

Outcome oracle_equivalence() {
  Rng rng(8001);
  constexpr std::size_t kDraws = 100000;
  double worst_dist = 0.0;
  std::size_t outcomes = 0, beyond = 0;
  double worst_z = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t cells = 1 + t::index_below(rng, 6);
    const std::size_t n = cells % 2 == 0 && t::index_below(rng, 2) ? 2 : 1;
    const std::size_t m = cells / n;
    const Pdnf z(t::random_matrix(rng, n, m, 2.0),
                 inst % 2 == 0 ? ProbabilityFamily(SoftmaxFamily::symmetric(m)) : ProbabilityFamily(t::random_threshold(rng, m)));
    const VenjunctionMeasure meas(z);
    const Venjunction target = t::random_venjunction(rng, n, m);
    const auto dist = distance_distribution(meas, target);
    const auto hist = t::brute_force_distance_histogram(meas.triples(), t::digits_of(target));
    for (std::size_t k = 0; k < hist.size(); ++k) worst_dist = std::max(worst_dist, std::abs(dist.coeffs.at(k) - hist[k]));

    const auto masses = t::brute_force_masses(meas.triples());
    std::vector<double> counts(masses.size(), 0.0);
    Rng draws = Rng::stream(8002, static_cast<std::uint64_t>(inst));
    for (const auto& v : sample(meas, draws, kDraws)) counts[v.code()] += 1;
    for (std::size_t c = 0; c < masses.size(); ++c) {
      const double p = masses[c];
      const double freq = counts[c] / kDraws;
      const double se = std::sqrt(p * (1 - p) / kDraws);
      const double z = se > 0 ? std::abs(freq - p) / se : (freq == p ? 0.0 : INFINITY);
      ++outcomes;
      beyond += z > 3;
      worst_z = std::max(worst_z, z);
    }
  }
  return {worst_dist <= 1e-12 && beyond == 0,
          fmt("distance max diff %.3g (tol 1e-12); sampler: %zu of %zu outcomes beyond 3 SE (max %.2f SE, "
              "%.1f expected by chance)",
              worst_dist, beyond, outcomes, worst_z, 0.0027 * static_cast<double>(outcomes))};
}

Outcome algebra_properties() {
  Rng rng(9001);
  std::size_t violations = 0;
  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = 1 + t::index_below(rng, 4), m = 1 + t::index_below(rng, 4);
    const WeightMatrix a = t::random_matrix(rng, n, m), b = t::random_matrix(rng, n, m);
    const double alpha = t::uniform_in(rng, -3, 3);
    violations += norm_l1(a) < 0;
    violations += std::abs(norm_l1(scale(alpha, a)) - std::abs(alpha) * norm_l1(a)) > 1e-12 * (1 + norm_l1(a));
    violations += norm_l1(add(a, b)) > norm_l1(a) + norm_l1(b) + 1e-12;
    violations += norm_l1(WeightMatrix(n, m)) != 0.0;
    violations += std::abs(distance_l1(a, b) - distance_l1(b, a)) > 0;

    const ProbTriple p = t::random_triple(rng), q = t::random_triple(rng), r = t::random_triple(rng);
    auto diff = [](const ProbTriple& x, const ProbTriple& y) {
      return std::max({std::abs(x.neg - y.neg), std::abs(x.eps - y.eps), std::abs(x.pos - y.pos)});
    };
    violations += diff(fuse(p, ProbTriple::uniform()), p) > 1e-12;
    violations += diff(fuse(p, q), fuse(q, p)) > 1e-12;
    violations += diff(fuse(fuse(p, q), r), fuse(p, fuse(q, r))) > 1e-12;

    const Pdnf zp(a, ProbabilityFamily(t::random_softmax(rng, m)));
    const double h = total_entropy(zp);
    violations += h < 0 || h > static_cast<double>(n * m) * std::log(3.0) + 1e-12;
  }
  const WeightMatrix big = scale(100.0, WeightMatrix::from_rows({{1, -1, 1}, {-1, 1, 1}}));
  const double h_det = total_entropy(Pdnf(big, ThresholdFamily({-1, -1, -1}, {1, 1, 1})));
  const double h_uni = total_entropy(Pdnf(WeightMatrix(2, 3), SoftmaxFamily::symmetric(3)));
  violations += h_det != 0.0;
  violations += std::abs(h_uni - 6 * std::log(3.0)) > 1e-12;
  return {violations == 0, fmt("%zu violations over 2000 random cases; H(deterministic) = %g, H(uniform) = %.12f = 6 ln 3",
                               violations, h_det, h_uni)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "exact distance distribution and ball probability", 1.0, exact_distribution},
      {2, "normal approximation of the ball probability", 1.0, normal_approximation},
      {3, "enumerated measure normalization", 5000.0, normalization},
      {4, "weight addition equals fusion; non-exponential witness", 1000.0, fusion_equivalence},
      {5, "coupon-bound support coverage", 30000.0, identification},
      {6, "random-walk moments", 30000.0, walk_moments},
      {7, "sensor demo agreement of F averages and event frequencies", 60000.0, sensor_demo},
      {8, "brute-force oracle equivalence", 60000.0, oracle_equivalence},
      {9, "algebra, fusion and entropy properties", 10000.0, algebra_properties},
  };
  std::set<int> only;
  for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = ms <= c.limit_ms;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("%s criterion %d: %s | %s | %.3f ms (limit %.0f ms)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), ms, c.limit_ms, in_time ? "" : " TIME EXCEEDED");
    std::fflush(stdout);
  }
  return failed;
}
