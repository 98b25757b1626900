#include "pdnf/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "parallel.hpp"
#include "pdnf/error.hpp"
#include "pdnf/format.hpp"

namespace pdnf {

ProbTriple fuse(const ProbTriple& p, const ProbTriple& q) {
  require_valid(p);
  require_valid(q);
  const double a = p.neg * q.neg;
  const double b = p.eps * q.eps;
  const double c = p.pos * q.pos;
  const double overlap = a + b + c;
  if (!(overlap > 0.0)) throw ContradictoryEvidence("contradictory evidence: the triples share no support");
  return {a / overlap, b / overlap, c / overlap};
}

Pdnf fuse_pdnf(const Pdnf& a, const Pdnf& b) {
  if (!a.family().is_softmax() || !b.family().is_softmax()) {
    throw Error("weight addition equals fusion only for softmax families; fuse positions instead");
  }
  if (a.family().softmax()->alpha() != b.family().softmax()->alpha()) {
    throw Error("fused PDNFs must share the same family");
  }
  return Pdnf(add(a.weights(), b.weights()), a.family());
}

std::vector<ProbTriple> fuse_positions(const Pdnf& a, const Pdnf& b) {
  if (a.n() != b.n() || a.m() != b.m()) {
    throw Error("shape mismatch: " + a.weights().shape_string() + " vs " + b.weights().shape_string());
  }
  const auto pa = a.probabilities();
  const auto pb = b.probabilities();
  std::vector<ProbTriple> out;
  out.reserve(pa.size());
  for (std::size_t k = 0; k < pa.size(); ++k) out.push_back(fuse(pa[k], pb[k]));
  return out;
}

double composition_deviation(const WeightMap& map, double xi, double eta) {
  const auto joint = map(xi + eta).as_array();
  const auto fused = fuse(map(xi), map(eta)).as_array();
  double worst = 0.0;
  for (std::size_t l = 0; l < 3; ++l) worst = std::max(worst, std::abs(joint[l] - fused[l]));
  return worst;
}

double check_composition(const SoftmaxFamily& family, std::size_t j, double xi, double eta) {
  if (!std::isfinite(xi) || !std::isfinite(eta)) throw Error("weights must be finite");
  if (j >= family.m()) throw Error("variable index out of range");
  return composition_deviation([&](double x) { return family.eval(j, x); }, xi, eta);
}

std::optional<CompositionWitness> check_characterization(const WeightMap& map, std::span<const double> grid,
                                                         double tolerance) {
  std::optional<CompositionWitness> best;
  for (double xi : grid) {
    for (double eta : grid) {
      double d = 0.0;
      try {
        d = composition_deviation(map, xi, eta);
      } catch (const ContradictoryEvidence&) {
        continue;
      }
      if (d > tolerance && (!best || d > best->deviation)) best = CompositionWitness{xi, eta, d};
    }
  }
  return best;
}

std::size_t convergence_experiment(const SoftmaxFamily& family, std::size_t j, std::span<const double> stream,
                                   double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must lie in (0, 1)");
  if (stream.empty()) throw Error("weight stream is empty");
  if (j >= family.m()) throw Error("variable index out of range");
  const bool positive = stream.front() > 0.0;
  for (double w : stream) {
    if (!std::isfinite(w) || w == 0.0 || (w > 0.0) != positive) {
      throw Error("weight stream entries must be nonzero, finite and share one sign");
    }
  }
  const auto& a = family.alpha()[j];
  if (positive && !(a[2] > a[0] && a[2] > a[1])) {
    throw Error("convergence to presence needs a_pos to be the strict maximum");
  }
  if (!positive && !(a[0] < a[1] && a[0] < a[2])) {
    throw Error("convergence to negation needs a_neg to be the strict minimum");
  }
  double cumulative = 0.0;
  for (std::size_t k = 0; k < stream.size(); ++k) {
    cumulative += stream[k];
    const ProbTriple p = family.eval(j, cumulative);
    if ((positive ? p.pos : p.neg) > 1.0 - epsilon) return k + 1;
  }
  throw Error("weight stream ended before reaching 1 - epsilon");
}

IdentificationBound coupon_bound(double p_min, double delta, std::size_t n, std::size_t m) {
  if (!(p_min > 0.0 && p_min <= 1.0)) throw Error("p_min must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0, 1)");
  if (n == 0 || m == 0) throw Error("bound needs n >= 1 and m >= 1");
  const double log_ratio = static_cast<double>(n * m) * std::log(3.0) - std::log(delta);
  const double draws = std::ceil(log_ratio / p_min);
  if (!(draws < 9.0e18)) throw Error("identification bound overflows 64 bits");
  return {p_min, delta, n, m, std::max<std::uint64_t>(1, static_cast<std::uint64_t>(draws))};
}

IdentificationResult identification_experiment(const VenjunctionMeasure& meas, Rng& rng, std::size_t trials,
                                               double delta, std::optional<double> p_min, std::uint64_t cap) {
  if (trials == 0) throw Error("identification experiment needs at least one trial");
  const auto support = enumerate_support(meas, cap);
  double smallest = 1.0;
  std::unordered_set<std::uint64_t> codes;
  for (const auto& [v, p] : support) {
    smallest = std::min(smallest, p);
    codes.insert(v.code());
  }
  IdentificationResult result{coupon_bound(p_min.value_or(smallest), delta, meas.n(), meas.m()), support.size(),
                              std::vector<IdentificationTrial>(trials), 0.0};
  const std::uint64_t base = rng.next_u64();
  const std::uint64_t budget = result.bound.draws;
  detail::parallel_for(trials, [&](std::size_t t) {
    Rng stream = Rng::stream(base, t);
    std::unordered_set<std::uint64_t> seen;
    std::uint64_t used = 0;
    while (used < budget && seen.size() < codes.size()) {
      seen.insert(sample_one(meas, stream).code());
      ++used;
    }
    result.trials[t] = {t, used, seen.size() == codes.size()};
  });
  const auto covered = std::count_if(result.trials.begin(), result.trials.end(),
                                     [](const IdentificationTrial& t) { return t.covered; });
  result.success_rate = static_cast<double>(covered) / static_cast<double>(trials);
  return result;
}

void write_identification_csv(std::ostream& out, const IdentificationResult& result) {
  out << "trial,draws_used,covered\n";
  for (const auto& t : result.trials) {
    out << t.trial + 1 << ',' << t.draws_used << ',' << (t.covered ? "true" : "false") << '\n';
  }
  out << "# summary: trials=" << result.trials.size() << " support=" << result.support_size
      << " p_min=" << format_real(result.bound.p_min) << " delta=" << format_real(result.bound.delta)
      << " N=" << result.bound.draws << " success_rate=" << format_real(result.success_rate) << '\n';
}

}  // namespace pdnf
