#include "pdnf/families.hpp"

#include <algorithm>
#include <cmath>

#include "pdnf/error.hpp"

namespace pdnf {

double ProbTriple::at(Literal l) const {
  switch (l) {
    case Literal::kNegated:
      return neg;
    case Literal::kAbsent:
      return eps;
    case Literal::kPresent:
      return pos;
  }
  return 0.0;
}

bool ProbTriple::is_valid(double tol) const {
  const auto in_unit = [tol](double v) { return std::isfinite(v) && v >= -tol && v <= 1.0 + tol; };
  return in_unit(neg) && in_unit(eps) && in_unit(pos) && std::abs(sum() - 1.0) <= tol;
}

ProbTriple ProbTriple::certain(Literal l) {
  ProbTriple p{0.0, 0.0, 0.0};
  switch (l) {
    case Literal::kNegated:
      p.neg = 1.0;
      break;
    case Literal::kAbsent:
      p.eps = 1.0;
      break;
    case Literal::kPresent:
      p.pos = 1.0;
      break;
  }
  return p;
}

void require_valid(const ProbTriple& p, double tol) {
  if (!p.is_valid(tol)) {
    throw Error("not a probability triple: (" + std::to_string(p.neg) + ", " + std::to_string(p.eps) + ", " +
                std::to_string(p.pos) + ")");
  }
}

SoftmaxFamily::SoftmaxFamily(std::vector<Coefficients> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw Error("softmax family needs at least one variable");
  for (const auto& a : alpha_) {
    for (double v : a) {
      if (!std::isfinite(v)) throw Error("softmax coefficients must be finite");
    }
  }
}

SoftmaxFamily SoftmaxFamily::symmetric(std::size_t m) {
  return SoftmaxFamily(std::vector<Coefficients>(m, Coefficients{-1.0, 0.0, 1.0}));
}

ProbTriple SoftmaxFamily::eval(std::size_t j, double xi) const {
  const Coefficients& a = alpha_.at(j);
  const double z0 = a[0] * xi;
  const double z1 = a[1] * xi;
  const double z2 = a[2] * xi;
  const double top = std::max({z0, z1, z2});
  const double e0 = std::exp(z0 - top);
  const double e1 = std::exp(z1 - top);
  const double e2 = std::exp(z2 - top);
  const double total = e0 + e1 + e2;
  return {e0 / total, e1 / total, e2 / total};
}

bool SoftmaxFamily::is_constant(std::size_t j) const {
  const Coefficients& a = alpha_.at(j);
  return a[0] == a[1] && a[1] == a[2];
}

ThresholdFamily::ThresholdFamily(std::vector<double> low, std::vector<double> high)
    : low_(std::move(low)), high_(std::move(high)) {
  if (low_.empty()) throw Error("threshold family needs at least one variable");
  if (low_.size() != high_.size()) throw Error("threshold family: low and high differ in length");
  for (std::size_t j = 0; j < low_.size(); ++j) {
    if (!std::isfinite(low_[j]) || !std::isfinite(high_[j]) || !(low_[j] < high_[j])) {
      throw Error("threshold family: variable " + std::to_string(j) + " needs finite low < high");
    }
  }
}

ProbTriple ThresholdFamily::eval(std::size_t j, double xi) const {
  const double lo = low_.at(j);
  const double hi = high_.at(j);
  if (xi < lo) return {1.0, 0.0, 0.0};
  if (xi >= hi) return {0.0, 0.0, 1.0};
  const double ramp = (xi - lo) / (hi - lo);
  return {1.0 - ramp, ramp, 0.0};
}

std::size_t ProbabilityFamily::m() const {
  return std::visit([](const auto& f) { return f.m(); }, impl_);
}

ProbTriple ProbabilityFamily::eval(std::size_t j, double xi) const {
  if (j >= m()) {
    throw Error("variable index " + std::to_string(j) + " out of range for a family of " + std::to_string(m()) +
                " variables");
  }
  if (!std::isfinite(xi)) throw Error("weight must be finite");
  return std::visit([&](const auto& f) { return f.eval(j, xi); }, impl_);
}

bool DefinitionReport::strict() const {
  return std::all_of(variables.begin(), variables.end(), [](const Variable& v) { return v.strict(); });
}

DefinitionReport validate_definition(const ProbabilityFamily& family, double lo, double hi, std::size_t points) {
  if (points < 100) throw Error("validation grid needs at least 100 points");
  if (!(lo < hi)) throw Error("validation grid needs lo < hi");
  DefinitionReport report;
  report.lo = lo;
  report.hi = hi;
  report.points = points;
  for (std::size_t j = 0; j < family.m(); ++j) {
    DefinitionReport::Variable clause;
    ProbTriple prev = family.eval(j, lo);
    for (std::size_t k = 0; k < points; ++k) {
      const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
      const ProbTriple p = family.eval(j, x);
      if (std::abs(p.sum() - 1.0) > 1e-12) clause.sums_to_one = false;
      if (p.pos < prev.pos) clause.pos_nondecreasing = false;
      if (p.neg > prev.neg) clause.neg_nonincreasing = false;
      prev = p;
    }
    const ProbTriple origin = family.eval(j, 0.0);
    clause.pos_zero_at_origin = origin.pos == 0.0;
    clause.neg_zero_at_origin = origin.neg == 0.0;
    report.variables.push_back(clause);
  }
  return report;
}

double entropy(const ProbTriple& p) {
  double h = 0.0;
  for (double v : p.as_array()) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

ProbTriple partition_probs(std::size_t count_pos, std::size_t count_neg, std::size_t count_eps) {
  const std::size_t total = count_pos + count_neg + count_eps;
  if (total == 0) throw Error("partition_probs: the input alphabet is empty");
  const double t = static_cast<double>(total);
  return {static_cast<double>(count_neg) / t, static_cast<double>(count_eps) / t,
          static_cast<double>(count_pos) / t};
}

}  // namespace pdnf
