#include "pdnf/core_model.hpp"

#include <algorithm>
#include <cmath>

#include "pdnf/error.hpp"

namespace pdnf {

Literal literal_from_int(int value) {
  if (value < -1 || value > 1) {
    throw Error("literal must be -1, 0 or +1, got " + std::to_string(value));
  }
  return static_cast<Literal>(value);
}

WeightMatrix::WeightMatrix(std::size_t n, std::size_t m) : WeightMatrix(n, m, std::vector<double>(n * m, 0.0)) {}

WeightMatrix::WeightMatrix(std::size_t n, std::size_t m, std::vector<double> values)
    : n_(n), m_(m), values_(std::move(values)) {
  if (n_ == 0 || m_ == 0) throw Error("weight matrix needs n >= 1 and m >= 1");
  if (values_.size() != n_ * m_) {
    throw Error("weight matrix " + shape_string() + " built from " + std::to_string(values_.size()) +
                " values");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw Error("weight (" + std::to_string(k / m_) + ", " + std::to_string(k % m_) + ") is not finite");
    }
  }
}

WeightMatrix WeightMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw Error("weight matrix needs n >= 1 and m >= 1");
  const std::size_t m = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) {
      throw Error("weight row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                  " entries, expected " + std::to_string(m));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return WeightMatrix(rows.size(), m, std::move(values));
}

std::vector<std::vector<double>> WeightMatrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    out[i].assign(values_.begin() + static_cast<std::ptrdiff_t>(i * m_),
                  values_.begin() + static_cast<std::ptrdiff_t>((i + 1) * m_));
  }
  return out;
}

WeightMatrix WeightMatrix::padded_to(std::size_t n) const {
  if (n <= n_) return *this;
  std::vector<double> values = values_;
  values.resize(n * m_, 0.0);
  return WeightMatrix(n, m_, std::move(values));
}

bool WeightMatrix::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

std::string WeightMatrix::shape_string() const { return std::to_string(n_) + "x" + std::to_string(m_); }

namespace {

template <typename Op>
WeightMatrix combine(const WeightMatrix& a, const WeightMatrix& b, ShapePolicy policy, Op op) {
  if (a.m() != b.m() || (policy == ShapePolicy::kStrict && a.n() != b.n())) {
    throw Error("shape mismatch: " + a.shape_string() + " vs " + b.shape_string());
  }
  const std::size_t n = std::max(a.n(), b.n());
  const WeightMatrix pa = a.padded_to(n);
  const WeightMatrix pb = b.padded_to(n);
  std::vector<double> values(n * a.m());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = op(pa.values()[k], pb.values()[k]);
  return WeightMatrix(n, a.m(), std::move(values));
}

}  // namespace

WeightMatrix add(const WeightMatrix& a, const WeightMatrix& b, ShapePolicy policy) {
  return combine(a, b, policy, [](double x, double y) { return x + y; });
}

WeightMatrix subtract(const WeightMatrix& a, const WeightMatrix& b, ShapePolicy policy) {
  return combine(a, b, policy, [](double x, double y) { return x - y; });
}

WeightMatrix scale(double alpha, const WeightMatrix& z) {
  if (!std::isfinite(alpha)) throw Error("scale factor must be finite");
  std::vector<double> values(z.values().begin(), z.values().end());
  for (double& v : values) v *= alpha;
  return WeightMatrix(z.n(), z.m(), std::move(values));
}

double norm_l1(const WeightMatrix& z) {
  double total = 0.0;
  for (double v : z.values()) total += std::abs(v);
  return total;
}

double distance_l1(const WeightMatrix& a, const WeightMatrix& b, ShapePolicy policy) {
  return norm_l1(subtract(a, b, policy));
}

}  // namespace pdnf
