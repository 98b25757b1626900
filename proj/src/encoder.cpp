#include "pdnf/encoder.hpp"

#include <cmath>
#include <ostream>

#include "pdnf/error.hpp"
#include "pdnf/format.hpp"

namespace pdnf {

Encoder::Encoder(std::size_t n, std::size_t m, std::vector<double> heights)
    : n_(n), m_(m), heights_(std::move(heights)) {
  if (n_ == 0 || m_ == 0) throw Error("encoder needs n >= 1 and m >= 1");
  if (heights_.size() != n_ * m_) throw Error("encoder height count does not match n*m");
  for (double h : heights_) {
    if (!std::isfinite(h)) throw Error("encoder heights must be finite");
  }
}

std::pair<double, double> Encoder::segment(std::size_t t, std::size_t j) const {
  const double start = static_cast<double>(j + t * m_);
  return {start, start + 1.0};
}

double Encoder::operator()(double x) const {
  const double length = static_cast<double>(n_ * m_);
  if (!(x >= 0.0 && x <= length)) throw Error("encoder evaluated outside [0, nm]");
  const auto k = std::min(static_cast<std::size_t>(x), n_ * m_ - 1);
  return heights_[k];
}

Encoder encode(const WeightMatrix& z) {
  return Encoder(z.n(), z.m(), std::vector<double>(z.values().begin(), z.values().end()));
}

WeightMatrix decode(const Encoder& e) { return WeightMatrix(e.n(), e.m(), e.heights()); }

ProbTriple segment_probs(const Encoder& e, std::size_t t, std::size_t j) {
  if (t >= e.n() || j >= e.m()) throw Error("segment index out of range");
  // Unit-length segment: the integral is the height.
  const double integral = e.height(t, j);
  if (integral > 1.0) return {0.0, 0.0, 1.0};
  if (integral > 0.0) return {0.0, 1.0 - integral, integral};
  if (integral < -1.0) return {1.0, 0.0, 0.0};
  if (integral < 0.0) return {-integral, 1.0 + integral, 0.0};
  return {0.0, 1.0, 0.0};
}

double l1_norm(const Encoder& e) {
  double total = 0.0;
  for (double h : e.heights()) total += std::abs(h);
  return total;
}

std::pair<Encoder, Encoder> signed_parts(const Encoder& e) {
  std::vector<double> pos(e.heights());
  std::vector<double> neg(e.heights());
  for (std::size_t k = 0; k < pos.size(); ++k) {
    pos[k] = std::max(pos[k], 0.0);
    neg[k] = std::min(neg[k], 0.0);
  }
  return {Encoder(e.n(), e.m(), std::move(pos)), Encoder(e.n(), e.m(), std::move(neg))};
}

double asymmetry(const Encoder& e) {
  const auto [pos, neg] = signed_parts(e);
  return l1_norm(pos) - l1_norm(neg);
}

void write_csv(std::ostream& out, const Encoder& e) {
  out << "segment_start,segment_end,height\n";
  for (std::size_t t = 0; t < e.n(); ++t) {
    for (std::size_t j = 0; j < e.m(); ++j) {
      const auto [a, b] = e.segment(t, j);
      out << format_real(a) << ',' << format_real(b) << ',' << format_real(e.height(t, j)) << '\n';
    }
  }
}

}  // namespace pdnf
