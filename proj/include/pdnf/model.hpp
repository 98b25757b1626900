#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pdnf/core_model.hpp"
#include "pdnf/families.hpp"

namespace pdnf {

/// A probabilistic DNF: weight matrix plus the family turning weights into
/// literal probabilities.
class Pdnf {
 public:
  Pdnf(WeightMatrix weights, ProbabilityFamily family);

  const WeightMatrix& weights() const { return weights_; }
  const ProbabilityFamily& family() const { return family_; }
  std::size_t n() const { return weights_.n(); }
  std::size_t m() const { return weights_.m(); }

  /// Row-major grid of per-position triples.
  std::vector<ProbTriple> probabilities() const;

 private:
  WeightMatrix weights_;
  ProbabilityFamily family_;
};

/// Sum of per-position entropies (nats); lies in [0, nm ln 3].
double total_entropy(const Pdnf& z);
double total_entropy(const std::vector<ProbTriple>& grid);

/// Model file format:
///   {"version": 1, "n": int, "m": int, "weights": [[...], ...],
///    "family": {"kind": "softmax", "alpha": [[a, b, c], ...]}
///            | {"kind": "threshold", "low": [...], "high": [...]}}
/// Reals are written in shortest round-trip form.
std::string to_json(const Pdnf& z, int indent = 2);
Pdnf pdnf_from_json(const std::string& text);

Pdnf load_pdnf(const std::filesystem::path& path);
void save_pdnf(const Pdnf& z, const std::filesystem::path& path);

}  // namespace pdnf
