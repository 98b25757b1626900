#include "pdnf/model.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pdnf/error.hpp"

namespace pdnf {

using nlohmann::json;

Pdnf::Pdnf(WeightMatrix weights, ProbabilityFamily family)
    : weights_(std::move(weights)), family_(std::move(family)) {
  if (family_.m() != weights_.m()) {
    throw Error("family describes " + std::to_string(family_.m()) + " variables but the weights have " +
                std::to_string(weights_.m()));
  }
}

std::vector<ProbTriple> Pdnf::probabilities() const {
  std::vector<ProbTriple> grid;
  grid.reserve(n() * m());
  for (std::size_t i = 0; i < n(); ++i) {
    for (std::size_t j = 0; j < m(); ++j) grid.push_back(family_.eval(j, weights_(i, j)));
  }
  return grid;
}

double total_entropy(const std::vector<ProbTriple>& grid) {
  double h = 0.0;
  for (const ProbTriple& p : grid) h += entropy(p);
  return h;
}

double total_entropy(const Pdnf& z) { return total_entropy(z.probabilities()); }

namespace {

json family_to_json(const ProbabilityFamily& family) {
  if (const auto* s = family.softmax()) {
    json alpha = json::array();
    for (const auto& a : s->alpha()) alpha.push_back({a[0], a[1], a[2]});
    return {{"kind", "softmax"}, {"alpha", alpha}};
  }
  const auto* t = family.threshold();
  return {{"kind", "threshold"}, {"low", t->low()}, {"high", t->high()}};
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error("model field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) field_error(path + key, "missing");
  return obj.at(key);
}

double real_at(const json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

std::vector<double> reals_at(const json& v, const std::string& field) {
  if (!v.is_array()) field_error(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(real_at(v[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

std::size_t count_at(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 1) field_error(field, "expected a positive integer");
  return v.get<std::size_t>();
}

ProbabilityFamily family_from_json(const json& f) {
  const std::string kind_field = "family.kind";
  const json& kind = require(f, "kind", "family.");
  if (!kind.is_string()) field_error(kind_field, "expected a string");
  if (kind == "softmax") {
    const json& alpha = require(f, "alpha", "family.");
    if (!alpha.is_array()) field_error("family.alpha", "expected an array of triples");
    std::vector<SoftmaxFamily::Coefficients> coeffs;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      const std::string field = "family.alpha[" + std::to_string(j) + "]";
      const auto row = reals_at(alpha[j], field);
      if (row.size() != 3) field_error(field, "expected exactly 3 coefficients");
      coeffs.push_back({row[0], row[1], row[2]});
    }
    try {
      return SoftmaxFamily(std::move(coeffs));
    } catch (const Error& e) {
      field_error("family.alpha", e.what());
    }
  }
  if (kind == "threshold") {
    auto low = reals_at(require(f, "low", "family."), "family.low");
    auto high = reals_at(require(f, "high", "family."), "family.high");
    try {
      return ThresholdFamily(std::move(low), std::move(high));
    } catch (const Error& e) {
      field_error("family", e.what());
    }
  }
  field_error(kind_field, "unknown family kind " + kind.dump());
}

}  // namespace

std::string to_json(const Pdnf& z, int indent) {
  json weights = json::array();
  for (const auto& row : z.weights().rows()) weights.push_back(row);
  json doc = {{"version", 1},
              {"n", z.n()},
              {"m", z.m()},
              {"weights", weights},
              {"family", family_to_json(z.family())}};
  return doc.dump(indent);
}

Pdnf pdnf_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed model JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("malformed model JSON: top level must be an object");
  const json& version = require(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != 1) field_error("version", "only version 1 is supported");
  const std::size_t n = count_at(require(doc, "n", ""), "n");
  const std::size_t m = count_at(require(doc, "m", ""), "m");
  const json& weights = require(doc, "weights", "");
  if (!weights.is_array() || weights.size() != n) field_error("weights", "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string field = "weights[" + std::to_string(i) + "]";
    auto row = reals_at(weights[i], field);
    if (row.size() != m) field_error(field, "expected " + std::to_string(m) + " weights");
    rows.push_back(std::move(row));
  }
  ProbabilityFamily family = family_from_json(require(doc, "family", ""));
  if (family.m() != m) field_error("family", "describes " + std::to_string(family.m()) + " variables, m is " + std::to_string(m));
  return Pdnf(WeightMatrix::from_rows(rows), std::move(family));
}

Pdnf load_pdnf(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return pdnf_from_json(buffer.str());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void save_pdnf(const Pdnf& z, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file " + path.string());
  out << to_json(z) << '\n';
}

}  // namespace pdnf
