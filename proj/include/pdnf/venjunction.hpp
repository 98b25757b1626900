#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdnf/core_model.hpp"
#include "pdnf/encoder.hpp"
#include "pdnf/families.hpp"
#include "pdnf/model.hpp"
#include "pdnf/rng.hpp"

namespace pdnf {

/// One deterministic realisation of a PDNF: an n x m matrix of literals,
/// row i observed at time i.
class Venjunction {
 public:
  Venjunction(std::size_t n, std::size_t m, std::vector<Literal> literals);
  /// All positions absent.
  Venjunction(std::size_t n, std::size_t m);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  Literal operator()(std::size_t i, std::size_t j) const { return literals_[i * m_ + j]; }
  const std::vector<Literal>& literals() const { return literals_; }

  /// Base-3 index with position (0, 0) as the most significant digit and
  /// digits 0/1/2 for negated/absent/present. Requires nm <= 40.
  std::uint64_t code() const;
  static Venjunction from_code(std::size_t n, std::size_t m, std::uint64_t code);

  /// Rows of '-', 'e', '+' joined by " ∠ ", latest observation first.
  std::string to_string() const;

  friend bool operator==(const Venjunction&, const Venjunction&) = default;
  friend auto operator<=>(const Venjunction& a, const Venjunction& b) {
    return a.literals_ <=> b.literals_;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<Literal> literals_;
};

/// Parses the text form produced by Venjunction::to_string. Rows may be
/// separated by "∠" or its ASCII stand-in '<'; whitespace is ignored.
Venjunction parse_venjunction(std::string_view text);

/// The product measure over venjunctions induced by per-position triples.
class VenjunctionMeasure {
 public:
  explicit VenjunctionMeasure(const Pdnf& z);
  /// Row-major triples; each must be a probability vector.
  VenjunctionMeasure(std::size_t n, std::size_t m, std::vector<ProbTriple> triples);
  /// Literal probabilities read off the clamped segment integrals.
  static VenjunctionMeasure from_encoder(const Encoder& e);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const ProbTriple& triple(std::size_t i, std::size_t j) const { return triples_[i * m_ + j]; }
  const std::vector<ProbTriple>& triples() const { return triples_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<ProbTriple> triples_;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 531441;  // 3^12

double mass(const VenjunctionMeasure& meas, const Venjunction& v);

/// Every venjunction of positive mass, in ascending code order. Throws when
/// 3^(nm) exceeds `cap`.
std::vector<std::pair<Venjunction, double>> enumerate_support(const VenjunctionMeasure& meas,
                                                              std::uint64_t cap = kDefaultEnumerationCap);

/// Draws one venjunction. Positions are visited in row-major order and each
/// consumes exactly one uniform variate u: negated if u < p_neg, absent if
/// u < p_neg + p_eps, present otherwise (never a zero-probability literal).
Venjunction sample_one(const VenjunctionMeasure& meas, Rng& rng);
std::vector<Venjunction> sample(const VenjunctionMeasure& meas, Rng& rng, std::size_t count);

/// Support of the measure as a Cartesian product of local languages.
class Language {
 public:
  Language(std::size_t n, std::size_t m, std::vector<std::uint8_t> allowed);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  bool allows(std::size_t i, std::size_t j, Literal l) const;
  std::vector<Literal> local(std::size_t i, std::size_t j) const;
  bool contains(const Venjunction& v) const;

  /// |L|, exact while it fits in 64 bits.
  std::optional<std::uint64_t> size() const;
  /// log |L| (natural), always available.
  double log_size() const;

  /// Concatenation of per-position alternatives, e.g. "(ε|x1) ∧ x̄2 ∠ ...",
  /// latest observation first.
  std::string regex() const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<std::uint8_t> allowed_;  // bit k set: literal slot k allowed
};

Language language(const VenjunctionMeasure& meas);

/// Deterministic re-expression of a support set with ceil(log3 M) hidden
/// ternary variables; row r carries the base-3 digits of r (most significant
/// first, digit d mapped to literal d - 1).
struct HiddenVariableEncoding {
  std::size_t hidden_count = 0;
  std::vector<Venjunction> observed;
  std::vector<std::vector<Literal>> hidden;

  /// Recovers the encoded support in its original order.
  std::vector<Venjunction> decode() const;
  std::string to_string() const;
};

/// Throws on an empty list, mixed shapes or duplicate venjunctions.
HiddenVariableEncoding hidden_variable_encoding(std::span<const Venjunction> support);

/// Smallest l with 3^l >= count.
std::size_t hidden_variable_count(std::size_t count);

struct MixtureComponent {
  double weight;
  VenjunctionMeasure measure;
};

/// Sum_k w_k mu_k(A) for the event A (duplicates in `event` count once).
double mixture_measure(std::span<const MixtureComponent> components, std::span<const Venjunction> event);

/// Rows "venjunction,mass".
void write_support_csv(std::ostream& out, const std::vector<std::pair<Venjunction, double>>& support);

}  // namespace pdnf
