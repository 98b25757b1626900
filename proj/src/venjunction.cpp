#include "pdnf/venjunction.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "pdnf/error.hpp"
#include "pdnf/format.hpp"

namespace pdnf {

namespace {

constexpr std::string_view kAngle = "∠";

char literal_symbol(Literal l) {
  switch (l) {
    case Literal::kNegated:
      return '-';
    case Literal::kAbsent:
      return 'e';
    case Literal::kPresent:
      return '+';
  }
  return '?';
}

Literal slot_literal(std::size_t slot) { return static_cast<Literal>(static_cast<int>(slot) - 1); }

void require_shape(std::size_t n, std::size_t m, const Venjunction& v) {
  if (v.n() != n || v.m() != m) {
    throw Error("shape mismatch: venjunction " + std::to_string(v.n()) + "x" + std::to_string(v.m()) +
                " vs measure " + std::to_string(n) + "x" + std::to_string(m));
  }
}

std::string trim(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out.push_back(c);
  }
  return out;
}

}  // namespace

Venjunction::Venjunction(std::size_t n, std::size_t m, std::vector<Literal> literals)
    : n_(n), m_(m), literals_(std::move(literals)) {
  if (n_ == 0 || m_ == 0) throw Error("venjunction needs n >= 1 and m >= 1");
  if (literals_.size() != n_ * m_) throw Error("venjunction literal count does not match n*m");
  for (Literal l : literals_) literal_from_int(to_int(l));
}

Venjunction::Venjunction(std::size_t n, std::size_t m)
    : Venjunction(n, m, std::vector<Literal>(n * m, Literal::kAbsent)) {}

std::uint64_t Venjunction::code() const {
  if (literals_.size() > 40) throw Error("venjunction too large for a 64-bit code");
  std::uint64_t c = 0;
  for (Literal l : literals_) c = c * 3 + literal_slot(l);
  return c;
}

Venjunction Venjunction::from_code(std::size_t n, std::size_t m, std::uint64_t code) {
  if (n * m > 40) throw Error("venjunction too large for a 64-bit code");
  std::vector<Literal> lits(n * m);
  for (std::size_t k = lits.size(); k-- > 0;) {
    lits[k] = slot_literal(code % 3);
    code /= 3;
  }
  if (code != 0) throw Error("venjunction code out of range");
  return Venjunction(n, m, std::move(lits));
}

std::string Venjunction::to_string() const {
  std::string out;
  for (std::size_t i = n_; i-- > 0;) {
    for (std::size_t j = 0; j < m_; ++j) out.push_back(literal_symbol((*this)(i, j)));
    if (i > 0) {
      out += ' ';
      out += kAngle;
      out += ' ';
    }
  }
  return out;
}

Venjunction parse_venjunction(std::string_view text) {
  std::vector<std::string> rows;
  std::string current;
  for (std::size_t k = 0; k < text.size();) {
    if (text.substr(k, kAngle.size()) == kAngle) {
      rows.push_back(trim(current));
      current.clear();
      k += kAngle.size();
    } else if (text[k] == '<') {
      rows.push_back(trim(current));
      current.clear();
      ++k;
    } else {
      current.push_back(text[k]);
      ++k;
    }
  }
  rows.push_back(trim(current));
  const std::size_t m = rows.front().size();
  if (m == 0) throw Error("venjunction text: empty conjunction in \"" + std::string(text) + "\"");
  std::vector<Literal> lits;
  lits.reserve(rows.size() * m);
  // Text lists the latest observation first.
  for (std::size_t r = rows.size(); r-- > 0;) {
    if (rows[r].size() != m) throw Error("venjunction text: conjunctions differ in length");
    for (char c : rows[r]) {
      switch (c) {
        case '-':
          lits.push_back(Literal::kNegated);
          break;
        case 'e':
          lits.push_back(Literal::kAbsent);
          break;
        case '+':
          lits.push_back(Literal::kPresent);
          break;
        default:
          throw Error(std::string("venjunction text: unexpected symbol '") + c + "'");
      }
    }
  }
  return Venjunction(rows.size(), m, std::move(lits));
}

VenjunctionMeasure::VenjunctionMeasure(const Pdnf& z) : VenjunctionMeasure(z.n(), z.m(), z.probabilities()) {}

VenjunctionMeasure::VenjunctionMeasure(std::size_t n, std::size_t m, std::vector<ProbTriple> triples)
    : n_(n), m_(m), triples_(std::move(triples)) {
  if (n_ == 0 || m_ == 0) throw Error("measure needs n >= 1 and m >= 1");
  if (triples_.size() != n_ * m_) throw Error("measure triple count does not match n*m");
  for (const ProbTriple& p : triples_) require_valid(p);
}

VenjunctionMeasure VenjunctionMeasure::from_encoder(const Encoder& e) {
  std::vector<ProbTriple> triples;
  triples.reserve(e.n() * e.m());
  for (std::size_t t = 0; t < e.n(); ++t) {
    for (std::size_t j = 0; j < e.m(); ++j) triples.push_back(segment_probs(e, t, j));
  }
  return VenjunctionMeasure(e.n(), e.m(), std::move(triples));
}

double mass(const VenjunctionMeasure& meas, const Venjunction& v) {
  require_shape(meas.n(), meas.m(), v);
  double p = 1.0;
  for (std::size_t k = 0; k < v.literals().size(); ++k) p *= meas.triples()[k].at(v.literals()[k]);
  return p;
}

std::vector<std::pair<Venjunction, double>> enumerate_support(const VenjunctionMeasure& meas, std::uint64_t cap) {
  const std::size_t cells = meas.n() * meas.m();
  if (static_cast<double>(cells) * std::log(3.0) > std::log(static_cast<double>(cap)) + 1e-9) {
    throw Error("3^" + std::to_string(cells) + " venjunctions exceed the enumeration cap of " + std::to_string(cap) +
                "; use sampling instead");
  }
  // Odometer over the local languages, last position fastest, so codes ascend.
  std::vector<std::vector<std::size_t>> allowed(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    const auto probs = meas.triples()[k].as_array();
    for (std::size_t s = 0; s < 3; ++s) {
      if (probs[s] > 0.0) allowed[k].push_back(s);
    }
  }
  std::vector<std::pair<Venjunction, double>> out;
  std::vector<std::size_t> cursor(cells, 0);
  std::vector<Literal> lits(cells);
  while (true) {
    double p = 1.0;
    for (std::size_t k = 0; k < cells; ++k) {
      const std::size_t slot = allowed[k][cursor[k]];
      lits[k] = slot_literal(slot);
      p *= meas.triples()[k].as_array()[slot];
    }
    if (p > 0.0) out.emplace_back(Venjunction(meas.n(), meas.m(), lits), p);
    std::size_t k = cells;
    while (k > 0) {
      --k;
      if (++cursor[k] < allowed[k].size()) break;
      cursor[k] = 0;
      if (k == 0) return out;
    }
  }
}

Venjunction sample_one(const VenjunctionMeasure& meas, Rng& rng) {
  std::vector<Literal> lits;
  lits.reserve(meas.triples().size());
  for (const ProbTriple& p : meas.triples()) {
    const double u = rng.uniform();
    const auto probs = p.as_array();
    std::size_t slot = u < p.neg ? 0 : (u < p.neg + p.eps ? 1 : 2);
    // Rounding in the cumulative sums must not select an impossible literal.
    while (slot > 0 && probs[slot] <= 0.0) --slot;
    lits.push_back(slot_literal(slot));
  }
  return Venjunction(meas.n(), meas.m(), std::move(lits));
}

std::vector<Venjunction> sample(const VenjunctionMeasure& meas, Rng& rng, std::size_t count) {
  if (count == 0) throw Error("sample count must be at least 1");
  std::vector<Venjunction> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(sample_one(meas, rng));
  return out;
}

Language::Language(std::size_t n, std::size_t m, std::vector<std::uint8_t> allowed)
    : n_(n), m_(m), allowed_(std::move(allowed)) {
  if (allowed_.size() != n_ * m_) throw Error("language mask count does not match n*m");
  for (std::uint8_t mask : allowed_) {
    if (mask == 0 || mask > 7) throw Error("every position must allow at least one literal");
  }
}

bool Language::allows(std::size_t i, std::size_t j, Literal l) const {
  return (allowed_.at(i * m_ + j) >> literal_slot(l)) & 1u;
}

std::vector<Literal> Language::local(std::size_t i, std::size_t j) const {
  std::vector<Literal> out;
  for (std::size_t s = 0; s < 3; ++s) {
    if ((allowed_.at(i * m_ + j) >> s) & 1u) out.push_back(slot_literal(s));
  }
  return out;
}

bool Language::contains(const Venjunction& v) const {
  require_shape(n_, m_, v);
  for (std::size_t k = 0; k < allowed_.size(); ++k) {
    if (!((allowed_[k] >> literal_slot(v.literals()[k])) & 1u)) return false;
  }
  return true;
}

std::optional<std::uint64_t> Language::size() const {
  std::uint64_t total = 1;
  for (std::uint8_t mask : allowed_) {
    const auto local = static_cast<std::uint64_t>(__builtin_popcount(mask));
    if (total > UINT64_MAX / local) return std::nullopt;
    total *= local;
  }
  return total;
}

double Language::log_size() const {
  double total = 0.0;
  for (std::uint8_t mask : allowed_) total += std::log(static_cast<double>(__builtin_popcount(mask)));
  return total;
}

std::string Language::regex() const {
  std::string out;
  for (std::size_t i = n_; i-- > 0;) {
    for (std::size_t j = 0; j < m_; ++j) {
      const std::string var = "x" + std::to_string(j + 1);
      std::vector<std::string> alts;
      for (Literal l : local(i, j)) {
        if (l == Literal::kNegated) alts.push_back(var.substr(0, 1) + "̄" + var.substr(1));
        if (l == Literal::kAbsent) alts.emplace_back("ε");
        if (l == Literal::kPresent) alts.push_back(var);
      }
      std::string factor;
      for (std::size_t a = 0; a < alts.size(); ++a) factor += (a ? "|" : "") + alts[a];
      if (alts.size() > 1) factor = "(" + factor + ")";
      if (j > 0) out += " ∧ ";
      out += factor;
    }
    if (i > 0) out += " ∠ ";
  }
  return out;
}

Language language(const VenjunctionMeasure& meas) {
  std::vector<std::uint8_t> allowed;
  allowed.reserve(meas.triples().size());
  for (const ProbTriple& p : meas.triples()) {
    std::uint8_t mask = 0;
    const auto probs = p.as_array();
    for (std::size_t s = 0; s < 3; ++s) {
      if (probs[s] > 0.0) mask |= static_cast<std::uint8_t>(1u << s);
    }
    allowed.push_back(mask);
  }
  return Language(meas.n(), meas.m(), std::move(allowed));
}

std::size_t hidden_variable_count(std::size_t count) {
  std::size_t l = 0;
  std::size_t capacity = 1;
  while (capacity < count) {
    capacity *= 3;
    ++l;
  }
  return l;
}

HiddenVariableEncoding hidden_variable_encoding(std::span<const Venjunction> support) {
  if (support.empty()) throw Error("hidden-variable encoding needs a non-empty support");
  std::set<Venjunction> seen;
  for (const Venjunction& v : support) {
    if (v.n() != support.front().n() || v.m() != support.front().m()) {
      throw Error("hidden-variable encoding: support venjunctions differ in shape");
    }
    if (!seen.insert(v).second) throw Error("hidden-variable encoding: duplicate venjunction " + v.to_string());
  }
  HiddenVariableEncoding enc;
  enc.hidden_count = hidden_variable_count(support.size());
  enc.observed.assign(support.begin(), support.end());
  for (std::size_t r = 0; r < support.size(); ++r) {
    std::vector<Literal> digits(enc.hidden_count);
    std::size_t index = r;
    for (std::size_t s = enc.hidden_count; s-- > 0;) {
      digits[s] = slot_literal(index % 3);
      index /= 3;
    }
    enc.hidden.push_back(std::move(digits));
  }
  return enc;
}

std::vector<Venjunction> HiddenVariableEncoding::decode() const {
  if (observed.size() != hidden.size()) throw Error("hidden-variable encoding is inconsistent");
  std::vector<std::optional<Venjunction>> slots(observed.size());
  for (std::size_t r = 0; r < hidden.size(); ++r) {
    if (hidden[r].size() != hidden_count) throw Error("hidden-variable encoding is inconsistent");
    std::size_t index = 0;
    for (Literal l : hidden[r]) index = index * 3 + literal_slot(l);
    if (index >= slots.size() || slots[index]) throw Error("hidden-variable codes are not a bijection");
    slots[index] = observed[r];
  }
  std::vector<Venjunction> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::string HiddenVariableEncoding::to_string() const {
  std::string out;
  for (std::size_t r = 0; r < observed.size(); ++r) {
    out += observed[r].to_string();
    out += " | h=";
    for (Literal l : hidden[r]) out.push_back(literal_symbol(l));
    out += '\n';
  }
  return out;
}

double mixture_measure(std::span<const MixtureComponent> components, std::span<const Venjunction> event) {
  if (components.empty()) throw Error("mixture needs at least one component");
  double total_weight = 0.0;
  for (const auto& c : components) {
    if (!(c.weight >= 0.0)) throw Error("mixture weights must be nonnegative");
    if (c.measure.n() != components.front().measure.n() || c.measure.m() != components.front().measure.m()) {
      throw Error("mixture components differ in shape");
    }
    total_weight += c.weight;
  }
  if (std::abs(total_weight - 1.0) > 1e-9) {
    throw Error("mixture weights sum to " + format_real(total_weight) + ", expected 1");
  }
  const std::set<Venjunction> unique(event.begin(), event.end());
  double p = 0.0;
  for (const auto& c : components) {
    double component_mass = 0.0;
    for (const Venjunction& v : unique) component_mass += mass(c.measure, v);
    p += c.weight * component_mass;
  }
  return std::clamp(p, 0.0, 1.0);
}

void write_support_csv(std::ostream& out, const std::vector<std::pair<Venjunction, double>>& support) {
  out << "venjunction,mass\n";
  for (const auto& [v, p] : support) out << v.to_string() << ',' << format_real(p) << '\n';
}

}  // namespace pdnf
