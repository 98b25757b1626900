#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace pdnf;
namespace t = pdnf::testing;

namespace {

VenjunctionMeasure fixed(std::size_t n, std::size_t m, ProbTriple p) {
  return VenjunctionMeasure(n, m, std::vector<ProbTriple>(n * m, p));
}

// Every weight is +1 or -1; scaled outside the ramp they give certain literals.
Pdnf deterministic(const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<double>> scaled = rows;
  for (auto& r : scaled) {
    for (double& x : r) x *= 10.0;
  }
  const std::size_t m = rows.front().size();
  return Pdnf(WeightMatrix::from_rows(scaled), ThresholdFamily(std::vector<double>(m, -1.0), std::vector<double>(m, 1.0)));
}

}  // namespace

TEST_SUITE("venjunction") {
  TEST_CASE("text form lists the latest conjunction first") {
    const Venjunction v = parse_venjunction("+e ∠ -+");
    CHECK(v.n() == 2);
    CHECK(v.m() == 2);
    CHECK(v(0, 0) == Literal::kNegated);
    CHECK(v(1, 1) == Literal::kAbsent);
    CHECK(v.to_string() == "+e ∠ -+");
    CHECK(parse_venjunction("+e<-+") == v);
    CHECK_THROWS_AS(parse_venjunction("+x"), Error);
    CHECK_THROWS_AS(parse_venjunction("+ ∠ ++"), Error);
    Rng rng(1);
    for (int k = 0; k < 100; ++k) {
      const Venjunction r = t::random_venjunction(rng, 1 + t::index_below(rng, 4), 1 + t::index_below(rng, 4));
      CHECK(parse_venjunction(r.to_string()) == r);
      CHECK(Venjunction::from_code(r.n(), r.m(), r.code()) == r);
    }
  }

  TEST_CASE("mass is the product of per-position probabilities") {
    CHECK(mass(fixed(1, 1, {0.1, 0.3, 0.6}), parse_venjunction("+")) == 0.6);
    const VenjunctionMeasure soft(Pdnf(WeightMatrix::from_rows({{1.0}}), t::fixed_triple_family(1)));
    CHECK(mass(soft, parse_venjunction("+")) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK_THROWS_AS(mass(soft, parse_venjunction("++")), Error);
  }

  TEST_CASE("story template mass") {
    // Variables: V I P W O F J D. Row 0 picks the author, row 1 the kind of
    // report, row 2 the consequence; marginals 1/2, 1/3, 1/3 on the story slots.
    const ProbTriple absent{0, 1, 0};
    const ProbTriple negated{1, 0, 0};
    std::vector<ProbTriple> grid(24, absent);
    grid[0] = {0.5, 0.0, 0.5};             // V
    grid[1] = negated;                     // I
    grid[2] = negated;                     // P
    grid[8 + 3] = {2.0 / 3, 0.0, 1.0 / 3};  // W
    grid[8 + 4] = negated;                 // O
    grid[16 + 5] = {2.0 / 3, 0.0, 1.0 / 3}; // F
    grid[16 + 6] = negated;                // J
    grid[16 + 7] = negated;                // D
    const VenjunctionMeasure story(3, 8, grid);
    const Venjunction told = parse_venjunction("eeeee+-- ∠ eee+-eee ∠ +--eeeee");
    CHECK(mass(story, told) == doctest::Approx(1.0 / 18).epsilon(1e-14));
  }

  TEST_CASE("deterministic measure") {
    const VenjunctionMeasure det(deterministic({{1, -1}, {-1, 1}}));
    CHECK(mass(det, parse_venjunction("-+ ∠ +-")) == 1.0);
    CHECK(mass(det, parse_venjunction("-+ ∠ ++")) == 0.0);
    const auto support = enumerate_support(det);
    REQUIRE(support.size() == 1);
    CHECK(support[0].second == 1.0);
    Rng rng(2);
    for (const Venjunction& v : sample(det, rng, 100)) CHECK(v == support[0].first);
    CHECK(language(det).size() == 1u);
  }

  TEST_CASE("enumeration matches the brute-force oracle") {
    const auto uniform = enumerate_support(fixed(1, 1, ProbTriple::uniform()));
    REQUIRE(uniform.size() == 3);
    for (const auto& [v, p] : uniform) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-15));

    const auto grid = std::vector<ProbTriple>(2, {0.1, 0.3, 0.6});
    const auto support = enumerate_support(VenjunctionMeasure(2, 1, grid));
    REQUIRE(support.size() == 9);
    const auto oracle = t::brute_force_masses(grid);
    double total = 0.0;
    for (const auto& [v, p] : support) {
      CHECK(std::abs(p - oracle[v.code()]) <= 1e-15);
      total += p;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK_THROWS_WITH_AS(enumerate_support(fixed(13, 1, ProbTriple::uniform())), doctest::Contains("sampling"), Error);
  }

  TEST_CASE("masses sum to one and vanish outside the language") {
    Rng rng(3);
    for (int k = 0; k < 40; ++k) {
      const auto n = 1 + t::index_below(rng, 3);
      const auto m = 1 + t::index_below(rng, 3);
      const Pdnf z(t::random_matrix(rng, n, m, 3.0), k % 2 ? ProbabilityFamily(t::random_softmax(rng, m))
                                                     : ProbabilityFamily(t::random_threshold(rng, m)));
      const VenjunctionMeasure meas(z);
      const auto all = t::brute_force_masses(meas.triples());
      double total = 0.0;
      for (double p : all) total += p;
      CHECK(std::abs(total - 1.0) <= 1e-9);
      const Language lang = language(meas);
      for (std::uint64_t c = 0; c < all.size(); ++c) {
        const Venjunction v = Venjunction::from_code(n, m, c);
        CHECK(mass(meas, v) == doctest::Approx(all[c]).epsilon(1e-14));
        if (!lang.contains(v)) CHECK(mass(meas, v) == 0.0);
      }
      CHECK(enumerate_support(meas).size() == *lang.size());
    }
  }

  TEST_CASE("sampling frequency of a single position") {
    Rng rng(4);
    const auto draws = sample(fixed(1, 1, {0.1, 0.3, 0.6}), rng, 100000);
    double hits = 0;
    for (const auto& v : draws) hits += v(0, 0) == Literal::kPresent;
    CHECK(std::abs(hits / 1e5 - 0.6) <= 3 * std::sqrt(0.6 * 0.4 / 1e5));
  }

  TEST_CASE("sampling frequencies match masses on a small instance") {
    const VenjunctionMeasure meas(2, 2, {{0.2, 0.3, 0.5}, {0.6, 0.0, 0.4}, {0.25, 0.25, 0.5}, {0.1, 0.8, 0.1}});
    Rng rng(5);
    std::map<std::uint64_t, double> counts;
    constexpr double kDraws = 1e5;
    for (const auto& v : sample(meas, rng, static_cast<std::size_t>(kDraws))) counts[v.code()] += 1;
    for (const auto& [v, p] : enumerate_support(meas)) {
      const double se = std::sqrt(p * (1 - p) / kDraws);
      CHECK(std::abs(counts[v.code()] / kDraws - p) <= 3 * se);
    }
    for (const auto& [code, c] : counts) CHECK(mass(meas, Venjunction::from_code(2, 2, code)) > 0.0);
  }

  TEST_CASE("fixed seed reproduces the sample sequence") {
    const VenjunctionMeasure meas(2, 3, std::vector<ProbTriple>(6, {0.2, 0.5, 0.3}));
    Rng a(99);
    Rng b(99);
    CHECK(sample(meas, a, 500) == sample(meas, b, 500));
    CHECK_THROWS_AS(sample(meas, a, 0), Error);
  }

  TEST_CASE("language") {
    const VenjunctionMeasure meas(1, 2, {{0, 0.4, 0.6}, {0, 0, 1}});
    const Language lang = language(meas);
    CHECK(lang.size() == 2u);
    CHECK(lang.local(0, 0) == std::vector<Literal>{Literal::kAbsent, Literal::kPresent});
    CHECK(lang.regex() == "(ε|x1) ∧ x2");
    CHECK(language(fixed(2, 2, ProbTriple::uniform())).size() == 81u);
    CHECK(language(fixed(2, 1, {0.5, 0, 0.5})).regex() == "(x̄1|x1) ∠ (x̄1|x1)");
    const Language big = language(fixed(50, 1, ProbTriple::uniform()));
    CHECK_FALSE(big.size().has_value());
    CHECK(big.log_size() == doctest::Approx(50 * std::log(3.0)));
  }

  TEST_CASE("hidden variable encoding") {
    Rng rng(6);
    const Venjunction one = t::random_venjunction(rng, 2, 2);
    CHECK(hidden_variable_encoding(std::vector{one}).hidden_count == 0);
    CHECK(hidden_variable_count(5) == 2);
    CHECK(hidden_variable_count(9) == 2);
    CHECK(hidden_variable_count(10) == 3);
    CHECK_THROWS_AS(hidden_variable_encoding(std::vector<Venjunction>{}), Error);
    CHECK_THROWS_AS(hidden_variable_encoding(std::vector{one, one}), Error);

    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t size = 1 + t::index_below(rng, 27);
      std::set<Venjunction> unique;
      while (unique.size() < size) unique.insert(t::random_venjunction(rng, 2, 2));
      std::vector<Venjunction> support(unique.begin(), unique.end());
      // shuffle so decode has to respect the input order
      for (std::size_t k = support.size(); k > 1; --k) std::swap(support[k - 1], support[t::index_below(rng, k)]);
      const auto enc = hidden_variable_encoding(support);
      std::size_t cap = 1;
      for (std::size_t s = 0; s < enc.hidden_count; ++s) cap *= 3;
      CHECK(cap >= size);
      CHECK(cap / 3 < size);
      std::set<std::vector<Literal>> codes(enc.hidden.begin(), enc.hidden.end());
      CHECK(codes.size() == size);
      CHECK(enc.decode() == support);
    }
  }

  TEST_CASE("mixture measure") {
    const VenjunctionMeasure a(1, 1, {{0.1, 0.3, 0.6}});
    const std::vector<Venjunction> event = {parse_venjunction("+"), parse_venjunction("-"), parse_venjunction("+")};
    const std::vector<MixtureComponent> single = {{1.0, a}};
    CHECK(mixture_measure(single, event) == doctest::Approx(0.7).epsilon(1e-15));

    const VenjunctionMeasure x(1, 1, {ProbTriple::certain(Literal::kPresent)});
    const VenjunctionMeasure y(1, 1, {ProbTriple::certain(Literal::kNegated)});
    const std::vector<MixtureComponent> pair = {{0.5, x}, {0.5, y}};
    CHECK(mixture_measure(pair, std::vector{parse_venjunction("+")}) == 0.5);
    CHECK(mixture_measure(pair, std::vector{parse_venjunction("-")}) == 0.5);

    const std::vector<MixtureComponent> bad = {{0.5, x}, {0.4, y}};
    CHECK_THROWS_AS(mixture_measure(bad, event), Error);
  }

  TEST_CASE("mixture agrees with two-stage sampling") {
    Rng rng(7);
    std::vector<MixtureComponent> comps;
    const std::vector<double> weights = {0.2, 0.5, 0.3};
    for (double w : weights) comps.push_back({w, VenjunctionMeasure(Pdnf(t::random_matrix(rng, 2, 1, 2.0), SoftmaxFamily::symmetric(1)))});
    const std::vector<Venjunction> event = {parse_venjunction("+ ∠ +"), parse_venjunction("e ∠ -"), parse_venjunction("- ∠ +")};
    const double exact = mixture_measure(comps, event);

    std::set<Venjunction> in_event(event.begin(), event.end());
    constexpr std::size_t kDraws = 100000;
    double hits = 0;
    for (std::size_t k = 0; k < kDraws; ++k) {
      const double u = rng.uniform();
      const std::size_t c = u < 0.2 ? 0 : (u < 0.7 ? 1 : 2);
      hits += in_event.count(sample_one(comps[c].measure, rng));
    }
    const double freq = hits / kDraws;
    CHECK(std::abs(freq - exact) <= 3 * std::sqrt(exact * (1 - exact) / kDraws));
  }

  TEST_CASE("measure from an encoder") {
    const VenjunctionMeasure meas = VenjunctionMeasure::from_encoder(encode(WeightMatrix::from_rows({{0.6, -2}})));
    CHECK(mass(meas, parse_venjunction("+-")) == 0.6);
    CHECK(mass(meas, parse_venjunction("e-")) == doctest::Approx(0.4));
  }

  TEST_CASE("support csv") {
    std::ostringstream out;
    write_support_csv(out, enumerate_support(fixed(1, 1, {0.0, 0.5, 0.5})));
    CHECK(out.str() == "venjunction,mass\ne,0.5\n+,0.5\n");
  }
}
