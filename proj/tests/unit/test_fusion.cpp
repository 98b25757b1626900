#include <cmath>
#include <sstream>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace pdnf;
namespace t = pdnf::testing;

namespace {

double max_diff(const ProbTriple& a, const ProbTriple& b) {
  return std::max({std::abs(a.neg - b.neg), std::abs(a.eps - b.eps), std::abs(a.pos - b.pos)});
}

// Direct formula, kept apart from the library implementation.
ProbTriple fuse_oracle(const ProbTriple& p, const ProbTriple& q) {
  const double a = p.neg * q.neg, b = p.eps * q.eps, c = p.pos * q.pos;
  const double s = a + b + c;
  return {a / s, b / s, c / s};
}

std::vector<double> grid(double lo, double hi, std::size_t points) {
  std::vector<double> g(points);
  for (std::size_t k = 0; k < points; ++k) g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
  return g;
}

}  // namespace

TEST_SUITE("fusion") {
  TEST_CASE("fuse examples") {
    CHECK(max_diff(fuse(ProbTriple::uniform(), ProbTriple::uniform()), ProbTriple::uniform()) <= 1e-15);
    CHECK(max_diff(fuse({1, 0, 0}, {0.2, 0.3, 0.5}), {1, 0, 0}) == 0.0);
    CHECK(max_diff(fuse({0.25, 0.25, 0.5}, {0.25, 0.25, 0.5}), {1.0 / 6, 1.0 / 6, 2.0 / 3}) <= 1e-15);
    CHECK_THROWS_AS(fuse({1, 0, 0}, {0, 0, 1}), ContradictoryEvidence);
    CHECK_THROWS_WITH(fuse({0, 1, 0}, {0.5, 0, 0.5}), doctest::Contains("contradictory evidence"));
  }

  TEST_CASE("fuse is a commutative monoid on triples") {
    Rng rng(11);
    for (int k = 0; k < 1000; ++k) {
      const ProbTriple p = t::random_triple(rng), q = t::random_triple(rng), r = t::random_triple(rng);
      CHECK(max_diff(fuse(p, q), fuse(q, p)) <= 1e-12);
      CHECK(max_diff(fuse(fuse(p, q), r), fuse(p, fuse(q, r))) <= 1e-12);
      CHECK(max_diff(fuse(p, ProbTriple::uniform()), p) <= 1e-12);
      CHECK(max_diff(fuse(p, q), fuse_oracle(p, q)) <= 1e-12);
    }
  }

  TEST_CASE("weight addition is fusion for softmax families") {
    CHECK(check_composition(SoftmaxFamily::symmetric(1), 0, 0.0, 0.0) == 0.0);
    const SoftmaxFamily shifted(std::vector<SoftmaxFamily::Coefficients>{{0.0, 0.0, 1.0}});
    CHECK(check_composition(shifted, 0, std::log(2.0), std::log(2.0)) <= 1e-15);
    CHECK(max_diff(shifted.eval(0, 2 * std::log(2.0)), {1.0 / 6, 1.0 / 6, 2.0 / 3}) <= 1e-15);

    Rng rng(12);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const SoftmaxFamily fam = t::random_softmax(rng, 1);
      const double xi = t::uniform_in(rng, -50, 50), eta = t::uniform_in(rng, -50, 50);
      worst = std::max(worst, check_composition(fam, 0, xi, eta));
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("pdnf fusion") {
    const Pdnf a(WeightMatrix::from_rows({{1.0, -0.5}}), SoftmaxFamily::symmetric(2));
    const Pdnf b(WeightMatrix::from_rows({{0.3, 2.0}}), SoftmaxFamily::symmetric(2));
    const Pdnf ab = fuse_pdnf(a, b);
    CHECK(ab.weights() == WeightMatrix::from_rows({{1.3, 1.5}}));
    const auto pos = fuse_positions(a, b);
    const auto probs = ab.probabilities();
    for (std::size_t k = 0; k < pos.size(); ++k) CHECK(max_diff(pos[k], probs[k]) <= 1e-12);

    const Pdnf th(WeightMatrix::from_rows({{0.0, 0.0}}), ThresholdFamily({-1.0, -1.0}, {1.0, 1.0}));
    CHECK_THROWS_AS(fuse_pdnf(th, th), Error);
    const Pdnf other(WeightMatrix::from_rows({{1.0, 1.0}}), t::fixed_triple_family(2));
    CHECK_THROWS_AS(fuse_pdnf(a, other), Error);
  }

  TEST_CASE("characterization search") {
    const auto g = grid(-2.0, 2.0, 41);
    const auto perturbed = check_characterization([](double xi) { return t::perturbed_softmax(xi); }, g);
    REQUIRE(perturbed.has_value());
    CHECK(perturbed->deviation > 1e-6);
    CHECK(composition_deviation([](double xi) { return t::perturbed_softmax(xi); }, perturbed->xi, perturbed->eta) ==
          doctest::Approx(perturbed->deviation));

    const ProbabilityFamily soft = SoftmaxFamily::symmetric(1);
    CHECK_FALSE(check_characterization([&](double xi) { return soft.eval(0, xi); }, g).has_value());

    // Only the open ramp (0, 1) so every triple stays fusable.
    const ThresholdFamily th({-1.0}, {3.0});
    const auto ramp = check_characterization([&](double xi) { return th.eval(0, xi); }, grid(-0.5, 0.9, 15));
    REQUIRE(ramp.has_value());
    CHECK(ramp->deviation > 1e-6);
  }

  TEST_CASE("convergence to determinism") {
    const SoftmaxFamily fam = SoftmaxFamily::symmetric(1);
    const std::vector<double> ones(40, 1.0);
    const std::size_t k = convergence_experiment(fam, 0, ones, 1e-6);
    CHECK(k == 14);
    CHECK(fam.eval(0, 15.0).pos > 1 - 1e-6);
    CHECK(fam.eval(0, 13.0).pos <= 1 - 1e-6);
    CHECK(convergence_experiment(fam, 0, ones, 0.5) == 1);

    const std::vector<double> minus(40, -1.0);
    CHECK(convergence_experiment(fam, 0, minus, 1e-6) == 14);

    CHECK_THROWS_AS(convergence_experiment(fam, 0, std::vector<double>{1.0, 0.0}, 1e-6), Error);
    CHECK_THROWS_AS(convergence_experiment(fam, 0, std::vector<double>{1.0, -1.0}, 1e-6), Error);
    CHECK_THROWS_AS(convergence_experiment(fam, 0, std::vector<double>(3, 1.0), 1e-6), Error);
    const SoftmaxFamily flat(std::vector<SoftmaxFamily::Coefficients>{{0.0, 1.0, 1.0}});
    CHECK_THROWS_AS(convergence_experiment(flat, 0, ones, 1e-6), Error);
  }

  TEST_CASE("coupon bound") {
    CHECK(coupon_bound(0.1, 0.05, 1, 1).draws == 41);
    CHECK(coupon_bound(1.0, 0.5, 1, 1).draws == 2);
    CHECK(coupon_bound(0.01, 0.1, 2, 1).draws == 450);
    CHECK(coupon_bound(1.0, 1 - 1e-12, 1, 1).draws >= 1);
    CHECK(coupon_bound(0.2, 0.1, 1, 2).draws >= coupon_bound(0.3, 0.1, 1, 2).draws);
    CHECK(coupon_bound(0.2, 0.05, 1, 2).draws >= coupon_bound(0.2, 0.1, 1, 2).draws);
    CHECK(coupon_bound(0.2, 0.1, 2, 2).draws >= coupon_bound(0.2, 0.1, 1, 2).draws);
    CHECK_THROWS_AS(coupon_bound(0.0, 0.1, 1, 1), Error);
    CHECK_THROWS_AS(coupon_bound(1.5, 0.1, 1, 1), Error);
    CHECK_THROWS_AS(coupon_bound(0.5, 1.0, 1, 1), Error);
    CHECK_THROWS_AS(coupon_bound(0.5, 0.0, 1, 1), Error);
  }

  TEST_CASE("identification experiment") {
    const VenjunctionMeasure det(1, 2, {ProbTriple::certain(Literal::kPresent), ProbTriple::certain(Literal::kNegated)});
    Rng rng(13);
    const auto d = identification_experiment(det, rng, 20, 0.1);
    CHECK(d.success_rate == 1.0);
    CHECK(d.bound.draws == static_cast<std::uint64_t>(std::ceil(std::log(9.0 / 0.1))));
    CHECK(d.support_size == 1);

    const VenjunctionMeasure two(2, 1, std::vector<ProbTriple>(2, {0.1, 0.3, 0.6}));
    const auto r = identification_experiment(two, rng, 200, 0.1);
    CHECK(r.bound.p_min == doctest::Approx(0.01));
    CHECK(r.bound.draws == 450);
    CHECK(r.support_size == 9);
    CHECK(r.success_rate >= 0.9 - 3 * std::sqrt(0.09 / 200));
    for (const auto& tr : r.trials) {
      CHECK(tr.draws_used <= r.bound.draws);
      if (!tr.covered) CHECK(tr.draws_used == r.bound.draws);
    }

    const auto u = identification_experiment(VenjunctionMeasure(1, 1, {ProbTriple::uniform()}), rng, 400, 0.05);
    CHECK(u.success_rate >= 0.95 - 3 * std::sqrt(0.05 * 0.95 / 400));
    CHECK_THROWS_AS(identification_experiment(VenjunctionMeasure(13, 1, std::vector<ProbTriple>(13, ProbTriple::uniform())), rng, 1, 0.1),
                    Error);
  }

  TEST_CASE("identification is reproducible") {
    const VenjunctionMeasure two(2, 1, std::vector<ProbTriple>(2, {0.1, 0.3, 0.6}));
    Rng a(77), b(77);
    const auto ra = identification_experiment(two, a, 50, 0.1);
    const auto rb = identification_experiment(two, b, 50, 0.1);
    for (std::size_t k = 0; k < 50; ++k) CHECK(ra.trials[k].draws_used == rb.trials[k].draws_used);
    std::ostringstream out;
    write_identification_csv(out, ra);
    CHECK(out.str().rfind("trial,draws_used,covered\n", 0) == 0);
    CHECK(out.str().find("# summary") != std::string::npos);
  }
}
