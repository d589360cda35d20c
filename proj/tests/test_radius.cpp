#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bohrlab/domains.hpp"
#include "bohrlab/families.hpp"
#include "bohrlab/radius.hpp"
#include "oracles.hpp"

using namespace bohrlab;

namespace {

std::function<Certified(double)> fr_of(const PowerSeries& f) {
  return [&f](double r) { return majorant_sum(f, r); };
}

const std::vector<double> kLongSweep{0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999};

}  // namespace

TEST_CASE("bisection on the extremal family") {
  const auto f = extremal_fa({0.5, 0.0}, 128);
  const auto res = critical_radius(fr_of(f), 1e-9);
  CHECK(res.r_star == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(res.hi - res.lo <= 1e-9);
  CHECK(res.lo <= res.r_star);
  CHECK(res.r_star <= res.hi);
  CHECK(res.certified);
  const auto lo = majorant_sum(f, res.lo);
  const auto hi = majorant_sum(f, res.hi);
  CHECK(lo.value + lo.err <= 1.0);
  CHECK(hi.value - hi.err > 1.0);

  const auto near = extremal_fa({0.999, 0.0}, 256);
  CHECK(std::abs(critical_radius(fr_of(near), 1e-8).r_star - 1.0 / 3.0) < 1e-3);

  const auto c = PowerSeries::constant({0.5, 0.0});
  CHECK_THROWS_AS(critical_radius(fr_of(c), 1e-6), NoCrossingError);
  CHECK_THROWS_AS(critical_radius(fr_of(f), 0.0), std::invalid_argument);
}

TEST_CASE("crossing matches the closed-form root for many a") {
  for (double g : {0.0, 0.4}) {
    for (double a = 0.5; a < 1.0; a += 0.05) {
      const auto f = extremal_fa({a, g}, 256);
      const double r = critical_radius(fr_of(f), 1e-10).r_star;
      CHECK(static_cast<double>(oracle::extremal_majorant(a, g, r)) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("family radius recovers (1+gamma)/(3+gamma)") {
  for (int k = 0; k < 10; ++k) {
    const double g = 0.1 * k;
    FunctionalParams p;
    p.gamma = g;
    const auto fam = family_radius(p, kLongSweep, 1e-7);
    CHECK(std::abs(fam.r_star - fournier_ruscheweyh_radius(g)) <= 1e-4);
    for (std::size_t i = 1; i < fam.radii.size(); ++i) CHECK(fam.radii[i] <= fam.radii[i - 1]);
  }
  FunctionalParams p;
  CHECK(std::abs(family_radius(p).r_star - 1.0 / 3.0) <= 1e-4);
  p.gamma = 0.5;
  CHECK(std::abs(family_radius(p).r_star - 3.0 / 7.0) <= 1e-4);
  p.id = FunctionalId::p_corrected;
  p.gamma = 0.0;
  p.lambda = 1.0;
  CHECK(std::abs(family_radius(p).r_star - 1.0 / 3.0) <= 1e-4);
  CHECK_THROWS_AS(family_radius(p, {0.9, 0.5}), std::invalid_argument);
}

TEST_CASE("disk variants") {
  FunctionalParams sq;
  sq.id = FunctionalId::fr_sq_a0;
  CHECK(std::abs(family_radius(sq).r_star - 0.5) <= 1e-4);
  FunctionalParams zero;
  zero.id = FunctionalId::fr_a0_zero;
  const auto fam = family_radius(zero);
  CHECK(std::abs(fam.r_star - std::numbers::sqrt2 / 2) <= 1e-3);
  CHECK(fam.a_values.front() == doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-3));
  zero.gamma = 0.5;
  CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
}

TEST_CASE("sharpness witnesses for the classical radius") {
  FunctionalParams p;
  const auto w = sharpness_witness(p, 0.34);
  REQUIRE(w.has_value());
  CHECK(w->a > 33.0 / 34.0);
  CHECK(w->report.value - w->report.err > 1.0);
  CHECK_FALSE(sharpness_witness(p, 1.0 / 3.0).has_value());

  FunctionalParams sq;
  sq.id = FunctionalId::fr_sq_a0;
  CHECK(sharpness_witness(sq, 0.51).has_value());
  CHECK_FALSE(sharpness_witness(sq, 0.5).has_value());
}

TEST_CASE("every functional is sharp on its extremal family") {
  std::vector<FunctionalParams> all;
  for (double g : {0.0, 0.25, 0.5}) {
    for (auto id : {FunctionalId::fr, FunctionalId::coeff_refined, FunctionalId::harmonic_sum,
                    FunctionalId::harmonic_quad}) {
      FunctionalParams p;
      p.id = id;
      p.gamma = g;
      all.push_back(p);
    }
    for (int m : {1, 2}) {
      FunctionalParams q;
      q.id = FunctionalId::q_corrected;
      q.gamma = g;
      q.m = m;
      all.push_back(q);
      FunctionalParams pp = q;
      pp.id = FunctionalId::p_corrected;
      all.push_back(pp);
    }
    for (double scale : {0.0, 0.5}) {
      FunctionalParams b;
      b.id = FunctionalId::beta_refined;
      b.gamma = g;
      b.beta = scale * (1.0 + g);
      all.push_back(b);
    }
  }
  for (const auto& p : all) {
    CAPTURE(to_string(p.id));
    CAPTURE(p.gamma);
    const double r0 = p.stated_radius();
    CHECK_FALSE(sharpness_witness(p, r0).has_value());
    CHECK(sharpness_witness(p, r0 + 0.01).has_value());
  }
}

TEST_CASE("lambda override maps onto the matching domain") {
  FunctionalParams p;
  p.id = FunctionalId::coeff_refined;
  p.lambda = 0.8;
  CHECK(p.family_gamma() == doctest::Approx(0.25));
  CHECK(p.stated_radius() == doctest::Approx(1.0 / 2.6));
  p.lambda = 0.4;
  CHECK_THROWS_AS(p.family_gamma(), std::invalid_argument);
}
