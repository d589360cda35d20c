#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bohrlab/domains.hpp"
#include "bohrlab/families.hpp"
#include "bohrlab/functionals.hpp"
#include "oracles.hpp"

using namespace bohrlab;

namespace {

const PowerSeries kIdentity = PowerSeries::polynomial({{0, 0}, {1, 0}});

std::vector<BohrReport> all_analytic(const PowerSeries& f, double r, double g) {
  const double lam = 1.0 / (1.0 + g);
  return {thm_fr(f, r, g),
          thm_q_corrected(f, r, g, make_q({})),
          thm_q_corrected(f, r, g, make_q({0.0})),
          thm_p_corrected(f, r, lam, 2),
          thm_beta_refined(f, r, 0.5 / lam, lam),
          thm_coeff_refined(f, r, lam)};
}

}  // namespace

TEST_CASE("verdicts follow the error bars") {
  CHECK(classify(1.0, 0.0) == Verdict::holds);
  CHECK(classify(0.9, 0.05) == Verdict::holds);
  CHECK(classify(0.99, 0.02) == Verdict::inconclusive);
  CHECK(classify(1.01, 0.02) == Verdict::inconclusive);
  CHECK(classify(1.03, 0.02) == Verdict::violated);
}

TEST_CASE("functional ids parse in both spellings") {
  CHECK(parse_functional_id("thm_fr") == FunctionalId::fr);
  CHECK(parse_functional_id("harmonic_quad") == FunctionalId::harmonic_quad);
  CHECK(to_string(FunctionalId::q_corrected) == "q_corrected");
  CHECK_THROWS_AS(parse_functional_id("nope"), std::invalid_argument);
}

TEST_CASE("Q polynomials from the constraint") {
  const auto q1 = make_q({});
  REQUIRE(q1.degree() == 1);
  CHECK(q1.coeffs[0] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  CHECK(std::abs(q1.constraint_residual()) <= 1e-12);
  const auto q2 = make_q({0.0});
  CHECK(q2.coeffs[1] == doctest::Approx(512.0 / 243.0).epsilon(1e-15));
  CHECK(std::abs(q2.constraint_residual()) <= 1e-12);
  // Prefix that already meets the constraint: boundary, c_2 = 0.
  const auto q3 = make_q({8.0 / 9.0});
  CHECK(q3.coeffs[1] == 0.0);
  CHECK_THROWS_AS(make_q({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_q({-0.1}), std::invalid_argument);

  // Scaling a sharp Q up by 1 + 1e-6 breaks the constraint.
  for (const auto& q : {q1, q2, make_q({0.3, 0.5})}) {
    auto bigger = q.coeffs;
    for (auto& c : bigger) c *= 1 + 1e-6;
    CHECK(make_q_from(bigger).constraint_residual() > 0.0);
    CHECK(make_q_from(bigger).flag == ConstraintFlag::none);
    auto smaller = q.coeffs;
    for (auto& c : smaller) c *= 1 - 1e-6;
    CHECK(make_q_from(smaller).flag == ConstraintFlag::admissible);
  }
  CHECK(q1.evaluate(0.5) == doctest::Approx(4.0 / 9.0));
}

TEST_CASE("P polynomials") {
  const auto p = make_p(1.0, 2);
  CHECK(p.coeffs[0] == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(p.coeffs[1] == doctest::Approx(16.0 / 81.0).epsilon(1e-15));
  CHECK(make_p(0.5, 1).coeffs[0] == doctest::Approx(9.0 / 16.0).epsilon(1e-15));
  CHECK(make_p(0.7, 0).coeffs.empty());
  CHECK(make_p(0.7, 0).evaluate(0.3) == 0.0);
  CHECK_THROWS_AS(make_p(0.0, 1), std::invalid_argument);
}

TEST_CASE("direct evaluations") {
  const double r = 1.0 / 3.0;
  CHECK(thm_fr(extremal_fa({0.5, 0.0}, 64), r).value == doctest::Approx(0.8).epsilon(1e-14));
  const auto v = thm_fr(extremal_fa({0.99, 0.0}, 256), 0.34);
  CHECK(v.verdict == Verdict::violated);
  CHECK_FALSE(v.in_hypothesis);
  CHECK(thm_q_corrected(kIdentity, r, 0.0, make_q({})).value ==
        doctest::Approx(1.0 / 3.0 + (8.0 / 9.0) / 9.0).epsilon(1e-15));
  CHECK(thm_p_corrected(kIdentity, r, 1.0, 1).value == doctest::Approx(1.0 / 3.0 + (4.0 / 9.0) / 9.0).epsilon(1e-15));
  CHECK(thm_coeff_refined(kIdentity, r, 1.0).value == doctest::Approx(1.0 / 3.0 + (5.0 / 3.0) / 9.0).epsilon(1e-15));

  const auto half_z = PowerSeries::polynomial({{0, 0}, {0.5, 0}});
  HarmonicPair linear{half_z, half_z, 0.5, BlaschkeSpec{}, BlaschkeSpec{}, 0.0};
  CHECK(thm_harmonic_sum(linear, r, 0.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(thm_harmonic_quad(linear, r, 0.0).value == doctest::Approx(r / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("unimodular constants give equality") {
  const auto c = PowerSeries::constant(std::polar(1.0, 0.7));
  for (double g : {0.0, 0.5}) {
    for (double r : {0.0, 0.2, 0.42857142857142855, 0.9}) {
      for (const auto& rep : all_analytic(c, r, g)) {
        CHECK(std::abs(rep.value - 1.0) <= 1e-15);
        CHECK(rep.verdict == Verdict::holds);
      }
    }
  }
  CHECK(thm_fr_sq_a0(c, 0.5).value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("random pull-backs hold strictly at the critical radius") {
  for (double g : {0.0, 0.5}) {
    const double r = fournier_ruscheweyh_radius(g);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const auto spec = random_blaschke(seed, 1 + seed % 8);
      const auto f = spec.pull_back(OmegaGamma(g), 256);
      for (const auto& rep : all_analytic(f, r, g)) {
        CHECK(rep.in_hypothesis);
        CHECK(rep.value < 1.0 - 1e-9);
      }
    }
  }
}

TEST_CASE("functionals are nondecreasing in r") {
  const auto f = random_blaschke(5, 4).pull_back(OmegaGamma(0.25), 256);
  std::vector<double> prev(6, -1.0);
  for (int k = 0; k <= 200; ++k) {
    const double r = 0.95 * k / 200;
    const auto reps = all_analytic(f, r, 0.25);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      CHECK(reps[i].value >= prev[i]);
      prev[i] = reps[i].value;
    }
  }
}

TEST_CASE("beta = 0 reproduces the plain majorant bit for bit") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto f = random_blaschke(seed, seed % 9).pull_back(OmegaGamma(0.3), 200);
    for (double r : {0.1, 0.3, 0.4}) {
      const auto a = thm_fr(f, r, 0.3);
      const auto b = thm_beta_refined(f, r, 0.0, 1.0 / 1.3);
      CHECK(a.value == b.value);
      CHECK(a.err == b.err);
    }
  }
}

TEST_CASE("beta above 1/(2 lambda) admits violations inside the stated range") {
  // |a0| + sum (C_n + beta C_n^2) r^n for f_a on the disk, closed form.
  const auto closed = [](double a, double beta, double r) {
    const double k = (1 - a * a) / a;
    return a + k * a * r / (1 - a * r) + beta * k * k * a * a * r / (1 - a * a * r);
  };
  for (double a : {0.5, 0.9}) {
    const auto rep = thm_beta_refined(extremal_fa({a, 0.0}, 256), 1.0 / 3.0, 1.0, 1.0);
    CHECK(rep.value == doctest::Approx(closed(a, 1.0, 1.0 / 3.0)).epsilon(1e-13));
    CHECK(rep.in_hypothesis);
    CHECK(rep.verdict == Verdict::violated);
  }
  CHECK(closed(0.5, 1.0, 1.0 / 3.0) > 1.004);
  // Up to beta = 1/(2 lambda) the same family stays below 1.
  for (double a = 0.05; a < 1.0; a += 0.05) {
    CHECK(thm_beta_refined(extremal_fa({a, 0.0}, 256), 1.0 / 3.0, 0.5, 1.0).value <= 1.0);
  }
  CHECK_FALSE(thm_beta_refined(kIdentity, 0.3, 1.5, 1.0).in_hypothesis);
}

TEST_CASE("harmonic quadratic mean never exceeds the sum") {
  for (double g : {0.0, 0.25}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto p = random_harmonic_pair(seed, g, 128);
      const double r = fournier_ruscheweyh_radius(g);
      const auto s = thm_harmonic_sum(p, r, g);
      const auto q = thm_harmonic_quad(p, r, g);
      CHECK(q.value <= s.value);
      CHECK(s.verdict == Verdict::holds);
    }
  }
  // g = 0 reduces both to the majorant.
  const auto f = extremal_fa({0.6, 0.2}, 128);
  const auto p = make_harmonic_pair(1.0, BlaschkeSpec{{Complex{0.6, 0}}, 0, 1}, BlaschkeSpec{{}, 0, 1}, 0.2, 128);
  CHECK(thm_harmonic_quad(p, 0.3, 0.2).value == doctest::Approx(thm_fr(f, 0.3, 0.2).value).epsilon(1e-14));
  CHECK(thm_harmonic_sum(p, 0.3, 0.2).value == doctest::Approx(thm_fr(f, 0.3, 0.2).value).epsilon(1e-14));
}

TEST_CASE("coefficient lemma on pull-backs") {
  for (double g : {0.0, 0.5}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto f = random_blaschke(seed, seed % 9).pull_back(OmegaGamma(g), 64);
      const auto rep = lemma21_report(f, g);
      CHECK(rep.value <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("report serialization") {
  const auto rep = thm_p_corrected(kIdentity, 0.25, 1.0, 2);
  const auto row = to_csv_row(rep);
  CHECK(std::count(row.begin(), row.end(), ',') == 10);
  CHECK(row.rfind("p_corrected,,1,,2,,,0.25,", 0) == 0);
  CHECK(row.ends_with(",holds"));
  const auto j = to_json(rep);
  CHECK(j["functional_id"] == "p_corrected");
  CHECK(j["gamma"].is_null());
  CHECK(j["m"] == 2);
  CHECK(j["value"].get<double>() == rep.value);
}

TEST_CASE("gadget A") {
  using gadgets::A;
  CHECK(A(0.0) == 3.0 / 8.0);
  CHECK(A(1.0) == 0.0);
  double prev = A(0.0);
  for (int i = 1; i < 1000; ++i) {
    const double v = A(i / 1000.0);
    CHECK(v <= prev);
    prev = v;
  }
  CHECK_THROWS_AS(A(1.1), std::domain_error);
}

TEST_CASE("gadgets J and F_m for sharp Q") {
  for (double g : {0.0, 0.5}) {
    for (const auto& q : {make_q({}), make_q({0.0}), make_q({0.4})}) {
      CHECK(gadgets::J(1.0, g, q.coeffs) == doctest::Approx(0.0));
      double prev = gadgets::J(0.0, g, q.coeffs);
      for (int i = 1; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double v = gadgets::J(x, g, q.coeffs);
        CHECK(v >= prev - 1e-15);
        CHECK(v <= 1e-15);
        prev = v;
      }
      for (double x : {0.1, 0.5, 0.9}) {
        const double h = 1e-6;
        const double fd = (gadgets::J(x + h, g, q.coeffs) - gadgets::J(x - h, g, q.coeffs)) / (2 * h);
        CHECK(gadgets::J_prime(x, g, q.coeffs) == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("gadget J1 against exact integers") {
  for (int m = 1; m <= 3; ++m) {
    CHECK(gadgets::J1(0.0, m) == static_cast<double>(oracle::j1_at_zero(m)));
    CHECK(gadgets::J1(1.0, m) == 0.0);
    double prev = gadgets::J1(0.0, m);
    for (int i = 1; i <= 1000; ++i) {
      const double v = gadgets::J1(i / 1000.0, m);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
    for (double x : {0.2, 0.7}) {
      const double h = 1e-6;
      const double fd = (gadgets::J1(x + h, m) - gadgets::J1(x - h, m)) / (2 * h);
      CHECK(gadgets::J1_prime(x, m) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  // (13/30) 16^m + 1/15, e.g. 7 for m = 1.
  CHECK(oracle::j1_at_zero(1) == 7);
  CHECK_THROWS_AS(gadgets::J1(0.5, 0), std::invalid_argument);
}

TEST_CASE("gadget F1 monotonicity threshold") {
  // Nonincreasing exactly when lambda * beta <= 1/4.
  for (double lam : {1.0, 2.0 / 3.0}) {
    const double beta = 0.25 / lam;
    double prev = gadgets::F1(0.0, lam, beta);
    for (int i = 1; i <= 1000; ++i) {
      const double v = gadgets::F1(i / 1000.0, lam, beta);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
    CHECK(gadgets::F1_prime(1.0, lam, 1.0 / lam) > 0.0);
    for (double x : {0.3, 0.8}) {
      const double h = 1e-6;
      const double fd = (gadgets::F1(x + h, lam, 0.7) - gadgets::F1(x - h, lam, 0.7)) / (2 * h);
      CHECK(gadgets::F1_prime(x, lam, 0.7) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("gadget F2") {
  CHECK(std::abs(gadgets::F2(0.0) - 7.0 / 12.0) <= 1e-12);
  CHECK(std::abs(gadgets::F2(1.0)) <= 1e-12);
  double prev = gadgets::F2(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double v = gadgets::F2(i / 1000.0);
    CHECK(v <= prev);
    prev = v;
  }
  for (double x : {0.1, 0.5, 0.95}) {
    const double h = 1e-6;
    const double fd = (gadgets::F2(x + h) - gadgets::F2(x - h)) / (2 * h);
    CHECK(gadgets::F2_prime(x) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("gadget G_m") {
  const double rho = 0.4;
  const double u = rho / (1 - rho * rho);
  CHECK(gadgets::Gm(rho, 0.3, {2.0}) == doctest::Approx(u * u).epsilon(1e-15));
  const double w = 1 - 0.09;
  CHECK(gadgets::Gm(rho, 0.3, {1.0, 2.0}) == doctest::Approx(0.5 * u * u / (w * w) + std::pow(u, 4)).epsilon(1e-15));
  CHECK_THROWS_AS(gadgets::Gm(1.0, 0.0, {1.0}), std::domain_error);
  CHECK_THROWS_AS(gadgets::Gm(0.5, 0.0, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("Phi_1 agrees with the Q-corrected sum of the extremal family") {
  for (double g : {0.0, 0.25, 0.5}) {
    for (const auto& q : {make_q({}), make_q({0.0})}) {
      for (double a : {std::max(g, 0.3), 0.8, 0.99}) {
        for (double r : {0.2, 0.4, 0.6}) {
          const auto rep = thm_q_corrected(extremal_fa({a, g}, 512), r, g, q);
          const double phi = gadgets::Phi1(r, a, g, q.coeffs);
          CHECK(1.0 - (1.0 - a) * phi == doctest::Approx(rep.value + rep.err).epsilon(1e-12));
        }
      }
    }
  }
  CHECK_THROWS_AS(gadgets::Phi1(0.3, 0.2, 0.5, {1.0}), std::domain_error);
}

TEST_CASE("gadget dispatch rejects out-of-interval arguments") {
  gadgets::Params p;
  p.c = {8.0 / 9.0};
  CHECK(gadgets::evaluate(gadgets::parse_name("F2"), 0.0, p) == gadgets::F2(0.0));
  CHECK_THROWS_AS(gadgets::evaluate(gadgets::Name::J, -0.1, p), std::domain_error);
  CHECK_THROWS_AS(gadgets::evaluate(gadgets::Name::F1, 1.5, p), std::domain_error);
  CHECK_THROWS_AS(gadgets::parse_name("Z"), std::invalid_argument);
  p.c.clear();
  CHECK_THROWS_AS(gadgets::evaluate(gadgets::Name::Fm, 0.5, p), std::invalid_argument);
}
