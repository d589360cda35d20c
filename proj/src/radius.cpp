#include "bohrlab/radius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bohrlab/domains.hpp"

namespace bohrlab {

namespace {

constexpr double kInvPhi = 0.6180339887498949;
// Error bars cover truncation, not floating-point rounding of the sums; a
// witness has to clear 1 by more than the rounding can account for.
constexpr double kRoundingGuard = 1e-12;

bool uses_lambda(FunctionalId id) {
  return id == FunctionalId::p_corrected || id == FunctionalId::beta_refined ||
         id == FunctionalId::coeff_refined;
}

bool disk_only(FunctionalId id) {
  return id == FunctionalId::fr_sq_a0 || id == FunctionalId::fr_a0_zero;
}

// Maximize g over [lo, hi] by golden-section search; returns the argmax.
template <class G>
double golden_max(G&& g, double lo, double hi, double tol) {
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double g1 = g(x1);
  double g2 = g(x2);
  while (hi - lo > tol) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + kInvPhi * (hi - lo);
      g2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - kInvPhi * (hi - lo);
      g1 = g(x1);
    }
  }
  return g1 > g2 ? x1 : x2;
}

}  // namespace

void FunctionalParams::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
  if (lambda && !(*lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  if (disk_only(id) && gamma != 0.0) {
    throw std::invalid_argument(std::string(to_string(id)) + " is defined on the unit disk only (gamma = 0)");
  }
  if (id == FunctionalId::q_corrected && m < 1 && q_coeffs.empty()) {
    throw std::invalid_argument("Q needs degree m >= 1");
  }
  if (id == FunctionalId::p_corrected && m < 0) throw std::invalid_argument("P needs m >= 0");
}

double FunctionalParams::effective_lambda() const {
  return lambda ? *lambda : 1.0 / (1.0 + gamma);
}

CorrectionPolynomial FunctionalParams::q() const {
  if (!q_coeffs.empty()) return make_q_from(q_coeffs);
  return make_q(std::vector<double>(std::max(m, 1) - 1, 0.0));
}

double FunctionalParams::stated_radius() const {
  switch (id) {
    case FunctionalId::lemma21:
      throw std::invalid_argument("lemma21 has no radius");
    case FunctionalId::fr_sq_a0:
      return 0.5;
    case FunctionalId::fr_a0_zero:
      return std::numbers::sqrt2 / 2.0;
    case FunctionalId::p_corrected:
    case FunctionalId::beta_refined:
    case FunctionalId::coeff_refined:
      return 1.0 / (1.0 + 2.0 * effective_lambda());
    default:
      return fournier_ruscheweyh_radius(gamma);
  }
}

double FunctionalParams::family_gamma() const {
  if (uses_lambda(id) && lambda) {
    if (!(*lambda > 0.5 && *lambda <= 1.0)) {
      throw std::invalid_argument("extremal family needs lambda in (1/2, 1]");
    }
    return 1.0 / *lambda - 1.0;
  }
  return gamma;
}

ReportParams FunctionalParams::report_params() const {
  ReportParams r;
  r.gamma = gamma;
  if (uses_lambda(id)) r.lambda = effective_lambda();
  if (id == FunctionalId::beta_refined) r.beta = beta;
  if (id == FunctionalId::q_corrected || id == FunctionalId::p_corrected) r.m = m;
  return r;
}

BohrReport evaluate(const FunctionalParams& p, const PowerSeries& f, double r) {
  switch (p.id) {
    case FunctionalId::lemma21:
      return lemma21_report(f, p.gamma, std::min(30, f.order()));
    case FunctionalId::fr:
      return thm_fr(f, r, p.gamma);
    case FunctionalId::fr_sq_a0:
      return thm_fr_sq_a0(f, r);
    case FunctionalId::fr_a0_zero:
      return thm_fr_a0_zero(f, r);
    case FunctionalId::q_corrected:
      return thm_q_corrected(f, r, p.gamma, p.q());
    case FunctionalId::p_corrected:
      return thm_p_corrected(f, r, p.effective_lambda(), p.m);
    case FunctionalId::beta_refined:
      return thm_beta_refined(f, r, p.beta, p.effective_lambda());
    case FunctionalId::coeff_refined:
      return thm_coeff_refined(f, r, p.effective_lambda());
    case FunctionalId::harmonic_sum:
    case FunctionalId::harmonic_quad:
      break;
  }
  throw std::invalid_argument(std::string(to_string(p.id)) + " needs a harmonic pair");
}

BohrReport evaluate(const FunctionalParams& p, const HarmonicPair& pair, double r) {
  if (p.id == FunctionalId::harmonic_sum) return thm_harmonic_sum(pair, r, p.gamma);
  if (p.id == FunctionalId::harmonic_quad) return thm_harmonic_quad(pair, r, p.gamma);
  throw std::invalid_argument(std::string(to_string(p.id)) + " is not a harmonic functional");
}

BohrReport family_report(const FunctionalParams& p, double a, double r, int order) {
  BohrReport rep;
  if (is_harmonic(p.id)) {
    const BlaschkeSpec h{{Complex{a, 0.0}}, 0.0, 1.0};
    const BlaschkeSpec g{{Complex{p.gamma, 0.0}}, 0.0, 1.0};
    rep = evaluate(p, make_harmonic_pair(1.0, h, g, p.gamma, order), r);
  } else if (p.id == FunctionalId::fr_a0_zero) {
    rep = evaluate(p, times_z(extremal_fa({a, 0.0}, order)), r);
  } else if (p.id == FunctionalId::lemma21) {
    throw std::invalid_argument("lemma21 has no extremal family");
  } else {
    rep = evaluate(p, extremal_fa({a, p.family_gamma()}, order), r);
  }
  rep.params.a = a;
  return rep;
}

RadiusResult critical_radius(const std::function<Certified(double)>& F, double tol, double r_max) {
  if (!(tol > 0.0)) throw std::invalid_argument("critical_radius: tol must be positive");
  const auto upper = [&](double r) {
    const auto c = F(r);
    return c.value + c.err;
  };
  if (upper(r_max) <= 1.0) {
    throw NoCrossingError("no crossing below " + std::to_string(r_max));
  }
  if (upper(0.0) > 1.0) throw NoCrossingError("functional already exceeds 1 at r = 0");
  RadiusResult res;
  double lo = 0.0;
  double hi = r_max;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (upper(mid) <= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++res.iterations;
  }
  res.lo = lo;
  res.hi = hi;
  res.r_star = 0.5 * (lo + hi);
  const auto at_hi = F(hi);
  res.certified = at_hi.value - at_hi.err > 1.0;
  return res;
}

FamilyRadius family_radius(const FunctionalParams& p, const std::vector<double>& a_sweep, double tol) {
  p.validate();
  const auto radius_at = [&](double a) {
    return critical_radius(
               [&](double r) {
                 const auto rep = family_report(p, a, r);
                 return Certified{rep.value, rep.err};
               },
               tol)
        .r_star;
  };
  FamilyRadius out;
  if (p.id == FunctionalId::fr_a0_zero) {
    // Interior optimum: minimize the crossing over a rather than sending a to 1.
    double best_a = 0.05;
    double best_r = radius_at(best_a);
    for (int k = 2; k <= 19; ++k) {
      const double a = 0.05 * k;
      const double r = radius_at(a);
      if (r < best_r) {
        best_r = r;
        best_a = a;
      }
    }
    const double a = golden_max([&](double x) { return -radius_at(x); }, std::max(0.01, best_a - 0.05),
                                std::min(0.99, best_a + 0.05), 1e-6);
    out.a_values = {a};
    out.radii = {radius_at(a)};
    out.r_star = out.radii.front();
    return out;
  }
  if (a_sweep.empty()) throw std::invalid_argument("family_radius: empty sweep");
  for (std::size_t k = 0; k < a_sweep.size(); ++k) {
    const double a = a_sweep[k];
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("family_radius: sweep values must lie in (0, 1)");
    if (k > 0 && !(a > a_sweep[k - 1])) throw std::invalid_argument("family_radius: sweep must increase");
    double r = 0.0;
    try {
      r = radius_at(a);
    } catch (const NoCrossingError&) {
      // Members far from a = 1 may stay below 1 up to the cap; only the
      // last member is required to cross.
      if (k + 1 == a_sweep.size()) throw;
      continue;
    }
    if (!out.radii.empty() && r > out.radii.back() + tol) {
      throw NonMonotoneSweepError("family_radius: critical radius increased along the sweep at a = " +
                                  std::to_string(a));
    }
    out.a_values.push_back(a);
    out.radii.push_back(r);
  }
  out.r_star = out.radii.back();
  return out;
}

std::optional<Witness> sharpness_witness(const FunctionalParams& p, double r, int order) {
  p.validate();
  for (int attempt = 0; attempt < 2; ++attempt, order *= 2) {
    const auto margin = [&](double a) {
      const auto rep = family_report(p, a, r, order);
      return rep.value - rep.err - 1.0 - kRoundingGuard;
    };
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
    for (int s = 2; s <= 7; ++s) grid.push_back(1.0 - std::pow(10.0, -s));
    std::sort(grid.begin(), grid.end());

    std::size_t best = 0;
    double best_margin = margin(grid[0]);
    for (std::size_t k = 1; k < grid.size(); ++k) {
      const double mk = margin(grid[k]);
      if (mk > best_margin) {
        best_margin = mk;
        best = k;
      }
    }
    const double lo = best == 0 ? grid[0] * 0.5 : grid[best - 1];
    const double hi = best + 1 == grid.size() ? 0.5 * (1.0 + grid.back()) : grid[best + 1];
    double a = golden_max(margin, lo, hi, 1e-9 * (hi - lo) + 1e-12);
    if (margin(a) < best_margin) a = grid[best];
    auto rep = family_report(p, a, r, order);
    if (rep.value - rep.err > 1.0 + kRoundingGuard) return Witness{a, rep, order};
  }
  return std::nullopt;
}

}  // namespace bohrlab
