#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohrlab/families.hpp"
#include "bohrlab/functionals.hpp"
#include "bohrlab/series.hpp"

namespace bohrlab {

/// Everything needed to evaluate one functional apart from the function itself.
struct FunctionalParams {
  FunctionalId id = FunctionalId::fr;
  double gamma = 0.0;
  std::optional<double> lambda;
  double beta = 0.0;
  int m = 1;
  /// Explicit Q coefficients; empty means the sharp Q with c_1 = ... = c_{m-1} = 0.
  std::vector<double> q_coeffs;

  void validate() const;
  double effective_lambda() const;
  CorrectionPolynomial q() const;
  /// Radius at which the theorem is stated.
  double stated_radius() const;
  /// gamma of the domain the extremal family lives on. A lambda override in
  /// (1/2, 1] is realized by Omega_gamma with gamma = 1/lambda - 1.
  double family_gamma() const;
  ReportParams report_params() const;
};

BohrReport evaluate(const FunctionalParams& p, const PowerSeries& f, double r);
BohrReport evaluate(const FunctionalParams& p, const HarmonicPair& pair, double r);

/// Member a of the extremal family for the functional: f_a on Omega_gamma,
/// z f_a on the disk for the zero-constant-term variant, and (f_a, 0) for the
/// harmonic functionals.
BohrReport family_report(const FunctionalParams& p, double a, double r, int order = 256);

class NoCrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonMonotoneSweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadiusResult {
  double r_star = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
  /// True when the error bars separate the endpoints: value + err <= 1 at lo
  /// and value - err > 1 at hi.
  bool certified = false;
};

/// Bisection for the crossing of 1 by a functional that increases in r.
/// Decisions use the upper bound value + err. Throws NoCrossingError when the
/// functional stays below 1 up to r_max.
RadiusResult critical_radius(const std::function<Certified(double)>& F, double tol,
                             double r_max = 0.999);

inline const std::vector<double> kDefaultSweep{0.9, 0.99, 0.999, 0.9999};

struct FamilyRadius {
  double r_star = 0.0;
  /// Critical radius for each member of the sweep (a single entry for the
  /// zero-constant-term variant, which is minimized over a instead).
  std::vector<double> radii;
  std::vector<double> a_values;
};

/// Critical radius of the extremal family along the sweep. The radii must
/// decrease; the last one is returned. Members that never reach 1 below the
/// bisection cap are skipped, except the last.
FamilyRadius family_radius(const FunctionalParams& p, const std::vector<double>& a_sweep = kDefaultSweep,
                           double tol = 1e-6);

struct Witness {
  double a = 0.0;
  BohrReport report;
  int order = 0;
};

/// Search the extremal family for a member whose value exceeds 1 + err + 1e-12
/// at radius r. Grid plus golden-section refinement over a; retried once at
/// double the order before giving up.
std::optional<Witness> sharpness_witness(const FunctionalParams& p, double r, int order = 256);

}  // namespace bohrlab
