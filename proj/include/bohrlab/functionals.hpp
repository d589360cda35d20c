#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bohrlab/families.hpp"
#include "bohrlab/series.hpp"

namespace bohrlab {

enum class FunctionalId {
  lemma21,         // |a0|^2 + (1+gamma) max_{1<=n<=30} |a_n|
  fr,              // sum |a_n| r^n
  fr_sq_a0,        // |a0|^2 + sum_{n>=1} |a_n| r^n
  fr_a0_zero,      // sum |a_n| r^n restricted to a0 = 0
  q_corrected,     // sum |a_n| r^n + Q(S_{r(1-gamma)}/pi)
  p_corrected,     // sum |a_n| r^n + P(S_r/pi)
  beta_refined,    // |a0| + sum (|a_n| + beta |a_n|^2) r^n
  coeff_refined,   // sum |a_n| r^n + (...) sum |a_n|^2 r^{2n}
  harmonic_sum,    // |a0| + sum (|a_n| + |b_n|) r^n
  harmonic_quad,   // sqrt(|a0|^2+|b0|^2) + sum sqrt(|a_n|^2+|b_n|^2) r^n
};

std::string_view to_string(FunctionalId id);
/// Accepts both "fr" and "thm_fr" spellings.
FunctionalId parse_functional_id(std::string_view name);
bool is_harmonic(FunctionalId id);

enum class Verdict { holds, violated, inconclusive };
std::string_view to_string(Verdict v);

/// holds iff value + err <= 1, violated iff value - err > 1.
Verdict classify(double value, double err);

enum class PolynomialKind { Q, P };
enum class ConstraintFlag { sharp, admissible, none };

/// Q(w) = c_1 w + ... + c_m w^m or P(w) = k_1 w + ... + k_m w^m.
struct CorrectionPolynomial {
  PolynomialKind kind = PolynomialKind::Q;
  std::vector<double> coeffs;
  std::optional<double> lambda;
  ConstraintFlag flag = ConstraintFlag::none;

  int degree() const { return static_cast<int>(coeffs.size()); }
  double evaluate(double w) const;
  /// 8 c_1 (3/8)^2 + 24 c_2 (3/8)^4 + ... + 8(2m-1) c_m (3/8)^{2m} - 1.
  double constraint_residual() const;
};

/// Solve for c_m so that the Q constraint holds with equality. A prefix whose
/// partial sum already reaches the constraint (to 1e-12) yields c_m = 0; one
/// that exceeds it is rejected.
CorrectionPolynomial make_q(const std::vector<double>& c_prefix);
/// Use the given coefficients as-is; flagged admissible when the constraint
/// holds as an inequality.
CorrectionPolynomial make_q_from(const std::vector<double>& coeffs);
/// k_j = ((1 + lambda)/(1 + 2 lambda))^{2j}, j = 1..m.
CorrectionPolynomial make_p(double lambda, int m);

struct ReportParams {
  std::optional<double> gamma;
  std::optional<double> lambda;
  std::optional<double> beta;
  std::optional<int> m;
  std::optional<double> a;
  std::optional<std::uint64_t> seed;
  std::vector<double> poly;
};

struct BohrReport {
  FunctionalId id = FunctionalId::fr;
  double value = 0.0;
  double err = 0.0;
  double r = 0.0;
  ReportParams params;
  Verdict verdict = Verdict::inconclusive;
  /// False when the parameters or radius lie outside the theorem's hypotheses.
  bool in_hypothesis = true;

  double slack() const { return 1.0 - value - err; }
};

BohrReport make_report(FunctionalId id, Certified c, double r, ReportParams params,
                       bool in_hypothesis);

/// Lemma on Omega_gamma: |a_n| <= (1 - |a0|^2)/(1 + gamma), checked for
/// n = 1..n_max as |a0|^2 + (1+gamma) max |a_n| <= 1.
BohrReport lemma21_report(const PowerSeries& f, double gamma, int n_max = 30);

BohrReport thm_fr(const PowerSeries& f, double r, double gamma = 0.0);
BohrReport thm_fr_sq_a0(const PowerSeries& f, double r);
BohrReport thm_fr_a0_zero(const PowerSeries& f, double r);
BohrReport thm_q_corrected(const PowerSeries& f, double r, double gamma,
                           const CorrectionPolynomial& q);
BohrReport thm_p_corrected(const PowerSeries& f, double r, double lambda, int m);
BohrReport thm_beta_refined(const PowerSeries& f, double r, double beta, double lambda);
BohrReport thm_coeff_refined(const PowerSeries& f, double r, double lambda);
BohrReport thm_harmonic_sum(const HarmonicPair& p, double r, double gamma);
BohrReport thm_harmonic_quad(const HarmonicPair& p, double r, double gamma);

/// CSV column order shared by every report stream.
inline constexpr std::string_view kReportCsvHeader =
    "functional_id,gamma,lambda,beta,m,a,seed,r,value,err,verdict";
std::string to_csv_row(const BohrReport& r);
nlohmann::json to_json(const BohrReport& r);

/// Scalar functions from the proofs, each evaluated from its defining formula.
namespace gadgets {

enum class Name { A, Fm, J, J1, F1, F2, Gm, Phi1 };

std::string_view to_string(Name n);
Name parse_name(std::string_view s);

struct Params {
  int m = 1;
  double lambda = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  double a = 0.5;
  /// |alpha_0| for G_m.
  double x = 0.0;
  /// c_1..c_m for Fm, J, Gm, Phi1.
  std::vector<double> c;
};

/// A(gamma) = (3+gamma)(1-gamma^2) / ((3+gamma)^2 - (1-gamma^2)^2), gamma in [0,1].
double A(double gamma);
/// F_m(x) = sum_j c_j (1-x^2)^{2j-1} A(gamma)^{2j}.
double Fm(double x, double gamma, const std::vector<double>& c);
/// J(x) = 1 + 2 F_m(x) - 2/(1+x).
double J(double x, double gamma, const std::vector<double>& c);
double J_prime(double x, double gamma, const std::vector<double>& c);
/// J_1(x) = 16^m/(1+x) - 16^m/2 - sum_j 16^{m-j} (1-x^2)^{2j-1}.
double J1(double x, int m);
double J1_prime(double x, int m);
/// F_1(x) = 2/(1+x) - 1 - lambda beta (1-x^2).
double F1(double x, double lambda, double beta);
double F1_prime(double x, double lambda, double beta);
/// F_2(x) = 2/(1+x) - 1 - (1/2)(1/(2(1+x)) + 1/3)(1-x)^2 (1+x).
double F2(double x);
double F2_prime(double x);
/// G_m(rho) = sum_{j<m} (c_j/c_m) (rho/(1-rho^2))^{2j} (1-x^2)^{-(2m-2j)} + (rho/(1-rho^2))^{2m}.
double Gm(double rho, double x, const std::vector<double>& c);
/// Phi_1^gamma(r), defined by 1 - (1-a) Phi = Q-corrected sum of f_a at r.
double Phi1(double r, double a, double gamma, const std::vector<double>& c);

/// Dispatch on name; throws std::domain_error outside the gadget's interval.
double evaluate(Name n, double x, const Params& p);

}  // namespace gadgets

}  // namespace bohrlab
