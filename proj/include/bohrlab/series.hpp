#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace bohrlab {

using Complex = std::complex<double>;

/// A real quantity together with an absolute error bound.
struct Certified {
  double value = 0.0;
  double err = 0.0;
};

struct CertifiedComplex {
  Complex value{};
  double err = 0.0;
};

enum class Provenance { exact, sampled, composed };

/// Bound on the omitted coefficients of a truncated series:
///
///   |a_n| <= cap * (n + 1)^weight_power * ratio^(n - N - 1)   for all n > N.
///
/// With ratio = 1 and weight_power = 0 this is the plain coefficient cap.
struct TailCertificate {
  double cap = 0.0;
  double ratio = 1.0;
  int weight_power = 0;
};

enum class TailKind { geometric, area_weighted };

/// Upper bound for the omitted part of one particular sum.
struct TailBound {
  double value = 0.0;
  double radius = 0.0;
  TailKind kind = TailKind::geometric;
};

class PowerSeries {
 public:
  /// `coeff_err`, when non-empty, bounds |stored a_n - true a_n| per index.
  PowerSeries(std::vector<Complex> coeffs, TailCertificate tail,
              Provenance provenance = Provenance::exact,
              std::vector<double> coeff_err = {});

  static PowerSeries constant(Complex c);
  /// Finite polynomial; the tail is identically zero.
  static PowerSeries polynomial(std::vector<Complex> coeffs);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex coeff(int n) const;
  double coeff_err(int n) const;
  bool has_coeff_err() const { return !coeff_err_.empty(); }
  const std::vector<double>& coeff_errs() const { return coeff_err_; }

  const TailCertificate& tail() const { return tail_; }
  double coeff_cap() const { return tail_.cap; }
  Provenance provenance() const { return provenance_; }

  /// Largest value |a_n| can take given the stored coefficient and its error.
  double abs_upper(int n) const { return std::abs(coeffs_[n]) + coeff_err(n); }

 private:
  std::vector<Complex> coeffs_;
  std::vector<double> coeff_err_;
  TailCertificate tail_;
  Provenance provenance_;
};

/// sum_{n>N} cap (n+1)^power ratio^(n-N-1) r^n, evaluated as a rigorous upper
/// bound. Returns +inf when ratio * r >= 1 and cap > 0.
double weighted_geometric_tail(double cap, int power, double ratio, double r,
                               int order);

/// Bound on sum_{n>N} |a_n| r^n.
TailBound tail_bound(const PowerSeries& f, double r);

/// Bound on sum_{n>N} |a_n|^2 r^{exponent*n} weighted by n when `area` is set.
double squared_tail(const PowerSeries& f, double r, int exponent, bool area);

/// f(z) with |true - value| <= err. Throws std::domain_error for |z| >= 1.
CertifiedComplex eval_at(const PowerSeries& f, Complex z);

/// M_f(r) = sum |a_n| r^n; the true value lies in [value, value + err] for
/// exact coefficients.
Certified majorant_sum(const PowerSeries& f, double r);

/// (1/pi) * integral over |z| < r of |f'|^2, i.e. sum n |a_n|^2 r^{2n}.
/// This counts multiplicity, so it dominates the area of the image.
Certified area_ratio(const PowerSeries& f, double r);

PowerSeries derivative(const PowerSeries& f);

/// Coefficients a_n s^n, i.e. the expansion of z -> f(s z).
PowerSeries rescale(const PowerSeries& f, double s);

/// z * f(z).
PowerSeries times_z(const PowerSeries& f);

PowerSeries scaled(const PowerSeries& f, Complex c);

struct RecenterOptions {
  double sigma = 0.5;
  /// Target for the coefficient error, measured on alpha_n (1 - |center|)^n.
  double error_target = 1e-10;
  int min_samples = 64;
  int max_samples = 1 << 16;
};

class RecenterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Taylor coefficients of f about `center`, recovered from samples on the
/// circle |w - center| = sigma (1 - |center|) by discrete Fourier inversion.
/// The sample count doubles until successive estimates agree to the target;
/// per-coefficient error estimates are attached to the result.
PowerSeries taylor_recenter(const PowerSeries& f, Complex center, int new_order,
                            const RecenterOptions& options = {});

}  // namespace bohrlab
