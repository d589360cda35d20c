#include "bohrlab/domains.hpp"

#include <cmath>
#include <string>

namespace bohrlab {

namespace {
constexpr double kGuardBand = 1e-12;
}

OmegaGamma::OmegaGamma(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("OmegaGamma: gamma must lie in [0, 1), got " +
                                std::to_string(gamma));
  }
}

bool OmegaGamma::contains(Complex z) const {
  return std::abs(z - center()) < radius() - kGuardBand;
}

DomainConstant DomainConstant::user_supplied(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("DomainConstant: lambda must be positive");
  }
  return DomainConstant{lambda, LambdaSource::user_supplied};
}

Complex to_disk(const OmegaGamma& d, Complex z) {
  if (!d.contains(z)) throw std::domain_error("to_disk: point is not in Omega_gamma");
  return (1.0 - d.gamma()) * z + d.gamma();
}

Complex from_disk(const OmegaGamma& d, Complex w) {
  return (w - d.gamma()) / (1.0 - d.gamma());
}

DomainConstant lambda_of(const OmegaGamma& d) {
  return DomainConstant{1.0 / (1.0 + d.gamma()), LambdaSource::omega_gamma_formula};
}

double fournier_ruscheweyh_radius(double gamma) { return (1.0 + gamma) / (3.0 + gamma); }

PowerSeries pull_back_schur(const PowerSeries& disk_function, const OmegaGamma& d, int order,
                            const RecenterOptions& options) {
  const double gamma = d.gamma();
  if (gamma == 0.0) {
    // Identity transport; keep the exact coefficients.
    std::vector<Complex> coeffs(order + 1, Complex{});
    std::vector<double> errs;
    if (disk_function.has_coeff_err()) errs.assign(order + 1, 0.0);
    const auto& t = disk_function.tail();
    for (int n = 0; n <= order; ++n) {
      if (n <= disk_function.order()) {
        coeffs[n] = disk_function.coeff(n);
        if (!errs.empty()) errs[n] = disk_function.coeff_err(n);
      } else {
        // Known only through the tail certificate of the input.
        if (errs.empty()) errs.assign(order + 1, 0.0);
        errs[n] = t.cap * std::pow(n + 1.0, t.weight_power) *
                  std::pow(t.ratio, n - disk_function.order() - 1);
      }
    }
    return PowerSeries(std::move(coeffs), TailCertificate{1.0, 1.0, 0}, Provenance::composed,
                       std::move(errs));
  }
  const auto recentered = taylor_recenter(disk_function, Complex{gamma, 0.0}, order, options);
  const auto local = rescale(recentered, 1.0 - gamma);
  std::vector<Complex> coeffs(local.coeffs().begin(), local.coeffs().end());
  return PowerSeries(std::move(coeffs), TailCertificate{1.0, 1.0, 0}, Provenance::composed,
                     local.coeff_errs());
}

}  // namespace bohrlab
