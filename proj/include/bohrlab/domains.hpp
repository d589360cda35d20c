#pragma once

#include "bohrlab/series.hpp"

namespace bohrlab {

/// The disk { |z + gamma/(1-gamma)| < 1/(1-gamma) }, 0 <= gamma < 1. It always
/// contains the unit disk and reduces to it at gamma = 0.
class OmegaGamma {
 public:
  explicit OmegaGamma(double gamma);

  double gamma() const { return gamma_; }
  Complex center() const { return Complex{-gamma_ / (1.0 - gamma_), 0.0}; }
  double radius() const { return 1.0 / (1.0 - gamma_); }

  /// Strict membership with a 1e-12 guard band at the boundary.
  bool contains(Complex z) const;

 private:
  double gamma_;
};

enum class LambdaSource { omega_gamma_formula, user_supplied };

struct DomainConstant {
  double lambda;
  LambdaSource source;

  static DomainConstant user_supplied(double lambda);
  /// The critical radius 1/(1 + 2 lambda).
  double bohr_radius() const { return 1.0 / (1.0 + 2.0 * lambda); }
};

/// Affine map (1-gamma) z + gamma from Omega_gamma onto the unit disk.
Complex to_disk(const OmegaGamma& d, Complex z);
/// Inverse of to_disk.
Complex from_disk(const OmegaGamma& d, Complex w);

DomainConstant lambda_of(const OmegaGamma& d);

/// (1 + gamma) / (3 + gamma).
double fournier_ruscheweyh_radius(double gamma);

/// Expansion about 0 of z -> F((1-gamma) z + gamma) for a Schur function F on
/// the unit disk. Goes through taylor_recenter at gamma followed by the
/// (1-gamma)^n rescaling, so the attainable order is limited by the sampling
/// options. The result is bounded by 1 on Omega_gamma, hence cap 1.
PowerSeries pull_back_schur(const PowerSeries& disk_function, const OmegaGamma& d, int order,
                            const RecenterOptions& options = {});

}  // namespace bohrlab
