#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "bohrlab/domains.hpp"
#include "bohrlab/series.hpp"

namespace bohrlab {

/// Parameters of the extremal Moebius family
///   f_a = phi_a o phi_2,  phi_a(w) = (a - w)/(1 - a w),  phi_2(z) = (1-gamma) z + gamma,
/// which maps Omega_gamma univalently onto the unit disk.
struct ExtremalParams {
  double a;
  double gamma;

  void validate() const;
  double c0() const { return (a - gamma) / (1.0 - a * gamma); }
  /// Geometric decay ratio a(1-gamma)/(1-a gamma) of the coefficients.
  double decay() const { return a * (1.0 - gamma) / (1.0 - a * gamma); }
  /// C_n for n >= 1; the series is C_0 - sum C_n z^n.
  double c(int n) const;
};

/// f_a expanded about 0 to the given order, with an exact geometric tail.
PowerSeries extremal_fa(const ExtremalParams& p, int order);

/// scale * e^{i angle} * prod (zeta_k - w)/(1 - conj(zeta_k) w).
struct BlaschkeSpec {
  std::vector<Complex> zeros;
  double rotation_angle = 0.0;
  double scale = 1.0;

  void validate() const;
  Complex rotation() const { return std::polar(1.0, rotation_angle); }
  int degree() const { return static_cast<int>(zeros.size()); }

  Complex evaluate(Complex w) const;
  Complex derivative(Complex w) const;

  /// Taylor expansion about 0 on the unit disk.
  PowerSeries series(int order) const;
  /// Taylor expansion about 0 of w -> B((1-gamma) z + gamma), computed exactly
  /// by composing each factor with the affine map.
  PowerSeries pull_back(const OmegaGamma& d, int order) const;
};

/// Deterministic random Blaschke product: zeros uniform in |zeta| <= 0.9,
/// uniform rotation, scale uniform in [0.3, 1].
BlaschkeSpec random_blaschke(std::uint64_t seed, int degree);

struct SchurSample {
  BlaschkeSpec spec;
  PowerSeries series;
};

SchurSample random_schur(std::uint64_t seed, int degree, int order = 256);

/// h = t * (F o phi_2), g = (1-t) * (G o phi_2), so |h| + |g| <= 1 on Omega_gamma.
struct HarmonicPair {
  PowerSeries h;
  PowerSeries g;
  double t;
  BlaschkeSpec F;
  BlaschkeSpec G;
  double gamma;

  /// h and g evaluated through the closed-form witness, valid on all of
  /// Omega_gamma.
  Complex h_at(Complex z) const;
  Complex g_at(Complex z) const;
};

HarmonicPair make_harmonic_pair(double t, BlaschkeSpec F, BlaschkeSpec G, double gamma,
                                int order = 256);

/// Random admissible pair. G carries a zero at gamma so that g(0) = 0.
HarmonicPair harmonic_pair(std::uint64_t seed, double t, double gamma, int order = 256);

/// Like harmonic_pair, with t drawn from the seed as well.
HarmonicPair random_harmonic_pair(std::uint64_t seed, double gamma, int order = 256);

/// SplitMix64 mixing, used to derive independent per-sample seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

void to_json(nlohmann::json& j, const BlaschkeSpec& b);
void from_json(const nlohmann::json& j, BlaschkeSpec& b);
nlohmann::json harmonic_descriptor(const HarmonicPair& p);

}  // namespace bohrlab
