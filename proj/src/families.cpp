#include "bohrlab/families.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace bohrlab {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// s <- s * (p + q z) / (d - e z), truncated to the length of s.
void multiply_moebius(std::vector<Complex>& s, Complex p, Complex q, Complex d, Complex e) {
  Complex prev_s{};
  Complex prev_u{};
  for (auto& coeff : s) {
    const Complex t = p * coeff + q * prev_s;
    prev_s = coeff;
    prev_u = (t + e * prev_u) / d;
    coeff = prev_u;
  }
}

}  // namespace

void ExtremalParams::validate() const {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("ExtremalParams: a must lie in (0, 1)");
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("ExtremalParams: gamma must lie in [0, 1)");
  }
}

double ExtremalParams::c(int n) const {
  const double k = (1.0 - a) * (1.0 + a) / (a * (1.0 - a * gamma));
  return k * std::pow(decay(), n);
}

PowerSeries extremal_fa(const ExtremalParams& p, int order) {
  p.validate();
  if (order < 1) throw std::invalid_argument("extremal_fa: order must be >= 1");
  std::vector<Complex> coeffs(order + 1);
  coeffs[0] = p.c0();
  for (int n = 1; n <= order; ++n) coeffs[n] = -p.c(n);
  // |C_n| = C_{N+1} q^{n-N-1} exactly for n > N.
  return PowerSeries(std::move(coeffs), TailCertificate{p.c(order + 1), p.decay(), 0});
}

void BlaschkeSpec::validate() const {
  for (const auto& z : zeros) {
    if (!(std::abs(z) < 1.0)) throw std::invalid_argument("BlaschkeSpec: zeros must satisfy |z| < 1");
  }
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw std::invalid_argument("BlaschkeSpec: scale must lie in (0, 1]");
  }
  if (!std::isfinite(rotation_angle)) throw std::invalid_argument("BlaschkeSpec: bad rotation");
}

Complex BlaschkeSpec::evaluate(Complex w) const {
  Complex v = scale * rotation();
  for (const auto& z : zeros) v *= (z - w) / (1.0 - std::conj(z) * w);
  return v;
}

Complex BlaschkeSpec::derivative(Complex w) const {
  Complex total{};
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    const Complex zi = zeros[i];
    const Complex den = 1.0 - std::conj(zi) * w;
    Complex term = (std::norm(zi) - 1.0) / (den * den);
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      if (j != i) term *= (zeros[j] - w) / (1.0 - std::conj(zeros[j]) * w);
    }
    total += term;
  }
  return scale * rotation() * total;
}

PowerSeries BlaschkeSpec::series(int order) const { return pull_back(OmegaGamma(0.0), order); }

PowerSeries BlaschkeSpec::pull_back(const OmegaGamma& d, int order) const {
  validate();
  if (order < 0) throw std::invalid_argument("BlaschkeSpec: negative order");
  const double gamma = d.gamma();
  std::vector<Complex> s(order + 1, Complex{});
  s[0] = scale * rotation();
  for (const auto& z : zeros) {
    const Complex zc = std::conj(z);
    multiply_moebius(s, z - gamma, Complex{-(1.0 - gamma), 0.0}, 1.0 - zc * gamma,
                     zc * (1.0 - gamma));
  }
  // Bounded by `scale` on Omega_gamma, which contains the unit disk.
  return PowerSeries(std::move(s), TailCertificate{scale, 1.0, 0}, Provenance::exact);
}

BlaschkeSpec random_blaschke(std::uint64_t seed, int degree) {
  if (degree < 0) throw std::invalid_argument("random_blaschke: negative degree");
  std::mt19937_64 rng(seed);
  BlaschkeSpec spec;
  spec.zeros.reserve(degree);
  for (int k = 0; k < degree; ++k) {
    const double modulus = 0.9 * std::sqrt(unit_uniform(rng));
    const double angle = 2.0 * std::numbers::pi * unit_uniform(rng);
    spec.zeros.push_back(std::polar(modulus, angle));
  }
  spec.rotation_angle = 2.0 * std::numbers::pi * unit_uniform(rng);
  spec.scale = 0.3 + 0.7 * unit_uniform(rng);
  return spec;
}

SchurSample random_schur(std::uint64_t seed, int degree, int order) {
  if (degree < 0 || degree > 8) throw std::invalid_argument("random_schur: degree must be in 0..8");
  auto spec = random_blaschke(seed, degree);
  auto series = spec.series(order);
  return SchurSample{std::move(spec), std::move(series)};
}

Complex HarmonicPair::h_at(Complex z) const {
  return t * F.evaluate((1.0 - gamma) * z + gamma);
}

Complex HarmonicPair::g_at(Complex z) const {
  return (1.0 - t) * G.evaluate((1.0 - gamma) * z + gamma);
}

HarmonicPair make_harmonic_pair(double t, BlaschkeSpec F, BlaschkeSpec G, double gamma, int order) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("harmonic_pair: t must lie in [0, 1]");
  const OmegaGamma d(gamma);
  auto h = scaled(F.pull_back(d, order), t);
  auto g = scaled(G.pull_back(d, order), 1.0 - t);
  return HarmonicPair{std::move(h), std::move(g), t, std::move(F), std::move(G), gamma};
}

HarmonicPair harmonic_pair(std::uint64_t seed, double t, double gamma, int order) {
  std::mt19937_64 rng(seed);
  const int deg_f = static_cast<int>(rng() % 9);
  const int deg_g = static_cast<int>(rng() % 8);
  auto F = random_blaschke(mix_seed(seed, 1), deg_f);
  auto G = random_blaschke(mix_seed(seed, 2), deg_g);
  G.zeros.insert(G.zeros.begin(), Complex{gamma, 0.0});
  return make_harmonic_pair(t, std::move(F), std::move(G), gamma, order);
}

HarmonicPair random_harmonic_pair(std::uint64_t seed, double gamma, int order) {
  std::mt19937_64 rng(mix_seed(seed, 3));
  const double t = unit_uniform(rng);
  return harmonic_pair(seed, t, gamma, order);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void to_json(nlohmann::json& j, const BlaschkeSpec& b) {
  auto zeros = nlohmann::json::array();
  for (const auto& z : b.zeros) zeros.push_back({z.real(), z.imag()});
  j = nlohmann::json{{"zeros", zeros}, {"rotation_angle", b.rotation_angle}, {"scale", b.scale}};
}

void from_json(const nlohmann::json& j, BlaschkeSpec& b) {
  b.zeros.clear();
  for (const auto& z : j.at("zeros")) b.zeros.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  b.rotation_angle = j.at("rotation_angle").get<double>();
  b.scale = j.at("scale").get<double>();
  b.validate();
}

nlohmann::json harmonic_descriptor(const HarmonicPair& p) {
  return nlohmann::json{{"kind", "harmonic"}, {"t", p.t}, {"gamma", p.gamma}, {"F", p.F}, {"G", p.G}};
}

}  // namespace bohrlab
