#include "bohrlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace bohrlab {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

void require_radius(double r, const char* what) {
  if (!(r >= 0.0) || !(r < 1.0)) {
    throw std::domain_error(std::string(what) + ": radius must lie in [0, 1), got " +
                            std::to_string(r));
  }
}

Complex pairwise_sum(std::span<const Complex> terms) {
  if (terms.size() <= 8) {
    Complex s{};
    for (const auto& t : terms) s += t;
    return s;
  }
  const auto half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace

PowerSeries::PowerSeries(std::vector<Complex> coeffs, TailCertificate tail,
                         Provenance provenance, std::vector<double> coeff_err)
    : coeffs_(std::move(coeffs)),
      coeff_err_(std::move(coeff_err)),
      tail_(tail),
      provenance_(provenance) {
  if (coeffs_.empty()) throw std::invalid_argument("PowerSeries: empty coefficient list");
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("PowerSeries: non-finite coefficient");
    }
  }
  if (!(tail_.cap >= 0.0) || !std::isfinite(tail_.cap)) {
    throw std::invalid_argument("PowerSeries: coefficient cap must be finite and >= 0");
  }
  if (!(tail_.ratio >= 0.0) || tail_.weight_power < 0) {
    throw std::invalid_argument("PowerSeries: invalid tail certificate");
  }
  if (!coeff_err_.empty()) {
    if (coeff_err_.size() != coeffs_.size()) {
      throw std::invalid_argument("PowerSeries: coeff_err length must equal order + 1");
    }
    for (double e : coeff_err_) {
      if (!(e >= 0.0)) throw std::invalid_argument("PowerSeries: negative coefficient error");
    }
  }
}

PowerSeries PowerSeries::constant(Complex c) { return polynomial({c}); }

PowerSeries PowerSeries::polynomial(std::vector<Complex> coeffs) {
  return PowerSeries(std::move(coeffs), TailCertificate{0.0, 1.0, 0}, Provenance::exact);
}

Complex PowerSeries::coeff(int n) const {
  if (n < 0 || n > order()) throw std::out_of_range("PowerSeries::coeff");
  return coeffs_[n];
}

double PowerSeries::coeff_err(int n) const {
  return coeff_err_.empty() ? 0.0 : coeff_err_[n];
}

double weighted_geometric_tail(double cap, int power, double ratio, double r, int order) {
  if (cap == 0.0 || r == 0.0) return 0.0;
  const double x = ratio * r;
  if (x >= 1.0) return std::numeric_limits<double>::infinity();
  const double lead = cap * std::pow(r, order + 1);
  if (lead == 0.0) return 0.0;
  if (power == 0) return lead / (1.0 - x);

  // sum_{k>=0} (k + N + 2)^p x^k; once the term ratio drops below one the
  // remainder is dominated by a geometric series.
  double sum = 0.0;
  double xk = 1.0;
  for (long k = 0;; ++k) {
    const double base = static_cast<double>(k + order + 2);
    const double term = std::pow(base, power) * xk;
    sum += term;
    const double rho = std::pow((base + 1.0) / base, power) * x;
    if (rho < 1.0) {
      const double rem = term * rho / (1.0 - rho);
      if (rem <= 1e-17 * sum || term == 0.0) return lead * (sum + rem);
    }
    xk *= x;
  }
}

TailBound tail_bound(const PowerSeries& f, double r) {
  const auto& t = f.tail();
  return TailBound{weighted_geometric_tail(t.cap, t.weight_power, t.ratio, r, f.order()), r,
                   t.weight_power == 0 ? TailKind::geometric : TailKind::area_weighted};
}

double squared_tail(const PowerSeries& f, double r, int exponent, bool area) {
  const auto& t = f.tail();
  return weighted_geometric_tail(t.cap * t.cap, 2 * t.weight_power + (area ? 1 : 0),
                                 t.ratio * t.ratio, std::pow(r, exponent), f.order());
}

CertifiedComplex eval_at(const PowerSeries& f, Complex z) {
  const double rho = std::abs(z);
  if (!(rho < 1.0)) {
    throw std::domain_error("eval_at: |z| must be < 1 (tail bound diverges)");
  }
  const auto c = f.coeffs();
  Complex value{};
  for (int n = f.order(); n >= 0; --n) value = value * z + c[n];

  double err = 0.0;
  if (f.has_coeff_err()) {
    double rn = 1.0;
    for (int n = 0; n <= f.order(); ++n) {
      err += f.coeff_err(n) * rn;
      rn *= rho;
    }
  }
  const double tail = tail_bound(f, rho).value;
  if (!std::isfinite(tail)) {
    throw std::domain_error("eval_at: tail certificate diverges at this |z|");
  }
  return {value, err + tail};
}

Certified majorant_sum(const PowerSeries& f, double r) {
  require_radius(r, "majorant_sum");
  const auto c = f.coeffs();
  double value = 0.0;
  double err = 0.0;
  double rn = 1.0;
  for (int n = 0; n <= f.order(); ++n) {
    value += std::abs(c[n]) * rn;
    err += f.coeff_err(n) * rn;
    rn *= r;
  }
  err += tail_bound(f, r).value;
  return {value, err};
}

Certified area_ratio(const PowerSeries& f, double r) {
  require_radius(r, "area_ratio");
  const auto c = f.coeffs();
  const double r2 = r * r;
  double value = 0.0;
  double err = 0.0;
  double r2n = 1.0;
  for (int n = 1; n <= f.order(); ++n) {
    r2n *= r2;
    const double m = std::abs(c[n]);
    const double d = f.coeff_err(n);
    value += n * m * m * r2n;
    err += n * (2.0 * m * d + d * d) * r2n;
  }
  err += squared_tail(f, r, 2, true);
  return {value, err};
}

PowerSeries derivative(const PowerSeries& f) {
  const int n_old = f.order();
  const auto& t = f.tail();
  const int n_new = std::max(n_old - 1, 0);

  std::vector<Complex> coeffs(n_new + 1, Complex{});
  std::vector<double> errs;
  if (f.has_coeff_err() || n_old == 0) errs.assign(n_new + 1, 0.0);
  for (int m = 0; m + 1 <= n_old; ++m) {
    coeffs[m] = static_cast<double>(m + 1) * f.coeff(m + 1);
    if (!errs.empty()) errs[m] = (m + 1) * f.coeff_err(m + 1);
  }
  if (n_old == 0) {
    // b_0 = a_1 lies in the tail of f.
    errs[0] = t.cap * std::pow(2.0, t.weight_power);
  }

  // |b_m| = (m+1)|a_{m+1}| <= cap (m+2)^{p+1} ratio^{m-N}; rewrite in the
  // canonical (m+1)^{p+1} ratio^{m-N'-1} form for m > N'.
  const double growth = static_cast<double>(n_new + 3) / (n_new + 2);
  const double cap = t.cap * std::pow(growth, t.weight_power + 1) *
                     std::pow(t.ratio, n_new + 1 - n_old);
  TailCertificate tail{cap, t.ratio, t.weight_power + 1};
  if (t.cap == 0.0) tail = TailCertificate{0.0, t.ratio, 0};
  if (t.cap == 0.0 && n_old == 0) errs.clear();
  return PowerSeries(std::move(coeffs), tail, f.provenance(), std::move(errs));
}

PowerSeries rescale(const PowerSeries& f, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("rescale: factor must be >= 0");
  std::vector<Complex> coeffs(f.coeffs().begin(), f.coeffs().end());
  std::vector<double> errs = f.coeff_errs();
  double sn = 1.0;
  for (int n = 0; n <= f.order(); ++n) {
    coeffs[n] *= sn;
    if (!errs.empty()) errs[n] *= sn;
    sn *= s;
  }
  const auto& t = f.tail();
  TailCertificate tail{t.cap * sn, t.ratio * s, t.weight_power};
  return PowerSeries(std::move(coeffs), tail, Provenance::composed, std::move(errs));
}

PowerSeries times_z(const PowerSeries& f) {
  std::vector<Complex> coeffs;
  coeffs.reserve(f.order() + 2);
  coeffs.push_back(Complex{});
  coeffs.insert(coeffs.end(), f.coeffs().begin(), f.coeffs().end());
  std::vector<double> errs;
  if (f.has_coeff_err()) {
    errs.push_back(0.0);
    errs.insert(errs.end(), f.coeff_errs().begin(), f.coeff_errs().end());
  }
  return PowerSeries(std::move(coeffs), f.tail(), Provenance::composed, std::move(errs));
}

PowerSeries scaled(const PowerSeries& f, Complex c) {
  std::vector<Complex> coeffs(f.coeffs().begin(), f.coeffs().end());
  for (auto& a : coeffs) a *= c;
  std::vector<double> errs = f.coeff_errs();
  const double m = std::abs(c);
  for (auto& e : errs) e *= m;
  auto t = f.tail();
  t.cap *= m;
  return PowerSeries(std::move(coeffs), t, Provenance::composed, std::move(errs));
}

namespace {

struct CircleSamples {
  std::vector<Complex> values;
  double max_abs = 0.0;
  double max_err = 0.0;
};

CircleSamples sample_circle(const PowerSeries& f, Complex center, double radius, int count) {
  CircleSamples s;
  s.values.resize(count);
  for (int j = 0; j < count; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / count;
    const auto v = eval_at(f, center + std::polar(radius, angle));
    s.values[j] = v.value;
    s.max_abs = std::max(s.max_abs, std::abs(v.value));
    s.max_err = std::max(s.max_err, v.err);
  }
  return s;
}

// alpha_n = (1/K) sum_j f_j w^{-nj} / R^n for n = 0..order.
std::vector<Complex> invert_samples(const CircleSamples& s, double radius, int order) {
  const int count = static_cast<int>(s.values.size());
  std::vector<Complex> twiddle(count);
  for (int k = 0; k < count; ++k) {
    twiddle[k] = std::polar(1.0, -2.0 * std::numbers::pi * k / count);
  }
  std::vector<Complex> out(order + 1);
  std::vector<Complex> terms(count);
  double rn = 1.0;
  for (int n = 0; n <= order; ++n) {
    for (int j = 0; j < count; ++j) {
      const auto idx = static_cast<int>((static_cast<long long>(n) * j) % count);
      terms[j] = s.values[j] * twiddle[idx];
    }
    out[n] = pairwise_sum(terms) / (static_cast<double>(count) * rn);
    rn *= radius;
  }
  return out;
}

int next_pow2(int v) {
  int p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace

PowerSeries taylor_recenter(const PowerSeries& f, Complex center, int new_order,
                            const RecenterOptions& options) {
  const double c_abs = std::abs(center);
  if (!(c_abs < 1.0)) throw std::domain_error("taylor_recenter: |center| must be < 1");
  if (!(options.sigma > 0.0 && options.sigma < 1.0)) {
    throw std::invalid_argument("taylor_recenter: sigma must lie in (0, 1)");
  }
  if (new_order < 0) throw std::invalid_argument("taylor_recenter: negative order");

  const double scale = 1.0 - c_abs;  // natural radius about the center
  const double radius = options.sigma * scale;

  int count = std::max(next_pow2(options.min_samples), next_pow2(2 * (new_order + 1)));
  auto coarse = invert_samples(sample_circle(f, center, radius, count / 2), radius, new_order);

  for (; count <= options.max_samples; count *= 2) {
    const auto samples = sample_circle(f, center, radius, count);
    auto fine = invert_samples(samples, radius, new_order);

    const double floor_abs = (2.0 + std::log2(static_cast<double>(count))) * 2.0 *
                                 kUnitRoundoff * samples.max_abs +
                             samples.max_err;
    std::vector<double> errs(new_order + 1);
    double worst = 0.0;
    double worst_floor = 0.0;
    double rn = 1.0;       // radius^n
    double ratio_n = 1.0;  // (scale / radius)^n = sigma^-n
    for (int n = 0; n <= new_order; ++n) {
      const double floor_n = floor_abs / rn;
      errs[n] = std::abs(fine[n] - coarse[n]) + floor_n;
      worst = std::max(worst, errs[n] * rn * ratio_n);
      worst_floor = std::max(worst_floor, floor_abs * ratio_n);
      rn *= radius;
      ratio_n /= options.sigma;
    }
    if (worst_floor > options.error_target) {
      throw RecenterError("taylor_recenter: order " + std::to_string(new_order) +
                          " exceeds what sampling at sigma=" + std::to_string(options.sigma) +
                          " resolves at error target " + std::to_string(options.error_target));
    }
    if (worst <= options.error_target) {
      // Cauchy estimate on the sampling circle bounds every coefficient.
      const auto sup = majorant_sum(f, c_abs + radius);
      const double bound = sup.value + sup.err;
      TailCertificate tail{bound / std::pow(radius, new_order + 1), 1.0 / radius, 0};
      return PowerSeries(std::move(fine), tail, Provenance::sampled, std::move(errs));
    }
    coarse = std::move(fine);
  }
  throw RecenterError("taylor_recenter: sample budget exhausted before reaching error target");
}

}  // namespace bohrlab
