#include "bohrlab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "bohrlab/domains.hpp"

namespace bohrlab {

namespace {

constexpr double kRadiusSlack = 1e-12;
constexpr double kQGrid = 3.0 / 8.0;

struct NamedId {
  FunctionalId id;
  std::string_view name;
};

constexpr NamedId kIds[] = {
    {FunctionalId::lemma21, "lemma21"},
    {FunctionalId::fr, "fr"},
    {FunctionalId::fr_sq_a0, "fr_sq_a0"},
    {FunctionalId::fr_a0_zero, "fr_a0_zero"},
    {FunctionalId::q_corrected, "q_corrected"},
    {FunctionalId::p_corrected, "p_corrected"},
    {FunctionalId::beta_refined, "beta_refined"},
    {FunctionalId::coeff_refined, "coeff_refined"},
    {FunctionalId::harmonic_sum, "harmonic_sum"},
    {FunctionalId::harmonic_quad, "harmonic_quad"},
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_r(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("functional: r must lie in [0, 1)");
}

// |a|^2 given |a| <= m + d: upper deviation of the square.
double square_dev(double m, double d) { return 2.0 * m * d + d * d; }

}  // namespace

std::string_view to_string(FunctionalId id) {
  for (const auto& e : kIds) {
    if (e.id == id) return e.name;
  }
  return "unknown";
}

FunctionalId parse_functional_id(std::string_view name) {
  if (name.starts_with("thm_")) name.remove_prefix(4);
  for (const auto& e : kIds) {
    if (e.name == name) return e.id;
  }
  if (name == "q") return FunctionalId::q_corrected;
  if (name == "p") return FunctionalId::p_corrected;
  if (name == "beta") return FunctionalId::beta_refined;
  if (name == "coeff") return FunctionalId::coeff_refined;
  throw std::invalid_argument("unknown functional '" + std::string(name) + "'");
}

bool is_harmonic(FunctionalId id) {
  return id == FunctionalId::harmonic_sum || id == FunctionalId::harmonic_quad;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::violated:
      return "violated";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify(double value, double err) {
  if (value + err <= 1.0) return Verdict::holds;
  if (value - err > 1.0) return Verdict::violated;
  return Verdict::inconclusive;
}

double CorrectionPolynomial::evaluate(double w) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc + *it) * w;
  return acc;
}

double CorrectionPolynomial::constraint_residual() const {
  double sum = 0.0;
  for (int j = 1; j <= degree(); ++j) {
    sum += 8.0 * (2 * j - 1) * coeffs[j - 1] * std::pow(kQGrid, 2 * j);
  }
  return sum - 1.0;
}

CorrectionPolynomial make_q(const std::vector<double>& c_prefix) {
  const int m = static_cast<int>(c_prefix.size()) + 1;
  double partial = 0.0;
  for (int j = 1; j < m; ++j) {
    const double c = c_prefix[j - 1];
    if (!(c >= 0.0)) throw std::invalid_argument("make_q: coefficients must be nonnegative");
    partial += 8.0 * (2 * j - 1) * c * std::pow(kQGrid, 2 * j);
  }
  if (partial > 1.0 + 1e-12) {
    throw std::invalid_argument("make_q: prefix already exceeds the constraint; c_m would be negative");
  }
  const double weight = 8.0 * (2 * m - 1) * std::pow(kQGrid, 2 * m);
  std::vector<double> coeffs = c_prefix;
  coeffs.push_back(std::max(0.0, (1.0 - partial) / weight));
  return CorrectionPolynomial{PolynomialKind::Q, std::move(coeffs), std::nullopt,
                              ConstraintFlag::sharp};
}

CorrectionPolynomial make_q_from(const std::vector<double>& coeffs) {
  CorrectionPolynomial q{PolynomialKind::Q, coeffs, std::nullopt, ConstraintFlag::none};
  for (double c : coeffs) {
    if (!(c >= 0.0)) throw std::invalid_argument("make_q_from: coefficients must be nonnegative");
  }
  const double res = q.constraint_residual();
  if (std::abs(res) <= 1e-12) {
    q.flag = ConstraintFlag::sharp;
  } else if (res < 0.0) {
    q.flag = ConstraintFlag::admissible;
  }
  return q;
}

CorrectionPolynomial make_p(double lambda, int m) {
  if (!(lambda > 0.0)) throw std::invalid_argument("make_p: lambda must be positive");
  if (m < 0) throw std::invalid_argument("make_p: negative degree");
  const double base = (1.0 + lambda) / (1.0 + 2.0 * lambda);
  std::vector<double> k(m);
  for (int j = 1; j <= m; ++j) k[j - 1] = std::pow(base, 2 * j);
  return CorrectionPolynomial{PolynomialKind::P, std::move(k), lambda, ConstraintFlag::none};
}

BohrReport make_report(FunctionalId id, Certified c, double r, ReportParams params,
                       bool in_hypothesis) {
  return BohrReport{id, c.value, c.err, r, std::move(params), classify(c.value, c.err),
                    in_hypothesis};
}

BohrReport lemma21_report(const PowerSeries& f, double gamma, int n_max) {
  if (n_max < 1 || n_max > f.order()) {
    throw std::invalid_argument("lemma21_report: n_max must lie in 1..order");
  }
  const double a0 = std::abs(f.coeff(0));
  double worst = 0.0;
  double worst_err = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    worst = std::max(worst, std::abs(f.coeff(n)));
    worst_err = std::max(worst_err, f.coeff_err(n));
  }
  const Certified c{a0 * a0 + (1.0 + gamma) * worst,
                    square_dev(a0, f.coeff_err(0)) + (1.0 + gamma) * worst_err};
  ReportParams p;
  p.gamma = gamma;
  p.lambda = 1.0 / (1.0 + gamma);
  return make_report(FunctionalId::lemma21, c, 0.0, std::move(p), true);
}

BohrReport thm_fr(const PowerSeries& f, double r, double gamma) {
  require_r(r);
  ReportParams p;
  p.gamma = gamma;
  return make_report(FunctionalId::fr, majorant_sum(f, r), r, std::move(p),
                     r <= fournier_ruscheweyh_radius(gamma) + kRadiusSlack);
}

BohrReport thm_fr_sq_a0(const PowerSeries& f, double r) {
  require_r(r);
  const auto c = f.coeffs();
  const double a0 = std::abs(c[0]);
  double value = a0 * a0;
  double err = square_dev(a0, f.coeff_err(0));
  double rn = 1.0;
  for (int n = 1; n <= f.order(); ++n) {
    rn *= r;
    value += std::abs(c[n]) * rn;
    err += f.coeff_err(n) * rn;
  }
  err += tail_bound(f, r).value;
  ReportParams p;
  p.gamma = 0.0;
  return make_report(FunctionalId::fr_sq_a0, {value, err}, r, std::move(p),
                     r <= 0.5 + kRadiusSlack);
}

BohrReport thm_fr_a0_zero(const PowerSeries& f, double r) {
  require_r(r);
  ReportParams p;
  p.gamma = 0.0;
  const bool zero_constant = f.abs_upper(0) <= 1e-12;
  return make_report(FunctionalId::fr_a0_zero, majorant_sum(f, r), r, std::move(p),
                     zero_constant && r <= std::numbers::sqrt2 / 2.0 + kRadiusSlack);
}

BohrReport thm_q_corrected(const PowerSeries& f, double r, double gamma,
                           const CorrectionPolynomial& q) {
  require_r(r);
  const auto m = majorant_sum(f, r);
  // The area term is taken at the transported radius r (1 - gamma).
  const auto s = area_ratio(f, r * (1.0 - gamma));
  const double qv = q.evaluate(s.value);
  const double qhi = q.evaluate(s.value + s.err);
  ReportParams p;
  p.gamma = gamma;
  p.m = q.degree();
  p.poly = q.coeffs;
  const bool admissible = q.kind == PolynomialKind::Q && q.constraint_residual() <= 1e-12 &&
                          std::all_of(q.coeffs.begin(), q.coeffs.end(),
                                      [](double c) { return c >= 0.0; });
  return make_report(FunctionalId::q_corrected, {m.value + qv, m.err + (qhi - qv)}, r,
                     std::move(p),
                     admissible && r <= fournier_ruscheweyh_radius(gamma) + kRadiusSlack);
}

BohrReport thm_p_corrected(const PowerSeries& f, double r, double lambda, int m) {
  require_r(r);
  const auto poly = make_p(lambda, m);
  const auto maj = majorant_sum(f, r);
  const auto s = area_ratio(f, r);
  const double pv = poly.evaluate(s.value);
  const double phi = poly.evaluate(s.value + s.err);
  ReportParams p;
  p.lambda = lambda;
  p.m = m;
  p.poly = poly.coeffs;
  return make_report(FunctionalId::p_corrected, {maj.value + pv, maj.err + (phi - pv)}, r,
                     std::move(p), r <= 1.0 / (1.0 + 2.0 * lambda) + kRadiusSlack);
}

BohrReport thm_beta_refined(const PowerSeries& f, double r, double beta, double lambda) {
  require_r(r);
  if (!std::isfinite(beta) || !(lambda > 0.0)) {
    throw std::invalid_argument("thm_beta_refined: invalid beta or lambda");
  }
  // Same accumulation order as majorant_sum so that beta = 0 reproduces it bit for bit.
  const auto c = f.coeffs();
  double value = 0.0;
  double err = 0.0;
  double rn = 1.0;
  for (int n = 0; n <= f.order(); ++n) {
    const double m = std::abs(c[n]);
    const double d = f.coeff_err(n);
    if (n == 0) {
      value += m * rn;
      err += d * rn;
    } else {
      value += (m + beta * (m * m)) * rn;
      err += (d + beta * square_dev(m, d)) * rn;
    }
    rn *= r;
  }
  err += tail_bound(f, r).value + beta * squared_tail(f, r, 1, false);
  ReportParams p;
  p.lambda = lambda;
  p.beta = beta;
  const bool in_range = beta >= 0.0 && beta <= 1.0 / lambda + 1e-12;
  return make_report(FunctionalId::beta_refined, {value, err}, r, std::move(p),
                     in_range && r <= 1.0 / (1.0 + 2.0 * lambda) + kRadiusSlack);
}

BohrReport thm_coeff_refined(const PowerSeries& f, double r, double lambda) {
  require_r(r);
  if (!(lambda > 0.0)) throw std::invalid_argument("thm_coeff_refined: lambda must be positive");
  const auto maj = majorant_sum(f, r);
  const auto c = f.coeffs();
  const double r2 = r * r;
  double s2 = 0.0;
  double s2_err = 0.0;
  double r2n = 1.0;
  for (int n = 1; n <= f.order(); ++n) {
    r2n *= r2;
    const double m = std::abs(c[n]);
    s2 += m * m * r2n;
    s2_err += square_dev(m, f.coeff_err(n)) * r2n;
  }
  s2_err += squared_tail(f, r, 2, false);

  const double a0 = std::abs(c[0]);
  const double a0_low = std::max(0.0, a0 - f.coeff_err(0));
  const double growth = (2.0 / 3.0) * (1.0 + lambda) * r / (1.0 - r);
  const double factor = (1.0 + lambda) / (2.0 * lambda * (1.0 + a0)) + growth;
  const double factor_hi = (1.0 + lambda) / (2.0 * lambda * (1.0 + a0_low)) + growth;

  const double value = maj.value + factor * s2;
  const double err = maj.err + (factor_hi * (s2 + s2_err) - factor * s2);
  ReportParams p;
  p.lambda = lambda;
  return make_report(FunctionalId::coeff_refined, {value, err}, r, std::move(p),
                     r <= 1.0 / (1.0 + 2.0 * lambda) + kRadiusSlack);
}

namespace {

void require_matching(const HarmonicPair& p) {
  if (p.h.order() != p.g.order()) {
    throw std::invalid_argument("harmonic functional: h and g must share a truncation order");
  }
}

}  // namespace

BohrReport thm_harmonic_sum(const HarmonicPair& pair, double r, double gamma) {
  require_r(r);
  require_matching(pair);
  const auto& h = pair.h;
  const auto& g = pair.g;
  double value = std::abs(h.coeff(0));
  double err = h.coeff_err(0);
  double rn = 1.0;
  for (int n = 1; n <= h.order(); ++n) {
    rn *= r;
    value += (std::abs(h.coeff(n)) + std::abs(g.coeff(n))) * rn;
    err += (h.coeff_err(n) + g.coeff_err(n)) * rn;
  }
  err += tail_bound(h, r).value + tail_bound(g, r).value;
  ReportParams p;
  p.gamma = gamma;
  return make_report(FunctionalId::harmonic_sum, {value, err}, r, std::move(p),
                     r <= fournier_ruscheweyh_radius(gamma) + kRadiusSlack);
}

BohrReport thm_harmonic_quad(const HarmonicPair& pair, double r, double gamma) {
  require_r(r);
  require_matching(pair);
  const auto& h = pair.h;
  const auto& g = pair.g;
  double value = 0.0;
  double err = 0.0;
  double rn = 1.0;
  for (int n = 0; n <= h.order(); ++n) {
    value += std::hypot(std::abs(h.coeff(n)), std::abs(g.coeff(n))) * rn;
    err += (h.coeff_err(n) + g.coeff_err(n)) * rn;
    rn *= r;
  }
  // sqrt(x^2 + y^2) <= x + y bounds the tail termwise.
  err += tail_bound(h, r).value + tail_bound(g, r).value;
  ReportParams p;
  p.gamma = gamma;
  return make_report(FunctionalId::harmonic_quad, {value, err}, r, std::move(p),
                     r <= fournier_ruscheweyh_radius(gamma) + kRadiusSlack);
}

std::string to_csv_row(const BohrReport& r) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
  };
  std::string row;
  row += to_string(r.id);
  row += ',' + opt(r.params.gamma);
  row += ',' + opt(r.params.lambda);
  row += ',' + opt(r.params.beta);
  row += ',' + (r.params.m ? std::to_string(*r.params.m) : std::string{});
  row += ',' + opt(r.params.a);
  row += ',' + (r.params.seed ? std::to_string(*r.params.seed) : std::string{});
  row += ',' + format_double(r.r);
  row += ',' + format_double(r.value);
  row += ',' + format_double(r.err);
  row += ',';
  row += to_string(r.verdict);
  return row;
}

nlohmann::json to_json(const BohrReport& r) {
  const auto opt = [](const auto& v) -> nlohmann::json {
    if (v) return *v;
    return nullptr;
  };
  return nlohmann::json{{"functional_id", to_string(r.id)},
                        {"gamma", opt(r.params.gamma)},
                        {"lambda", opt(r.params.lambda)},
                        {"beta", opt(r.params.beta)},
                        {"m", opt(r.params.m)},
                        {"a", opt(r.params.a)},
                        {"seed", opt(r.params.seed)},
                        {"r", r.r},
                        {"value", r.value},
                        {"err", r.err},
                        {"verdict", to_string(r.verdict)}};
}

namespace gadgets {

namespace {

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(name) + ": argument must lie in [0, 1]");
  }
}

void require_coefficients(const std::vector<double>& c, const char* name) {
  if (c.empty()) throw std::invalid_argument(std::string(name) + ": needs c_1..c_m");
}

constexpr struct {
  Name name;
  std::string_view text;
} kNames[] = {{Name::A, "A"},   {Name::Fm, "Fm"}, {Name::J, "J"},   {Name::J1, "J1"},
              {Name::F1, "F1"}, {Name::F2, "F2"}, {Name::Gm, "Gm"}, {Name::Phi1, "Phi1"}};

}  // namespace

std::string_view to_string(Name n) {
  for (const auto& e : kNames) {
    if (e.name == n) return e.text;
  }
  return "?";
}

Name parse_name(std::string_view s) {
  for (const auto& e : kNames) {
    if (e.text == s) return e.name;
  }
  throw std::invalid_argument("unknown gadget '" + std::string(s) + "'");
}

double A(double gamma) {
  require_unit_interval(gamma, "A");
  const double u = 3.0 + gamma;
  const double v = 1.0 - gamma * gamma;
  return u * v / (u * u - v * v);
}

double Fm(double x, double gamma, const std::vector<double>& c) {
  require_unit_interval(x, "Fm");
  require_coefficients(c, "Fm");
  const double a = A(gamma);
  const double w = 1.0 - x * x;
  double sum = 0.0;
  for (std::size_t j = 1; j <= c.size(); ++j) {
    sum += c[j - 1] * std::pow(w, 2.0 * j - 1.0) * std::pow(a, 2.0 * j);
  }
  return sum;
}

double J(double x, double gamma, const std::vector<double>& c) {
  return 1.0 + 2.0 * Fm(x, gamma, c) - 2.0 / (1.0 + x);
}

double J_prime(double x, double gamma, const std::vector<double>& c) {
  require_unit_interval(x, "J'");
  require_coefficients(c, "J'");
  const double a = A(gamma);
  const double w = 1.0 - x * x;
  double sum = 0.0;
  for (std::size_t j = 1; j <= c.size(); ++j) {
    sum += (2.0 * j - 1.0) * c[j - 1] * std::pow(w, 2.0 * j - 2.0) * std::pow(a, 2.0 * j);
  }
  return 2.0 / ((1.0 + x) * (1.0 + x)) - 4.0 * x * sum;
}

double J1(double x, int m) {
  require_unit_interval(x, "J1");
  if (m < 1) throw std::invalid_argument("J1: m must be >= 1");
  const double top = std::pow(16.0, m);
  const double w = 1.0 - x * x;
  double sum = 0.0;
  for (int j = 1; j <= m; ++j) sum += std::pow(16.0, m - j) * std::pow(w, 2 * j - 1);
  return top / (1.0 + x) - top / 2.0 - sum;
}

double J1_prime(double x, int m) {
  require_unit_interval(x, "J1'");
  if (m < 1) throw std::invalid_argument("J1': m must be >= 1");
  const double top = std::pow(16.0, m);
  const double w = 1.0 - x * x;
  double sum = 0.0;
  for (int j = 1; j <= m; ++j) sum += (2 * j - 1) * std::pow(16.0, m - j) * std::pow(w, 2 * j - 2);
  return -top / ((1.0 + x) * (1.0 + x)) + 2.0 * x * sum;
}

double F1(double x, double lambda, double beta) {
  require_unit_interval(x, "F1");
  return 2.0 / (1.0 + x) - 1.0 - lambda * beta * (1.0 - x * x);
}

double F1_prime(double x, double lambda, double beta) {
  require_unit_interval(x, "F1'");
  return -2.0 / ((1.0 + x) * (1.0 + x)) + 2.0 * lambda * beta * x;
}

double F2(double x) {
  require_unit_interval(x, "F2");
  const double inner = 1.0 / (2.0 * (1.0 + x)) + 1.0 / 3.0;
  return 2.0 / (1.0 + x) - 1.0 - 0.5 * inner * (1.0 - x) * (1.0 - x) * (1.0 + x);
}

double F2_prime(double x) {
  require_unit_interval(x, "F2'");
  const double inner = 1.0 / (2.0 * (1.0 + x)) + 1.0 / 3.0;
  return -2.0 / ((1.0 + x) * (1.0 + x)) + (1.0 - x) * (1.0 - x) / (4.0 * (1.0 + x)) -
         0.5 * inner * (3.0 * x * x - 2.0 * x - 1.0);
}

double Gm(double rho, double x, const std::vector<double>& c) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("Gm: rho must lie in [0, 1)");
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("Gm: |alpha_0| must lie in [0, 1)");
  require_coefficients(c, "Gm");
  const int m = static_cast<int>(c.size());
  if (!(c.back() > 0.0)) throw std::invalid_argument("Gm: c_m must be positive");
  const double u = rho / (1.0 - rho * rho);
  const double w = 1.0 - x * x;
  double sum = std::pow(u, 2 * m);
  for (int j = 1; j < m; ++j) {
    sum += (c[j - 1] / c.back()) * std::pow(u, 2 * j) / std::pow(w, 2 * m - 2 * j);
  }
  return sum;
}

double Phi1(double r, double a, double gamma, const std::vector<double>& c) {
  if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("Phi1: r must lie in [0, 1)");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::domain_error("Phi1: gamma must lie in [0, 1)");
  if (!(a > 0.0 && a >= gamma && a < 1.0)) {
    throw std::domain_error("Phi1: a must lie in [gamma, 1) and be positive");
  }
  const double g1 = 1.0 - gamma;
  const double s = 1.0 - a * gamma;
  const double den = s * s - a * a * r * r * std::pow(g1, 4);
  // (1 - C_0)/(1 - a) simplifies to (1 + gamma)/(1 - a gamma).
  double phi = (1.0 + gamma) / s - (1.0 + a) * g1 * r / ((s - a * r * g1) * s);
  for (std::size_t j = 1; j <= c.size(); ++j) {
    const double jj = static_cast<double>(j);
    phi -= c[j - 1] * std::pow(r, 2 * jj) * std::pow(1.0 - a, 2 * jj - 1) *
           std::pow(1.0 + a, 2 * jj) * std::pow(g1, 4 * jj) / std::pow(den, 2 * jj);
  }
  return phi;
}

double evaluate(Name n, double x, const Params& p) {
  switch (n) {
    case Name::A:
      return A(x);
    case Name::Fm:
      return Fm(x, p.gamma, p.c);
    case Name::J:
      return J(x, p.gamma, p.c);
    case Name::J1:
      return J1(x, p.m);
    case Name::F1:
      return F1(x, p.lambda, p.beta);
    case Name::F2:
      return F2(x);
    case Name::Gm:
      return Gm(x, p.x, p.c);
    case Name::Phi1:
      return Phi1(x, p.a, p.gamma, p.c);
  }
  throw std::invalid_argument("gadget: unknown name");
}

}  // namespace gadgets

}  // namespace bohrlab
