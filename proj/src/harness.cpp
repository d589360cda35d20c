#include "bohrlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "bohrlab/domains.hpp"
#include "bohrlab/families.hpp"

namespace bohrlab {

namespace {

constexpr std::size_t kBlock = 512;

int severity(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return 0;
    case Verdict::inconclusive:
      return 1;
    case Verdict::violated:
      return 2;
  }
  return 1;
}

nlohmann::json functional_json(const FunctionalParams& p) {
  nlohmann::json j{{"functional", to_string(p.id)}, {"gamma", p.gamma}, {"beta", p.beta}, {"m", p.m}};
  j["lambda"] = p.lambda ? nlohmann::json(*p.lambda) : nlohmann::json(nullptr);
  j["q_coeffs"] = p.q_coeffs;
  return j;
}

FunctionalParams functional_from_json(const nlohmann::json& j) {
  FunctionalParams p;
  p.id = parse_functional_id(j.at("functional").get<std::string>());
  p.gamma = j.at("gamma").get<double>();
  p.beta = j.value("beta", 0.0);
  p.m = j.value("m", 1);
  if (j.contains("lambda") && !j["lambda"].is_null()) p.lambda = j["lambda"].get<double>();
  if (j.contains("q_coeffs")) p.q_coeffs = j["q_coeffs"].get<std::vector<double>>();
  p.validate();
  return p;
}

double extremal_a(std::uint64_t index, int samples) {
  if (samples <= 1) return 0.5;
  const double t = static_cast<double>(index) / (samples - 1);
  return 1.0 - 0.5 * std::pow(2e-6, t);
}

// The function (or pair) of one sample, rebuilt at any order.
struct Sample {
  nlohmann::json descriptor;
  std::function<BohrReport(double r, int order)> eval;
};

Sample build_schur(const FunctionalParams& p, BlaschkeSpec spec, std::uint64_t seed) {
  Sample s;
  s.descriptor = {{"kind", "schur"}, {"seed", seed}, {"spec", spec}};
  s.eval = [p, spec = std::move(spec)](double r, int order) {
    return evaluate(p, spec.pull_back(OmegaGamma(p.gamma), order), r);
  };
  return s;
}

Sample build_harmonic(const FunctionalParams& p, double t, BlaschkeSpec F, BlaschkeSpec G, std::uint64_t seed) {
  Sample s;
  s.descriptor = {{"kind", "harmonic"}, {"seed", seed}, {"t", t}, {"F", F}, {"G", G}};
  s.eval = [p, t, F = std::move(F), G = std::move(G)](double r, int order) {
    return evaluate(p, make_harmonic_pair(t, F, G, p.gamma, order), r);
  };
  return s;
}

Sample build_extremal(const FunctionalParams& p, double a) {
  Sample s;
  s.descriptor = {{"kind", "extremal"}, {"a", a}};
  s.eval = [p, a](double r, int order) { return family_report(p, a, r, order); };
  return s;
}

Sample make_sample(const CampaignConfig& cfg, std::uint64_t index) {
  const auto& p = cfg.functional;
  if (cfg.family == SampleFamily::extremal) return build_extremal(p, extremal_a(index, cfg.samples));
  const std::uint64_t seed = mix_seed(cfg.seed, index);
  if (is_harmonic(p.id)) {
    auto pair = random_harmonic_pair(seed, p.gamma, 1);
    return build_harmonic(p, pair.t, std::move(pair.F), std::move(pair.G), seed);
  }
  std::mt19937_64 rng(seed);
  const int degree = static_cast<int>(rng() % 9);
  auto spec = random_blaschke(mix_seed(seed, 0), degree);
  if (p.id == FunctionalId::fr_a0_zero) {
    spec.zeros.insert(spec.zeros.begin(), Complex{p.gamma, 0.0});
  }
  return build_schur(p, std::move(spec), seed);
}

Sample sample_from_json(const FunctionalParams& p, const nlohmann::json& d) {
  const auto kind = d.at("kind").get<std::string>();
  if (kind == "schur") {
    return build_schur(p, d.at("spec").get<BlaschkeSpec>(), d.value("seed", std::uint64_t{0}));
  }
  if (kind == "harmonic") {
    return build_harmonic(p, d.at("t").get<double>(), d.at("F").get<BlaschkeSpec>(),
                          d.at("G").get<BlaschkeSpec>(), d.value("seed", std::uint64_t{0}));
  }
  if (kind == "extremal") return build_extremal(p, d.at("a").get<double>());
  throw std::invalid_argument("unknown sample kind '" + kind + "'");
}

}  // namespace

void CampaignConfig::validate() const {
  functional.validate();
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  for (double r : r_points) {
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("r values must lie in [0, 1)");
  }
  if (family == SampleFamily::extremal && functional.id == FunctionalId::lemma21) {
    throw std::invalid_argument("lemma21 has no extremal family");
  }
  if (family == SampleFamily::extremal) functional.family_gamma();
  if (functional.id == FunctionalId::q_corrected) functional.q();
  if (functional.id == FunctionalId::p_corrected) make_p(functional.effective_lambda(), functional.m);
}

std::vector<double> CampaignConfig::radii() const {
  if (functional.id == FunctionalId::lemma21) return {0.0};
  if (!r_points.empty()) return r_points;
  return {functional.stated_radius()};
}

int CampaignSummary::exit_code() const {
  if (violated_in_hypothesis > 0) return 1;
  if (inconclusive > 0) return 3;
  return 0;
}

SampleResult run_sample(const CampaignConfig& cfg, std::uint64_t index) {
  const auto sample = make_sample(cfg, index);
  SampleResult res;
  res.index = index;
  res.min_slack = std::numeric_limits<double>::infinity();
  for (double r : cfg.radii()) {
    int order = cfg.order;
    auto rep = sample.eval(r, order);
    if (rep.verdict == Verdict::inconclusive) {
      order *= 2;
      rep = sample.eval(r, order);
    }
    if (cfg.family == SampleFamily::random) rep.params.seed = mix_seed(cfg.seed, index);
    res.reports.push_back(rep);
    if (severity(rep.verdict) > severity(res.verdict)) res.verdict = rep.verdict;
    if (rep.verdict == Verdict::violated && rep.in_hypothesis) res.violated_in_hypothesis = true;
    if (rep.slack() < res.min_slack) {
      res.min_slack = rep.slack();
      res.descriptor = functional_json(cfg.functional);
      res.descriptor["r"] = rep.r;
      res.descriptor["order"] = order;
      res.descriptor["value"] = rep.value;
      res.descriptor["err"] = rep.err;
      res.descriptor["verdict"] = to_string(rep.verdict);
      res.descriptor["sample"] = sample.descriptor;
    }
  }
  return res;
}

CampaignSummary run_campaign(const CampaignConfig& cfg,
                             const std::function<void(const SampleResult&)>& sink) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  CampaignSummary sum;
  sum.min_slack = std::numeric_limits<double>::infinity();

  const std::size_t total = static_cast<std::size_t>(cfg.samples);
  std::vector<SampleResult> block;
  for (std::size_t first = 0; first < total; first += kBlock) {
    const std::size_t count = std::min(kBlock, total - first);
    block.assign(count, SampleResult{});
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          block[k] = run_sample(cfg, first + k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const int n_threads = std::min<int>(cfg.workers, static_cast<int>(count));
    std::vector<std::thread> threads;
    for (int t = 1; t < n_threads; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);

    for (const auto& s : block) {
      switch (s.verdict) {
        case Verdict::holds:
          ++sum.holds;
          break;
        case Verdict::violated:
          ++sum.violated;
          if (!sum.first_violation) sum.first_violation = s.descriptor;
          break;
        case Verdict::inconclusive:
          ++sum.inconclusive;
          break;
      }
      if (s.violated_in_hypothesis) ++sum.violated_in_hypothesis;
      if (s.min_slack < sum.min_slack) {
        sum.min_slack = s.min_slack;
        sum.worst = s.descriptor;
      }
      if (sink) sink(s);
    }
  }
  sum.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sum;
}

BohrReport replay(const nlohmann::json& descriptor) {
  const auto p = functional_from_json(descriptor);
  const auto sample = sample_from_json(p, descriptor.at("sample"));
  return sample.eval(descriptor.at("r").get<double>(), descriptor.at("order").get<int>());
}

}  // namespace bohrlab
