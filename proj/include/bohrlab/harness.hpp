#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohrlab/functionals.hpp"
#include "bohrlab/radius.hpp"

namespace bohrlab {

enum class SampleFamily { random, extremal };

struct CampaignConfig {
  FunctionalParams functional;
  int samples = 100;
  std::uint64_t seed = 0;
  int order = 256;
  double tol = 1e-6;
  /// Radii to test; empty means the stated radius of the functional.
  std::vector<double> r_points;
  SampleFamily family = SampleFamily::random;
  int workers = 1;

  void validate() const;
  std::vector<double> radii() const;
};

struct SampleResult {
  std::uint64_t index = 0;
  std::vector<BohrReport> reports;
  Verdict verdict = Verdict::holds;
  bool violated_in_hypothesis = false;
  double min_slack = 0.0;
  nlohmann::json descriptor;
};

struct CampaignSummary {
  int holds = 0;
  int violated = 0;
  int inconclusive = 0;
  int violated_in_hypothesis = 0;
  double min_slack = 0.0;
  nlohmann::json worst;
  /// First violating descriptor, if any.
  std::optional<nlohmann::json> first_violation;
  double wall_seconds = 0.0;

  /// 0 ok, 1 violation inside the hypotheses, 3 inconclusive.
  int exit_code() const;
};

/// Evaluate one sample of the campaign. Inconclusive reports are retried once
/// at double the truncation order.
SampleResult run_sample(const CampaignConfig& cfg, std::uint64_t index);

/// Runs every sample, calling `sink` in index order regardless of the number
/// of workers.
CampaignSummary run_campaign(const CampaignConfig& cfg,
                             const std::function<void(const SampleResult&)>& sink = {});

/// Rebuild the sample described by `descriptor` and evaluate it again.
BohrReport replay(const nlohmann::json& descriptor);

}  // namespace bohrlab
