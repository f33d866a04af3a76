#include "faircss/fair_sampler.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "faircss/errors.hpp"

namespace faircss {

void SamplerConfig::validate(Index k) const {
  const double kk = static_cast<double>(k);
  for (double theta : {theta_a, theta_b}) {
    if (!(theta > 0.0 && theta < kk)) {
      std::ostringstream os;
      os << "threshold " << theta << " must lie strictly between 0 and k = " << k;
      throw PreconditionError(os.str());
    }
  }
}

double theta_for(ThetaPreset preset, Index k) noexcept {
  const double kk = static_cast<double>(k);
  return preset == ThetaPreset::k_minus_half ? kk - 0.5 : 0.75 * kk;
}

std::optional<ThetaPreset> parse_theta_preset(std::string_view name) {
  if (name == "k-1/2" || name == "k-minus-half") return ThetaPreset::k_minus_half;
  if (name == "3k/4" || name == "three-quarter-k") return ThetaPreset::three_quarter_k;
  return std::nullopt;
}

const char* to_string(ThetaPreset preset) noexcept {
  return preset == ThetaPreset::k_minus_half ? "k-minus-half" : "three-quarter-k";
}

namespace {

bool reached(double mass, double theta) { return mass >= theta - kThresholdSlack; }

// Indices sorted by descending key, lowest index first among equal keys.
std::vector<std::size_t> descending_order(const std::vector<double>& key) {
  std::vector<std::size_t> order(key.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return key[i] > key[j]; });
  return order;
}

}  // namespace

SampleResult fair_scores_sample(const LeveragePairs& pairs, const SamplerConfig& config) {
  const std::size_t n = pairs.alphas.size();
  if (pairs.betas.size() != n) {
    throw PreconditionError("leverage pairs have mismatched lengths");
  }
  const double total_a = std::accumulate(pairs.alphas.begin(), pairs.alphas.end(), 0.0);
  const double total_b = std::accumulate(pairs.betas.begin(), pairs.betas.end(), 0.0);
  if (!reached(total_a, config.theta_a) || !reached(total_b, config.theta_b)) {
    std::ostringstream os;
    os << "thresholds unreachable: group A mass " << total_a << " vs theta " << config.theta_a
       << ", group B mass " << total_b << " vs theta " << config.theta_b;
    throw InfeasibleError(os.str());
  }

  SampleResult result;
  std::vector<char> picked(n, 0);
  double mass_a = 0.0;
  double mass_b = 0.0;

  std::vector<double> pair_sum(n);
  for (std::size_t i = 0; i < n; ++i) pair_sum[i] = pairs.alphas[i] + pairs.betas[i];
  for (std::size_t i : descending_order(pair_sum)) {
    if (reached(mass_a, config.theta_a) || reached(mass_b, config.theta_b)) break;
    picked[i] = 1;
    mass_a += pairs.alphas[i];
    mass_b += pairs.betas[i];
    result.trace.phase_one_picks.push_back(i);
  }

  const bool a_done = reached(mass_a, config.theta_a);
  result.trace.satisfied_first = a_done ? Group::a : Group::b;
  const auto& other = a_done ? pairs.betas : pairs.alphas;
  const double other_theta = a_done ? config.theta_b : config.theta_a;
  double other_mass = a_done ? mass_b : mass_a;
  for (std::size_t i : descending_order(other)) {
    if (reached(other_mass, other_theta)) break;
    if (picked[i]) continue;
    picked[i] = 1;
    other_mass += other[i];
    result.trace.phase_two_picks.push_back(i);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (picked[i]) result.columns.push_back(i);
  }
  return result;
}

CardinalityCertificate cardinality_certificate(const LeveragePairs& pairs,
                                               const SamplerConfig& config,
                                               const ColumnSet& selected,
                                               std::size_t oracle_c) {
  (void)pairs;
  if (config.theta_a != config.theta_b) {
    throw PreconditionError("the cardinality guarantee is only stated for equal thresholds");
  }
  CardinalityCertificate cert;
  cert.size = selected.size();
  cert.optimal = oracle_c;
  cert.bound = (3 * oracle_c + 1) / 2 + 1;
  cert.pass = cert.size <= cert.bound;
  return cert;
}

}  // namespace faircss
