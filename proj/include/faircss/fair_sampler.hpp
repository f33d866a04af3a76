#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "faircss/leverage.hpp"
#include "faircss/matrix.hpp"

namespace faircss {

/// Threshold comparisons accept sums >= theta - kThresholdSlack.
inline constexpr double kThresholdSlack = 1e-12;

enum class TieBreak { lowest_index };

struct SamplerConfig {
  double theta_a = 0.0;
  double theta_b = 0.0;
  TieBreak tie_break = TieBreak::lowest_index;

  /// 0 < theta < k for both groups; throws PreconditionError otherwise.
  void validate(Index k) const;
};

/// Named threshold choices. k - 1/2 is the usual setting; 3k/4 suits data
/// whose leverage mass is spread thinly.
enum class ThetaPreset { k_minus_half, three_quarter_k };

double theta_for(ThetaPreset preset, Index k) noexcept;
/// Accepts "k-1/2", "k-minus-half", "3k/4", "three-quarter-k".
std::optional<ThetaPreset> parse_theta_preset(std::string_view name);
const char* to_string(ThetaPreset preset) noexcept;

struct SamplerTrace {
  std::vector<std::size_t> phase_one_picks;
  Group satisfied_first = Group::a;
  std::vector<std::size_t> phase_two_picks;
};

struct SampleResult {
  ColumnSet columns;  // sorted ascending
  SamplerTrace trace;
};

/// Two-phase threshold sampler.
///
/// Phase 1 adds the unpicked column with the largest alpha + beta until one
/// group reaches its threshold (A is reported first if both do at once).
/// Phase 2 adds the remaining columns in descending order of the other
/// group's score until that group's total over everything picked so far
/// reaches its threshold. Ties go to the lowest column index.
///
/// Throws InfeasibleError up front if either group's total mass is below its
/// threshold.
SampleResult fair_scores_sample(const LeveragePairs& pairs, const SamplerConfig& config);

struct CardinalityCertificate {
  std::size_t size = 0;
  std::size_t optimal = 0;
  std::size_t bound = 0;  // ceil(3 c / 2) + 1
  bool pass = false;
};

/// Compares a sampler output against the exact minimum cardinality c.
/// Only meaningful for equal thresholds; throws PreconditionError otherwise.
CardinalityCertificate cardinality_certificate(const LeveragePairs& pairs,
                                               const SamplerConfig& config,
                                               const ColumnSet& selected,
                                               std::size_t oracle_c);

}  // namespace faircss
