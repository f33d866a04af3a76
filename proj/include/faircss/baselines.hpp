#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "faircss/dataset.hpp"
#include "faircss/evaluation.hpp"
#include "faircss/matrix.hpp"

namespace faircss {

/// Picks k columns one at a time, each time adding the candidate that
/// minimizes the MinMax objective of the enlarged set (recomputed from
/// scratch per candidate). A candidate replaces the current best only if it
/// is lower by more than 1e-12 relative, so near-ties go to the lowest index.
/// The returned list is in pick order.
std::vector<std::size_t> greedy_minmax(const GroupedData& data, Index k);

/// Greedy against a fixed objective, choosing `count` columns from
/// `candidates` (all columns when empty).
std::vector<std::size_t> greedy_minmax(const MinMaxObjective& objective, Index count,
                                       std::span<const std::size_t> candidates = {});

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct RandomConfig {
  std::size_t repetitions = 100;
  std::uint64_t seed = kDefaultSeed;
};

struct RandomSummary {
  std::vector<ColumnSet> subsets;
  std::vector<double> objectives;
  double mean = 0.0;
  double median = 0.0;  // mean of the two middle values for even counts
  double min = 0.0;
};

/// Uniform k-subsets drawn with SubsetSampler, scored by the MinMax
/// objective at target rank k.
RandomSummary random_subsets(const GroupedData& data, Index k, const RandomConfig& config);

/// `count`-subsets scored by a fixed objective.
RandomSummary random_subsets(const MinMaxObjective& objective, Index count,
                             const RandomConfig& config);

/// Shortest descending-score prefix with sum >= theta - 1e-12 (ties to the
/// lowest index). Returned sorted. Throws InfeasibleError if the total is
/// short.
ColumnSet single_group_sample(std::span<const double> scores, double theta);

}  // namespace faircss
