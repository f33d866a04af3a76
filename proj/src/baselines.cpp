#include "faircss/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "faircss/errors.hpp"
#include "faircss/fair_sampler.hpp"
#include "faircss/parallel.hpp"
#include "faircss/random.hpp"

namespace faircss {

std::vector<std::size_t> greedy_minmax(const MinMaxObjective& objective, Index count,
                                       std::span<const std::size_t> candidates) {
  const auto n = static_cast<std::size_t>(objective.data().cols());
  std::vector<std::size_t> pool(candidates.begin(), candidates.end());
  if (pool.empty()) {
    pool.resize(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (count < 1 || static_cast<std::size_t>(count) > pool.size()) {
    throw PreconditionError("greedy: cannot pick " + std::to_string(count) + " of " +
                            std::to_string(pool.size()) + " candidate columns");
  }

  std::vector<std::size_t> chosen;
  std::vector<double> values(pool.size());
  for (Index step = 0; step < count; ++step) {
    parallel_for(pool.size(), [&](std::size_t p) {
      auto trial = chosen;
      trial.push_back(pool[p]);
      values[p] = objective(trial);
    });
    std::size_t best = 0;
    for (std::size_t p = 1; p < pool.size(); ++p) {
      if (values[p] < values[best] - 1e-12 * std::max(1.0, std::abs(values[best]))) best = p;
    }
    chosen.push_back(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    values.pop_back();
  }
  return chosen;
}

std::vector<std::size_t> greedy_minmax(const GroupedData& data, Index k) {
  if (k < 1 || k > data.cols()) {
    throw PreconditionError("greedy: k must lie in [1, n]");
  }
  return greedy_minmax(MinMaxObjective(data, k), k);
}

RandomSummary random_subsets(const GroupedData& data, Index k, const RandomConfig& config) {
  if (k < 1 || k > data.cols()) throw PreconditionError("random: k must lie in [1, n]");
  return random_subsets(MinMaxObjective(data, k), k, config);
}

RandomSummary random_subsets(const MinMaxObjective& objective, Index k,
                             const RandomConfig& config) {
  const GroupedData& data = objective.data();
  if (config.repetitions < 1) throw PreconditionError("random: repetitions must be >= 1");
  if (k < 1 || k > data.cols()) throw PreconditionError("random: k must lie in [1, n]");
  SubsetSampler sampler(config.seed);
  RandomSummary out;
  for (std::size_t r = 0; r < config.repetitions; ++r) {
    out.subsets.push_back(
        sampler.subset(static_cast<std::size_t>(data.cols()), static_cast<std::size_t>(k)));
  }
  out.objectives.resize(out.subsets.size());
  parallel_for(out.subsets.size(),
               [&](std::size_t r) { out.objectives[r] = objective(out.subsets[r]); });
  auto sorted = out.objectives;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  out.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(m);
  out.median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  out.min = sorted.front();
  return out;
}

ColumnSet single_group_sample(std::span<const double> scores, double theta) {
  const double total = std::accumulate(scores.begin(), scores.end(), 0.0);
  if (total < theta - kThresholdSlack) {
    std::ostringstream os;
    os << "total score " << total << " is below theta " << theta;
    throw InfeasibleError(os.str());
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return scores[i] > scores[j]; });
  ColumnSet out;
  double mass = 0.0;
  for (std::size_t i : order) {
    if (mass >= theta - kThresholdSlack) break;
    out.push_back(i);
    mass += scores[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace faircss
