#include "faircss/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "faircss/errors.hpp"
#include "faircss/fair_sampler.hpp"
#include "faircss/parallel.hpp"

namespace faircss {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t factor = n - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t reduced = result / g;
    const std::uint64_t divisor = i / g;
    const std::uint64_t f = factor / divisor;
    if (f != 0 && reduced > kMax / f) return kMax;
    result = reduced * f;
  }
  return result;
}

std::vector<std::size_t> nth_combination(std::size_t n, std::size_t k, std::uint64_t rank) {
  std::vector<std::size_t> out;
  out.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t v = next; v < n; ++v) {
      const std::uint64_t below = binomial(n - v - 1, k - slot - 1);
      if (rank < below) {
        out.push_back(v);
        next = v + 1;
        break;
      }
      rank -= below;
    }
  }
  return out;
}

bool next_combination(std::vector<std::size_t>& subset, std::size_t n) {
  const std::size_t k = subset.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (subset[i] < n - k + i) {
      ++subset[i];
      for (std::size_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

namespace {

constexpr std::uint64_t kChunk = 2048;

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> subset;
  bool found = false;
};

bool improves(double candidate, const Best& best) {
  return !best.found || candidate < best.value - kOracleTieEpsilon;
}

// Lexicographic scan of all k-subsets of [0, n), chunked across workers and
// reduced in chunk order.
template <typename Eval>
Best scan(std::size_t n, std::size_t k, std::uint64_t budget, std::uint64_t& evaluated,
          const Eval& eval) {
  const std::uint64_t total = binomial(n, k);
  if (total > budget) throw BudgetExceededError(total, budget);
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<Best> partial(static_cast<std::size_t>(chunks));
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    auto subset = nth_combination(n, k, begin);
    Best& best = partial[c];
    for (std::uint64_t r = begin; r < end; ++r) {
      const double v = eval(subset);
      if (improves(v, best)) {
        best.value = v;
        best.subset = subset;
        best.found = true;
      }
      next_combination(subset, n);
    }
  });
  Best out;
  for (auto& p : partial) {
    if (p.found && improves(p.value, out)) out = std::move(p);
  }
  evaluated = total;
  return out;
}

void check_count(Index k, Index n) {
  if (k < 1 || k > n) {
    throw PreconditionError("subset size " + std::to_string(k) + " must lie in [1, " +
                            std::to_string(n) + "]");
  }
}

}  // namespace

CssOptimum brute_force_css(const DenseMatrix& m, Index k, std::uint64_t budget) {
  check_count(k, m.cols());
  CssOptimum out;
  const auto best = scan(static_cast<std::size_t>(m.cols()), static_cast<std::size_t>(k),
                         budget, out.evaluated, [&](const std::vector<std::size_t>& s) {
                           return projection_residual(m.values(), s);
                         });
  out.columns = best.subset;
  out.residual = best.value;
  return out;
}

FairOptimum brute_force_fair_minmax(const MinMaxObjective& objective, Index count,
                                    std::uint64_t budget) {
  const GroupedData& data = objective.data();
  check_count(count, data.cols());
  FairOptimum out;
  const auto best = scan(static_cast<std::size_t>(data.cols()),
                         static_cast<std::size_t>(count), budget, out.evaluated,
                         [&](const std::vector<std::size_t>& s) { return objective(s); });
  out.columns = best.subset;
  out.residual_a = objective.residual(Group::a, out.columns);
  out.residual_b = objective.residual(Group::b, out.columns);
  out.nloss_a = out.residual_a / objective.denominator(Group::a);
  out.nloss_b = out.residual_b / objective.denominator(Group::b);
  out.minmax = std::max(out.nloss_a, out.nloss_b);
  out.residual_m = projection_residual(data.matrix().values(), out.columns);
  return out;
}

FairOptimum brute_force_fair_minmax(const GroupedData& data, Index k, std::uint64_t budget) {
  check_count(k, data.cols());
  const auto total = binomial(static_cast<std::uint64_t>(data.cols()),
                              static_cast<std::uint64_t>(k));
  if (total > budget) throw BudgetExceededError(total, budget);
  return brute_force_fair_minmax(MinMaxObjective(data, k), k, budget);
}

MinScoresOptimum brute_force_min_fairness_scores(const LeveragePairs& pairs, double theta_a,
                                                 double theta_b, std::uint64_t budget) {
  const std::size_t n = pairs.alphas.size();
  if (pairs.betas.size() != n) throw PreconditionError("leverage pairs have mismatched lengths");
  if (n >= 64 || (std::uint64_t{1} << n) > budget) {
    throw BudgetExceededError(n >= 64 ? std::numeric_limits<std::uint64_t>::max()
                                      : (std::uint64_t{1} << n),
                              budget);
  }
  auto ok = [&](double mass, double theta) { return mass >= theta - kThresholdSlack; };
  MinScoresOptimum out;
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<std::size_t> subset(size);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    do {
      ++out.evaluated;
      double a = 0.0;
      double b = 0.0;
      for (std::size_t i : subset) {
        a += pairs.alphas[i];
        b += pairs.betas[i];
      }
      if (ok(a, theta_a) && ok(b, theta_b)) {
        out.size = size;
        out.witness = subset;
        return out;
      }
    } while (next_combination(subset, n));
  }
  throw InfeasibleError("no subset reaches both thresholds");
}

}  // namespace faircss
