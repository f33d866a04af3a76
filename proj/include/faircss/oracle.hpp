#pragma once

#include <cstdint>
#include <vector>

#include "faircss/dataset.hpp"
#include "faircss/evaluation.hpp"
#include "faircss/leverage.hpp"
#include "faircss/matrix.hpp"

namespace faircss {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Optimal values within this absolute margin count as equal; the
/// lexicographically smaller subset then wins.
inline constexpr double kOracleTieEpsilon = 1e-10;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// The rank-th k-subset of [0, n) in lexicographic order.
std::vector<std::size_t> nth_combination(std::size_t n, std::size_t k, std::uint64_t rank);

/// Advances to the lexicographic successor; false after the last subset.
bool next_combination(std::vector<std::size_t>& subset, std::size_t n);

struct CssOptimum {
  ColumnSet columns;
  double residual = 0.0;
  std::uint64_t evaluated = 0;
};

/// Minimizes ||M - P_C M||_F over all k-subsets. Subsets are scanned in
/// lexicographic chunks on worker threads and reduced in chunk order, so the
/// result does not depend on the worker count.
CssOptimum brute_force_css(const DenseMatrix& m, Index k,
                           std::uint64_t budget = kDefaultBudget);

struct FairOptimum {
  ColumnSet columns;
  double minmax = 0.0;
  double nloss_a = 0.0;
  double nloss_b = 0.0;
  double residual_a = 0.0;  // unnormalized group residuals
  double residual_b = 0.0;
  double residual_m = 0.0;  // residual of the full matrix
  std::uint64_t evaluated = 0;
};

/// Minimizes max(Nloss_A, Nloss_B) over all k-subsets; requires
/// k < rank(A), rank(B).
FairOptimum brute_force_fair_minmax(const GroupedData& data, Index k,
                                    std::uint64_t budget = kDefaultBudget);

/// Same, but picks `count` columns against a fixed objective (its target
/// rank may differ from count).
FairOptimum brute_force_fair_minmax(const MinMaxObjective& objective, Index count,
                                    std::uint64_t budget = kDefaultBudget);

struct MinScoresOptimum {
  std::size_t size = 0;
  ColumnSet witness;  // lexicographically first subset of that size
  std::uint64_t evaluated = 0;
};

/// Smallest |S| with sum_S alpha >= theta_a and sum_S beta >= theta_b (both
/// up to the sampler's 1e-12 slack). Sizes are tried in increasing order.
/// Throws InfeasibleError if even S = [n] fails, BudgetExceededError if
/// 2^n exceeds the budget.
MinScoresOptimum brute_force_min_fairness_scores(const LeveragePairs& pairs, double theta_a,
                                                 double theta_b,
                                                 std::uint64_t budget = kDefaultBudget);

}  // namespace faircss
