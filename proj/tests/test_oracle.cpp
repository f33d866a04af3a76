#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>

#include "faircss/baselines.hpp"
#include "faircss/errors.hpp"
#include "faircss/fair_rrqr.hpp"
#include "faircss/oracle.hpp"
#include "test_util.hpp"

namespace faircss {
namespace {

TEST(Combinations, BinomialAndOrder) {
  EXPECT_EQ(binomial(6, 2), 15u);
  EXPECT_EQ(binomial(63, 10), 127805525001ULL);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(200, 100), std::numeric_limits<std::uint64_t>::max());
  const auto all = testing::all_subsets(7, 3);
  for (std::uint64_t r = 0; r < all.size(); ++r) EXPECT_EQ(nth_combination(7, 3, r), all[r]);
  auto s = all.front();
  std::size_t count = 1;
  while (next_combination(s, 7)) {
    EXPECT_EQ(s, all[count]);
    ++count;
  }
  EXPECT_EQ(count, all.size());
}

TEST(BruteCss, DiagonalAndFullSet) {
  const auto r = brute_force_css(testing::diag({3, 2, 1}), 2);
  EXPECT_EQ(r.columns, (ColumnSet{0, 1}));
  EXPECT_NEAR(r.residual, 1.0, 1e-14);
  EXPECT_EQ(r.evaluated, 3u);
  const auto full = brute_force_css(testing::random_matrix(5, 4, 1), 4);
  EXPECT_NEAR(full.residual, 0.0, 1e-12);
}

TEST(BruteCss, MatchesIndependentScan) {
  const auto m = testing::random_matrix(7, 6, 3);
  const auto r = brute_force_css(m, 2);
  EXPECT_EQ(r.evaluated, 15u);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> arg;
  for (const auto& s : testing::all_subsets(6, 2)) {
    const double v = testing::pinv_residual(m.values(), s);
    if (v < best - 1e-10) {
      best = v;
      arg = s;
    }
  }
  EXPECT_EQ(r.columns, arg);
  EXPECT_NEAR(r.residual, best, 1e-10);
}

TEST(BruteCss, TiesGoToLexicographicallySmallest) {
  // Columns 0 and 2 are identical, so {0, 1} and {1, 2} tie.
  Eigen::MatrixXd m = testing::random_matrix(5, 3, 2).values();
  m.col(2) = m.col(0);
  const auto r = brute_force_css(DenseMatrix(m), 2);
  EXPECT_EQ(r.columns, (ColumnSet{0, 1}));
}

TEST(BruteCss, BudgetIsEnforced) {
  try {
    brute_force_css(testing::random_matrix(5, 12, 1), 6, 100);
    FAIL();
  } catch (const BudgetExceededError& e) {
    EXPECT_EQ(e.required(), 924u);
    EXPECT_EQ(e.budget(), 100u);
  }
}

TEST(BruteCss, WorkerCountDoesNotChangeResult) {
  const auto m = testing::random_matrix(8, 14, 9);
  setenv("FAIRCSS_WORKERS", "1", 1);
  const auto one = brute_force_css(m, 4);
  setenv("FAIRCSS_WORKERS", "4", 1);
  const auto four = brute_force_css(m, 4);
  unsetenv("FAIRCSS_WORKERS");
  EXPECT_EQ(one.columns, four.columns);
  EXPECT_EQ(one.residual, four.residual);
  EXPECT_EQ(one.evaluated, binomial(14, 4));
}

TEST(BruteFair, IdenticalGroupsMatchVanilla) {
  const auto a = testing::random_matrix(7, 6, 4);
  const auto data = GroupedData::stack(a, a);
  const auto fair = brute_force_fair_minmax(data, 2);
  const auto css = brute_force_css(a, 2);
  EXPECT_EQ(fair.columns, css.columns);
  EXPECT_NEAR(fair.minmax * best_rank_k_error(a, 2), css.residual, 1e-10);
}

TEST(BruteFair, DominatesHeuristics) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto data = testing::random_grouped(4, 4, 6, 80 + seed);
    const auto best = brute_force_fair_minmax(data, 2);
    const MinMaxObjective objective(data, 2);
    EXPECT_LE(best.minmax, objective(greedy_minmax(data, 2)) + 1e-10);
    EXPECT_LE(best.minmax, objective(fair_low_rrqr(data, 2).columns) + 1e-10);
    EXPECT_LE(best.minmax, objective(fair_high_rrqr(data, 2).columns) + 1e-10);
    EXPECT_DOUBLE_EQ(best.minmax, std::max(best.nloss_a, best.nloss_b));
    EXPECT_NEAR(best.residual_a / objective.denominator(Group::a), best.nloss_a, 1e-14);
  }
}

TEST(BruteFair, BlockDiagonalRatioExplodes) {
  // Group A lives on columns 0-2, group B on 3-5. With k = 2 and only
  // 2k - 1 = 3 columns, one group keeps at most one of its top-2 directions,
  // so its Nloss is at least sigma_2 / sqrt(sigma_3^2) of that group.
  for (double big : {10.0, 100.0, 1000.0}) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
    m(0, 0) = big;
    m(1, 1) = big;
    m(2, 2) = 1.0;
    m(3, 3) = big;
    m(4, 4) = big;
    m(5, 5) = 1.0;
    const auto data = GroupedData::stack(DenseMatrix(m.topRows(3)), DenseMatrix(m.bottomRows(3)));
    const MinMaxObjective objective(data, 2);
    const auto three = brute_force_fair_minmax(objective, 3);
    EXPECT_GE(three.minmax, big - 1e-9);
    const auto four = brute_force_fair_minmax(objective, 4);
    EXPECT_NEAR(four.minmax, 1.0, 1e-12);
  }
}

TEST(BruteMinScores, Examples) {
  LeveragePairs p;
  p.alphas = {0.9, 0.1, 0.5};
  p.betas = {0.1, 0.9, 0.5};
  const auto r = brute_force_min_fairness_scores(p, 0.9, 0.9);
  EXPECT_EQ(r.size, 2u);
  EXPECT_EQ(r.witness, (ColumnSet{0, 1}));
  p.alphas = {0.1, 0.95, 0.2};
  p.betas = {0.3, 0.95, 0.1};
  EXPECT_EQ(brute_force_min_fairness_scores(p, 0.9, 0.9).size, 1u);
  EXPECT_THROW(brute_force_min_fairness_scores(p, 2.0, 0.5), InfeasibleError);
  p.alphas.assign(30, 0.1);
  p.betas.assign(30, 0.1);
  EXPECT_THROW(brute_force_min_fairness_scores(p, 1.0, 1.0, 1000), BudgetExceededError);
}

TEST(BruteMinScores, SymmetricPairsMatchPrefix) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 100; ++t) {
    LeveragePairs p;
    for (int i = 0; i < 10; ++i) p.alphas.push_back(u(rng));
    p.betas = p.alphas;
    const double theta = 1.7;
    if (std::accumulate(p.alphas.begin(), p.alphas.end(), 0.0) < theta) continue;
    EXPECT_EQ(brute_force_min_fairness_scores(p, theta, theta).size,
              single_group_sample(p.alphas, theta).size());
  }
}

}  // namespace
}  // namespace faircss
