#include <gtest/gtest.h>

#include <numeric>

#include "faircss/baselines.hpp"
#include "faircss/errors.hpp"
#include "faircss/oracle.hpp"
#include "faircss/random.hpp"
#include "test_util.hpp"

namespace faircss {
namespace {

TEST(Greedy, AllColumnsWhenCountIsN) {
  const auto data = testing::random_grouped(8, 8, 5, 1);
  const MinMaxObjective objective(data, 2);
  auto picks = greedy_minmax(objective, 5);
  std::sort(picks.begin(), picks.end());
  EXPECT_EQ(picks, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_DOUBLE_EQ(objective(picks),
                   std::max(objective.nloss(Group::a, picks), objective.nloss(Group::b, picks)));
}

TEST(Greedy, SingleSpanningColumn) {
  // Column 2 is the dominant direction of both groups.
  std::mt19937_64 rng(2);
  Eigen::MatrixXd a = 0.05 * testing::gaussian(6, 4, rng);
  Eigen::MatrixXd b = 0.05 * testing::gaussian(5, 4, rng);
  a.col(2) = Eigen::VectorXd::Constant(6, 3.0);
  b.col(2) = Eigen::VectorXd::Constant(5, 3.0);
  a.col(0) += 0.2 * a.col(2);
  const auto data = GroupedData::stack(DenseMatrix(a), DenseMatrix(b));
  EXPECT_EQ(greedy_minmax(data, 1), (std::vector<std::size_t>{2}));
}

TEST(Greedy, AgainstOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto data = testing::random_grouped(4, 4, 6, 50 + seed);
    const MinMaxObjective objective(data, 2);
    const auto picks = greedy_minmax(data, 2);
    const auto best = brute_force_fair_minmax(data, 2);
    EXPECT_GE(objective(picks), best.minmax - 1e-10);
    std::size_t best_single = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 6; ++j) {
      const std::vector<std::size_t> one{j};
      const double v = objective(one);
      if (j == 0 || v < best_value - 1e-12 * best_value) {
        best_value = v;
        best_single = j;
      }
    }
    EXPECT_EQ(picks.front(), best_single);
  }
}

TEST(Greedy, NextPickNeverRaisesGroupResiduals) {
  const auto data = testing::random_grouped(7, 6, 7, 3);
  const MinMaxObjective objective(data, 3);
  const auto four = greedy_minmax(objective, 4);
  const std::vector<std::size_t> three(four.begin(), four.begin() + 3);
  for (Group g : {Group::a, Group::b}) {
    EXPECT_LE(objective.residual(g, four), objective.residual(g, three) + 1e-12);
  }
}

TEST(Greedy, CandidateRestriction) {
  const auto data = testing::random_grouped(6, 6, 6, 4);
  const MinMaxObjective objective(data, 2);
  const std::vector<std::size_t> pool{1, 4, 5};
  for (auto c : greedy_minmax(objective, 2, pool)) {
    EXPECT_TRUE(c == 1 || c == 4 || c == 5);
  }
  EXPECT_THROW(greedy_minmax(objective, 4, pool), PreconditionError);
}

TEST(Greedy, RankPrecondition) {
  const auto data = testing::random_grouped(3, 6, 5, 4);
  EXPECT_THROW(greedy_minmax(data, 3), RankError);
}

TEST(RandomSubsets, AllColumnsAreIdentical) {
  const auto data = testing::random_grouped(7, 7, 3, 1);
  const MinMaxObjective objective(data, 2);
  const auto summary = random_subsets(objective, 3, {10, 5});
  for (const auto& s : summary.subsets) EXPECT_EQ(s, (ColumnSet{0, 1, 2}));
  EXPECT_EQ(summary.min, summary.median);
  EXPECT_EQ(summary.objectives.front(), summary.objectives.back());
}

TEST(RandomSubsets, SeedReproducible) {
  const auto data = testing::random_grouped(6, 6, 6, 2);
  const auto a = random_subsets(data, 2, {30, 11});
  const auto b = random_subsets(data, 2, {30, 11});
  EXPECT_EQ(a.subsets, b.subsets);
  EXPECT_EQ(a.objectives, b.objectives);
  EXPECT_EQ(a.median, b.median);
  const auto c = random_subsets(data, 2, {30, 12});
  EXPECT_NE(a.subsets, c.subsets);
}

TEST(RandomSubsets, SamplerIsPinned) {
  // Guards the documented algorithm: changing the generator or the mapping
  // would change these values.
  SubsetSampler sampler(42);
  const auto first = sampler.subset(10, 3);
  SubsetSampler again(42);
  EXPECT_EQ(again.subset(10, 3), first);
  std::mt19937_64 engine(42);
  const std::uint64_t x = engine();
  EXPECT_EQ(SubsetSampler(42).uniform(1000), x % 1000);
}

TEST(RandomSubsets, MeanMatchesExhaustiveAverage) {
  const auto data = testing::random_grouped(5, 5, 6, 8);
  const MinMaxObjective objective(data, 2);
  double total = 0;
  const auto subsets = testing::all_subsets(6, 2);
  for (const auto& s : subsets) total += objective(s);
  const double exact = total / static_cast<double>(subsets.size());
  double var = 0;
  for (const auto& s : subsets) var += std::pow(objective(s) - exact, 2);
  var /= static_cast<double>(subsets.size());
  const auto summary = random_subsets(data, 2, {4000, 3});
  EXPECT_NEAR(summary.mean, exact, 4.0 * std::sqrt(var / 4000.0) + 1e-12);
}

TEST(SingleGroupSample, Examples) {
  EXPECT_EQ(single_group_sample(std::vector<double>{0.9, 0.6, 0.5}, 1.4), (ColumnSet{0, 1}));
  EXPECT_EQ(single_group_sample(std::vector<double>{0.3, 0.9, 0.5}, 0.8), (ColumnSet{1}));
  EXPECT_THROW(single_group_sample(std::vector<double>{0.3, 0.2}, 0.6), InfeasibleError);
}

TEST(SingleGroupSample, PrefixIsMinimal) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> s(9);
    for (auto& v : s) v = u(rng);
    const double theta = 0.5 * std::accumulate(s.begin(), s.end(), 0.0);
    const auto got = single_group_sample(s, theta);
    LeveragePairs p;
    p.alphas = s;
    p.betas = s;
    EXPECT_EQ(got.size(), brute_force_min_fairness_scores(p, theta, theta).size);
  }
}

}  // namespace
}  // namespace faircss
