#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "faircss/errors.hpp"
#include "faircss/evaluation.hpp"
#include "faircss/leverage.hpp"
#include "faircss/oracle.hpp"
#include "test_util.hpp"

#ifndef FAIRCSS_DATA_DIR
#error "FAIRCSS_DATA_DIR must be defined"
#endif

namespace faircss {
namespace {

TEST(Nloss, FullSpanIsZero) {
  const auto data = testing::random_grouped(6, 6, 4, 1);
  const std::vector<std::size_t> all{0, 1, 2, 3};
  EXPECT_NEAR(nloss(data, Group::a, all, 2), 0.0, 1e-12);
}

TEST(Nloss, TopDirectionsGiveOne) {
  const auto a = testing::diag({4, 3, 2, 1});
  const auto data = GroupedData::stack(a, a);
  const std::vector<std::size_t> top{0, 1};
  EXPECT_NEAR(nloss(data, Group::a, top, 2), 1.0, 1e-14);
  EXPECT_NEAR(minmax_loss(data, top, 2), nloss(data, Group::b, top, 2), 0.0);
}

TEST(Nloss, MatchesPseudoinverse) {
  const auto data = testing::random_grouped(7, 6, 5, 2);
  const std::vector<std::size_t> cols{0, 3};
  for (Group g : {Group::a, Group::b}) {
    const auto& gm = data.group_matrix(g);
    const double expected = testing::pinv_residual(gm.values(), cols) / best_rank_k_error(gm, 2);
    EXPECT_NEAR(nloss(data, g, cols, 2), expected, 1e-10);
  }
}

TEST(Nloss, RankPrecondition) {
  const auto data = testing::random_grouped(2, 6, 4, 3);
  const std::vector<std::size_t> cols{0};
  EXPECT_THROW(nloss(data, Group::a, cols, 2), RankError);
  EXPECT_THROW(nloss(data, Group::a, std::vector<std::size_t>{9}, 1), PreconditionError);
}

TEST(Nloss, DenominatorCacheIsConsistent) {
  const auto data = testing::random_grouped(6, 6, 4, 4);
  const double first = group_denominator(data, Group::b, 2);
  EXPECT_EQ(group_denominator(data, Group::b, 2), first);
  EXPECT_EQ(first, best_rank_k_error(data.group_matrix(Group::b), 2));
}

TEST(MinMax, IsMaxOfGroupLosses) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto data = testing::random_grouped(6, 5, 5, 10 + seed);
    ColumnSet cols{seed % 5, (seed + 1) % 5};
    std::sort(cols.begin(), cols.end());
    const auto r = evaluate_selection(data, cols, 2);
    EXPECT_EQ(r.minmax, std::max(r.nloss_a, r.nloss_b));
    EXPECT_GE(r.nloss_a, 1.0 - 1e-10);
    EXPECT_GE(r.nloss_b, 1.0 - 1e-10);
    EXPECT_NEAR(r.vanilla_residual, projection_residual(data.matrix().values(), cols), 0.0);
  }
}

TEST(MinMax, ThresholdCertifiedSetsObeyBound) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto data = testing::random_grouped(15, 15, 10, 200 + seed);
    const Index k = 3;
    const auto pairs = leverage_pairs(data, k);
    std::vector<std::size_t> order(10);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return std::min(pairs.alphas[x], pairs.betas[x]) > std::min(pairs.alphas[y], pairs.betas[y]);
    });
    std::vector<std::size_t> s;
    double ma = 0, mb = 0;
    for (std::size_t i : order) {
      if (ma > k - 0.6 && mb > k - 0.6) break;
      s.push_back(i);
      ma += pairs.alphas[i];
      mb += pairs.betas[i];
    }
    const double eps = k - std::min(ma, mb);
    ASSERT_LT(eps, 1.0);
    EXPECT_LE(minmax_loss(data, s, k), 1.0 / std::sqrt(1.0 - eps) + 1e-8);
  }
}

TEST(Report, CsvAndJsonCarrySchema) {
  const auto data = testing::random_grouped(5, 5, 4, 5);
  auto r = evaluate_selection(data, {0, 2}, 2, "greedy", "toy");
  r.wall_time = 0.5;
  std::ostringstream csv;
  write_report_csv(csv, {r});
  EXPECT_EQ(csv.str().rfind(kReportHeader, 0), 0u);
  EXPECT_NE(csv.str().find("dataset,algorithm,k,c,nloss_a,nloss_b,minmax,vanilla_residual,wall_time"),
            std::string::npos);
  EXPECT_NE(csv.str().find("toy,greedy,2,2,"), std::string::npos);
  const auto j = report_json({r});
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["rows"][0]["algorithm"], "greedy");
  EXPECT_EQ(j["rows"][0]["minmax"].get<double>(), r.minmax);
}

TEST(PriceOfFairness, IdenticalGroupsHaveNoGap) {
  const auto a = testing::random_matrix(8, 6, 6);
  const auto data = GroupedData::stack(a, a);
  for (const auto& row : price_of_fairness_report(data, 1, 3, kDefaultBudget)) {
    EXPECT_EQ(row.opt_columns, row.fair_columns);
    EXPECT_NEAR(row.fair_m, row.opt_m, 1e-12);
  }
}

TEST(PriceOfFairness, DefinitionalDominance) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto data = testing::random_grouped(6, 5, 7, 60 + seed);
    for (const auto& row : price_of_fairness_report(data, 1, 3, kDefaultBudget)) {
      EXPECT_GE(row.fair_m, row.opt_m - 1e-10);
      EXPECT_LE(row.minmax_fair, row.minmax_opt + 1e-10);
      EXPECT_LE(std::max(row.fair_a, row.fair_b), std::max(row.opt_a, row.opt_b) + 1e-10);
    }
  }
}

TEST(PriceOfFairness, HeartShowsGapAtFive) {
  const std::filesystem::path dir = FAIRCSS_DATA_DIR;
  const auto data = load_csv(dir / "heart.csv", PreprocessSpec::load(dir / "heart.json"));
  const auto rows = price_of_fairness_report(data, 2, 6, kDefaultBudget);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& row : rows) {
    EXPECT_GE(row.fair_m, row.opt_m - 1e-10);
    EXPECT_LE(row.minmax_fair, row.minmax_opt + 1e-10);
  }
  EXPECT_GT(rows[3].fair_m - rows[3].opt_m, 1e-3);
  std::ostringstream os;
  write_pof_csv(os, rows);
  EXPECT_EQ(os.str().rfind(kPofHeader, 0), 0u);
}

TEST(PriceOfFairness, BudgetIsCheckedUpFront) {
  const auto data = testing::random_grouped(20, 20, 16, 1);
  EXPECT_THROW(price_of_fairness_report(data, 2, 8, 1000), BudgetExceededError);
}

}  // namespace
}  // namespace faircss
