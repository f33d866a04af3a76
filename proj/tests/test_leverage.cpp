#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "faircss/errors.hpp"
#include "faircss/leverage.hpp"
#include "faircss/log.hpp"
#include "test_util.hpp"

#ifndef FAIRCSS_DATA_DIR
#error "FAIRCSS_DATA_DIR must be defined"
#endif

namespace faircss {
namespace {

using testing::diag;

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(LeverageScores, DiagonalMatrix) {
  const auto s = leverage_scores(diag({3, 2, 1}), 2);
  EXPECT_NEAR(s[0], 1.0, 1e-14);
  EXPECT_NEAR(s[1], 1.0, 1e-14);
  EXPECT_NEAR(s[2], 0.0, 1e-14);
}

TEST(LeverageScores, FullRankSquareIsAllOnes) {
  const auto m = testing::random_matrix(8, 5, 3);
  for (double v : leverage_scores(m, 5)) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(LeverageScores, MatchesProjectionDiagonal) {
  const auto m = testing::random_matrix(6, 5, 12);
  const auto s = leverage_scores(m, 3);
  // Independent route: eigenvectors of M^T M give the right singular vectors.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.values().transpose() * m.values());
  const Eigen::MatrixXd v = eig.eigenvectors().rightCols(3);
  const Eigen::MatrixXd p = v * v.transpose();
  for (Index i = 0; i < 5; ++i) EXPECT_NEAR(s[static_cast<std::size_t>(i)], p(i, i), 1e-10);
}

TEST(LeverageScores, RankPrecondition) {
  EXPECT_THROW(leverage_scores(diag({1, 1e-18}), 2), RankError);
  EXPECT_THROW(leverage_scores(diag({3, 2, 1}), 0), RankError);
  EXPECT_THROW(leverage_scores(diag({3, 2, 1}), 4), RankError);
}

TEST(LeverageScores, RotationInvariance) {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd m = testing::gaussian(7, 5, rng);
  const Eigen::MatrixXd q = testing::gaussian(7, 7, rng).householderQr().householderQ();
  const auto s1 = leverage_scores(DenseMatrix(m), 3);
  const auto s2 = leverage_scores(DenseMatrix(q * m), 3);
  for (std::size_t i = 0; i < s1.size(); ++i) EXPECT_NEAR(s1[i], s2[i], 1e-8);
}

TEST(LeverageScores, TieAtBoundaryIsLogged) {
  std::ostringstream sink;
  log::set_sink(&sink);
  const auto s = leverage_scores(diag({3, 2, 2}), 2);
  log::set_sink(nullptr);
  EXPECT_NE(sink.str().find("tied"), std::string::npos);
  EXPECT_NEAR(sum(s), 2.0, 1e-10);
}

TEST(LeveragePairs, IdenticalGroupsGiveIdenticalScores) {
  const auto a = testing::random_matrix(6, 4, 5);
  const auto data = GroupedData::stack(a, a);
  const auto p = leverage_pairs(data, 2);
  EXPECT_EQ(p.alphas, p.betas);
}

TEST(LeveragePairs, DisjointSupports) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 6);
  std::mt19937_64 rng(6);
  m.topLeftCorner(4, 3) = testing::gaussian(4, 3, rng);
  m.bottomRightCorner(4, 3) = testing::gaussian(4, 3, rng);
  const auto data = GroupedData::stack(DenseMatrix(m.topRows(4)), DenseMatrix(m.bottomRows(4)));
  const auto p = leverage_pairs(data, 2);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(p.betas[static_cast<std::size_t>(j)], 0.0, 1e-14);
  for (int j = 3; j < 6; ++j) EXPECT_NEAR(p.alphas[static_cast<std::size_t>(j)], 0.0, 1e-14);
}

TEST(LeveragePairs, HeartMassConservation) {
  const std::filesystem::path dir = FAIRCSS_DATA_DIR;
  const auto data = load_csv(dir / "heart.csv", PreprocessSpec::load(dir / "heart.json"));
  const auto p = leverage_pairs(data, 5);
  EXPECT_NEAR(sum(p.alphas), 5.0, 1e-8);
  EXPECT_NEAR(sum(p.betas), 5.0, 1e-8);
}

TEST(LeveragePairs, NamesTheFailingGroup) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(5, 4);
  b(0, 0) = 1;
  b(1, 1) = 1;
  const auto data = GroupedData::stack(testing::random_matrix(6, 4, 1), DenseMatrix(b));
  try {
    leverage_pairs(data, 2);
    FAIL();
  } catch (const RankError& e) {
    EXPECT_EQ(e.subject(), "group B");
    EXPECT_EQ(e.rank(), 2);
  }
}

TEST(ThresholdBound, AllColumnsAndExactTopColumns) {
  const auto m = testing::random_matrix(10, 6, 2);
  const std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  const auto r = verify_threshold_bound(m, 3, all);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.residual_sq, 0.0, 1e-20);
  const std::vector<std::size_t> top{0, 1};
  const auto d = verify_threshold_bound(diag({3, 2, 1}), 2, top);
  EXPECT_TRUE(d.pass);
  EXPECT_NEAR(d.epsilon, 0.0, 1e-14);
  EXPECT_NEAR(d.residual_sq, 1.0, 1e-14);
  EXPECT_NEAR(d.ratio, 1.0, 1e-14);
}

TEST(ThresholdBound, ShortfallIsNamed) {
  const std::vector<std::size_t> s{2};
  EXPECT_THROW(verify_threshold_bound(diag({3, 2, 1}), 2, s), ThresholdShortfallError);
}

TEST(ThresholdBound, MonteCarlo) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = testing::random_matrix(20, 15, 1000 + seed);
    const auto scores = leverage_scores(m, 4);
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<std::size_t> subset;
    double mass = 0.0;
    for (std::size_t i : order) {
      if (mass >= 3.5) break;
      subset.push_back(i);
      mass += scores[i];
    }
    const auto r = verify_threshold_bound(m, 4, subset);
    EXPECT_TRUE(r.pass) << "seed " << seed << " ratio " << r.ratio << " bound " << r.bound;
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

}  // namespace
}  // namespace faircss
