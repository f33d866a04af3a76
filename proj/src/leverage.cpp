#include "faircss/leverage.hpp"

#include <algorithm>
#include <sstream>

#include "faircss/errors.hpp"
#include "faircss/log.hpp"

namespace faircss {

namespace {

constexpr double kBoundSlack = 1e-8;

std::vector<double> scores_from(const Eigen::BDCSVD<Eigen::MatrixXd>& decomposition,
                                Index k, const char* subject) {
  const Eigen::VectorXd& sigma = decomposition.singularValues();
  if (k < sigma.size() && sigma(0) > 0.0 &&
      sigma(k - 1) - sigma(k) <= 1e-10 * sigma(0)) {
    std::ostringstream os;
    os << subject << ": sigma_" << k << " and sigma_" << k + 1
       << " are tied; the rank-" << k << " leverage scores are not unique";
    log::warning(os.str());
  }
  const Eigen::MatrixXd v = decomposition.matrixV().leftCols(k);
  std::vector<double> out(static_cast<std::size_t>(v.rows()));
  for (Index i = 0; i < v.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = std::clamp(v.row(i).squaredNorm(), 0.0, 1.0);
  }
  return out;
}

Eigen::BDCSVD<Eigen::MatrixXd> right_svd(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> decomposition(m, Eigen::ComputeThinV);
  if (decomposition.info() != Eigen::Success) {
    throw NumericalError("SVD failed to converge while computing leverage scores");
  }
  return decomposition;
}

Index rank_of(const Eigen::BDCSVD<Eigen::MatrixXd>& d, const Eigen::MatrixXd& m) {
  const Eigen::VectorXd& sigma = d.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  return (sigma.array() > rank_threshold(m.rows(), m.cols(), sigma(0))).count();
}

}  // namespace

std::vector<double> leverage_scores(const DenseMatrix& m, Index k) {
  const auto decomposition = right_svd(m.values());
  const Index rank = rank_of(decomposition, m.values());
  if (k < 1 || k > rank) throw RankError("matrix", rank, k, "0 < k <= rank");
  return scores_from(decomposition, k, "matrix");
}

LeveragePairs leverage_pairs(const GroupedData& data, Index k) {
  LeveragePairs out;
  out.k = k;
  for (Group g : {Group::a, Group::b}) {
    const Eigen::MatrixXd& values = data.group_matrix(g).values();
    const auto decomposition = right_svd(values);
    const Index rank = rank_of(decomposition, values);
    const std::string subject = std::string("group ") + to_string(g);
    if (k < 1 || k >= rank) throw RankError(subject, rank, k, "0 < k < rank");
    (g == Group::a ? out.alphas : out.betas) =
        scores_from(decomposition, k, subject.c_str());
  }
  return out;
}

ThresholdReport verify_threshold_bound(const DenseMatrix& m, Index k,
                                       std::span<const std::size_t> subset) {
  const auto scores = leverage_scores(m, k);
  ThresholdReport report;
  for (std::size_t i : subset) {
    if (i >= scores.size()) {
      throw PreconditionError("subset index " + std::to_string(i) + " out of range");
    }
    report.leverage_mass += scores[i];
  }
  if (report.leverage_mass <= static_cast<double>(k - 1)) {
    throw ThresholdShortfallError(report.leverage_mass, k);
  }
  report.epsilon = std::max(0.0, static_cast<double>(k) - report.leverage_mass);
  const double residual = projection_residual(m.values(), subset);
  const double best = best_rank_k_error(m, k);
  report.residual_sq = residual * residual;
  report.best_sq = best * best;
  report.ratio = report.best_sq > 0.0 ? report.residual_sq / report.best_sq : 0.0;
  report.bound = 1.0 / (1.0 - report.epsilon);
  report.pass = report.residual_sq <= report.bound * report.best_sq + kBoundSlack;
  return report;
}

}  // namespace faircss
