#pragma once

#include <span>
#include <vector>

#include "faircss/dataset.hpp"
#include "faircss/matrix.hpp"

namespace faircss {

/// Rank-k leverage score of every column: the squared norm of its row in the
/// n x k matrix of top-k right singular vectors. Scores lie in [0, 1] (small
/// negative or >1 round-off is clamped) and sum to k.
///
/// Throws RankError if k < 1 or k exceeds the numerical rank. When
/// sigma_k and sigma_{k+1} agree to within 1e-10 sigma_1 the top-k subspace
/// is not unique; the scores then come from whatever basis the SVD returned
/// and a warning is logged.
std::vector<double> leverage_scores(const DenseMatrix& m, Index k);

/// Per-column (alpha_i, beta_i) = (score in A, score in B).
struct LeveragePairs {
  Index k = 0;
  std::vector<double> alphas;
  std::vector<double> betas;

  std::size_t size() const noexcept { return alphas.size(); }
};

/// Requires k < rank(A) and k < rank(B); the RankError names the group that
/// fails.
LeveragePairs leverage_pairs(const GroupedData& data, Index k);

/// Checks ||M - C C^+ M||_F^2 <= (1 - eps)^-1 ||M - M_k||_F^2 for
/// C = M[:, subset], eps = k - (leverage mass of subset). Squared norms here,
/// unlike the reporting objective.
struct ThresholdReport {
  double leverage_mass = 0.0;
  double epsilon = 0.0;
  double residual_sq = 0.0;
  double best_sq = 0.0;
  double ratio = 0.0;  // residual_sq / best_sq, or 0 when both vanish
  double bound = 0.0;  // 1 / (1 - eps)
  bool pass = false;   // residual_sq <= bound * best_sq + 1e-8
};

/// Throws ThresholdShortfallError when the mass is <= k - 1.
ThresholdReport verify_threshold_bound(const DenseMatrix& m, Index k,
                                       std::span<const std::size_t> subset);

}  // namespace faircss
