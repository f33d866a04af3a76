#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace faircss {

using Index = Eigen::Index;

/// Column indices into a matrix. Operations that return a "set" keep it
/// sorted ascending; pivoting algorithms document their own order.
using ColumnSet = std::vector<std::size_t>;

enum class Group { a, b };

const char* to_string(Group group) noexcept;

/// Relative tolerance for U diag(s) Vt = M and M P = Q R checks.
inline constexpr double kReconstructionTolerance = 1e-8;
/// Tolerance for orthonormality of U, V and Q columns.
inline constexpr double kOrthogonalityTolerance = 1e-8;

/// Dense real matrix stored column-major (Eigen's default order): entry (i, j)
/// lives at values[j * rows + i]. Both dimensions are positive and every entry
/// is finite; the constructor rejects anything else.
class DenseMatrix {
 public:
  explicit DenseMatrix(Eigen::MatrixXd values);

  /// Row-wise literal, convenient in tests: {{1, 2}, {3, 4}}.
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  double operator()(Index r, Index c) const { return values_(r, c); }

  const Eigen::MatrixXd& values() const noexcept { return values_; }

  DenseMatrix select_columns(std::span<const std::size_t> columns) const;
  DenseMatrix select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    return lhs.values_.rows() == rhs.values_.rows() &&
           lhs.values_.cols() == rhs.values_.cols() &&
           lhs.values_ == rhs.values_;
  }

 private:
  Eigen::MatrixXd values_;
};

/// Thin SVD truncated to the numerical rank rho: U is m x rho, Vt is rho x n.
struct SvdResult {
  Eigen::MatrixXd u;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd vt;

  Index rank() const noexcept { return singular_values.size(); }
};

/// M P = Q R with P given as a column order: column j of M P is column
/// perm[j] of M. Q is m x r with orthonormal columns and R is r x n upper
/// triangular, r = min(m, n). diag(R) is non-negative.
struct PivotedQR {
  Eigen::MatrixXd q;
  Eigen::MatrixXd r;
  std::vector<std::size_t> perm;
};

/// max(rows, cols) * machine epsilon * sigma_max. Singular values at or
/// below this count as zero.
double rank_threshold(Index rows, Index cols, double sigma_max) noexcept;

/// All min(m, n) singular values, non-increasing.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);
Eigen::VectorXd singular_values(const DenseMatrix& m);

SvdResult svd(const DenseMatrix& m);

/// ||M - M_k||_F = sqrt(sum_{i > k} sigma_i^2); zero once k reaches the rank.
double best_rank_k_error(const DenseMatrix& m, Index k);

/// ||M - C C^+ M||_F, computed from an orthonormal basis of range(C).
/// Rank-deficient C is fine: only its numerically independent directions
/// enter the projector.
double projection_residual(const DenseMatrix& m, const DenseMatrix& c);

/// Same as above with C = M[:, columns]. An empty column list projects onto
/// the zero subspace and returns ||M||_F.
double projection_residual(const Eigen::MatrixXd& m,
                           std::span<const std::size_t> columns);

/// Orthonormal basis of range(c) from a column-pivoted Householder QR,
/// truncated at the numerical rank.
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& c);

/// Column-pivoted QR; each pivot is the remaining column with the largest
/// norm (lowest index on ties).
PivotedQR pivoted_qr(const DenseMatrix& m);

/// Count of sigma_i > rank_threshold.
Index numeric_rank(const DenseMatrix& m);
Index numeric_rank(const Eigen::MatrixXd& m);

}  // namespace faircss
