#include "faircss/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "faircss/errors.hpp"

namespace faircss {

const char* to_string(Group group) noexcept {
  return group == Group::a ? "A" : "B";
}

DenseMatrix::DenseMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw PreconditionError("matrix must have at least one row and one column (got " +
                            std::to_string(values_.rows()) + "x" +
                            std::to_string(values_.cols()) + ")");
  }
  if (!values_.allFinite()) {
    throw PreconditionError("matrix contains NaN or infinite entries");
  }
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const auto m = static_cast<Index>(rows.size());
  const auto n = m == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
  Eigen::MatrixXd values(m, n);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n) {
      throw PreconditionError("ragged row in matrix literal");
    }
    Index j = 0;
    for (double v : row) values(i, j++) = v;
    ++i;
  }
  return DenseMatrix(std::move(values));
}

DenseMatrix DenseMatrix::select_columns(std::span<const std::size_t> columns) const {
  Eigen::MatrixXd out(rows(), static_cast<Index>(columns.size()));
  for (Index j = 0; j < out.cols(); ++j) {
    out.col(j) = values_.col(static_cast<Index>(columns[static_cast<std::size_t>(j)]));
  }
  return DenseMatrix(std::move(out));
}

DenseMatrix DenseMatrix::select_rows(std::span<const std::size_t> rows) const {
  Eigen::MatrixXd out(static_cast<Index>(rows.size()), cols());
  for (Index i = 0; i < out.rows(); ++i) {
    out.row(i) = values_.row(static_cast<Index>(rows[static_cast<std::size_t>(i)]));
  }
  return DenseMatrix(std::move(out));
}

double rank_threshold(Index rows, Index cols, double sigma_max) noexcept {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * sigma_max;
}

namespace {

template <int Options>
Eigen::BDCSVD<Eigen::MatrixXd> checked_svd(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> decomposition(m, Options);
  if (decomposition.info() != Eigen::Success) {
    throw NumericalError("SVD failed to converge on a " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + " matrix");
  }
  return decomposition;
}

}  // namespace

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  return checked_svd<0>(m).singularValues();
}

Eigen::VectorXd singular_values(const DenseMatrix& m) {
  return singular_values(m.values());
}

SvdResult svd(const DenseMatrix& m) {
  const auto decomposition =
      checked_svd<Eigen::ComputeThinU | Eigen::ComputeThinV>(m.values());
  const Eigen::VectorXd& sigma = decomposition.singularValues();
  const double cutoff =
      sigma.size() == 0 ? 0.0 : rank_threshold(m.rows(), m.cols(), sigma(0));
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;

  SvdResult out;
  out.u = decomposition.matrixU().leftCols(rank);
  out.singular_values = sigma.head(rank);
  out.vt = decomposition.matrixV().leftCols(rank).transpose();
  return out;
}

double best_rank_k_error(const DenseMatrix& m, Index k) {
  if (k < 1) throw PreconditionError("best_rank_k_error: k must be positive");
  const Eigen::VectorXd sigma = singular_values(m);
  if (k >= sigma.size()) return 0.0;
  return sigma.tail(sigma.size() - k).norm();
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& c) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(c);
  const double largest = qr.maxPivot();
  if (largest == 0.0) return Eigen::MatrixXd(c.rows(), 0);
  qr.setThreshold(rank_threshold(c.rows(), c.cols(), 1.0));
  const Index rank = qr.rank();
  return qr.householderQ() * Eigen::MatrixXd::Identity(c.rows(), rank);
}

namespace {

double residual_against_basis(const Eigen::MatrixXd& m, const Eigen::MatrixXd& basis) {
  if (basis.cols() == 0) return m.norm();
  return (m - basis * (basis.transpose() * m)).norm();
}

}  // namespace

double projection_residual(const DenseMatrix& m, const DenseMatrix& c) {
  if (c.rows() != m.rows()) {
    throw PreconditionError("projection_residual: C has " + std::to_string(c.rows()) +
                            " rows, M has " + std::to_string(m.rows()));
  }
  return residual_against_basis(m.values(), orthonormal_basis(c.values()));
}

double projection_residual(const Eigen::MatrixXd& m,
                           std::span<const std::size_t> columns) {
  if (columns.empty()) return m.norm();
  Eigen::MatrixXd c(m.rows(), static_cast<Index>(columns.size()));
  for (Index j = 0; j < c.cols(); ++j) {
    const auto col = static_cast<Index>(columns[static_cast<std::size_t>(j)]);
    if (col < 0 || col >= m.cols()) {
      throw PreconditionError("column index " + std::to_string(col) + " out of range");
    }
    c.col(j) = m.col(col);
  }
  return residual_against_basis(m, orthonormal_basis(c));
}

PivotedQR pivoted_qr(const DenseMatrix& m) {
  const Eigen::MatrixXd& a = m.values();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const Index r = std::min(a.rows(), a.cols());

  PivotedQR out;
  out.q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), r);
  out.r = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const auto& indices = qr.colsPermutation().indices();
  out.perm.resize(static_cast<std::size_t>(a.cols()));
  for (Index j = 0; j < a.cols(); ++j) {
    out.perm[static_cast<std::size_t>(j)] = static_cast<std::size_t>(indices(j));
  }
  for (Index i = 0; i < r; ++i) {
    if (out.r(i, i) < 0.0) {
      out.r.row(i) *= -1.0;
      out.q.col(i) *= -1.0;
    }
  }
  return out;
}

Index numeric_rank(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd sigma = singular_values(m);
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double cutoff = rank_threshold(m.rows(), m.cols(), sigma(0));
  return (sigma.array() > cutoff).count();
}

Index numeric_rank(const DenseMatrix& m) { return numeric_rank(m.values()); }

}  // namespace faircss
