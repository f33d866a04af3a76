#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "faircss/dataset.hpp"
#include "faircss/matrix.hpp"

namespace faircss::testing {

inline Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

inline DenseMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return DenseMatrix(gaussian(rows, cols, rng));
}

/// Gaussian matrix with unit-norm columns, rows split into the first m_a
/// (group A) and the rest.
inline GroupedData random_grouped(Eigen::Index m_a, Eigen::Index m_b, Eigen::Index n,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd m = gaussian(m_a + m_b, n, rng);
  m.colwise().normalize();
  return GroupedData::stack(DenseMatrix(m.topRows(m_a)), DenseMatrix(m.bottomRows(m_b)));
}

/// ||M - C C^+ M||_F through an explicitly formed pseudoinverse.
inline double pinv_residual(const Eigen::MatrixXd& m, const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd c(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    c.col(static_cast<Eigen::Index>(j)) = m.col(static_cast<Eigen::Index>(cols[j]));
  }
  const Eigen::MatrixXd pinv = c.completeOrthogonalDecomposition().pseudoInverse();
  return (m - c * (pinv * m)).norm();
}

/// Every k-subset of [0, n) in lexicographic order.
inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> s;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (s.size() == k) {
      out.push_back(s);
      return;
    }
    for (std::size_t v = start; v < n; ++v) {
      s.push_back(v);
      self(self, v + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline DenseMatrix diag(std::initializer_list<double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Eigen::VectorXd d(n);
  Eigen::Index i = 0;
  for (double v : values) d(i++) = v;
  return DenseMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

}  // namespace faircss::testing
