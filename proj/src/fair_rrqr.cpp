#include "faircss/fair_rrqr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "faircss/errors.hpp"

namespace faircss {

namespace {

// Householder QR of `block`; returns the square orthogonal factor and writes
// the triangular factor back into `block`. Diagonal made non-negative.
Eigen::MatrixXd retriangularize(Eigen::Ref<Eigen::MatrixXd> block) {
  const Index rows = block.rows();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, rows);
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < std::min(rows, block.cols()); ++i) {
    if (r(i, i) < 0.0) {
      r.row(i) *= -1.0;
      q.col(i) *= -1.0;
    }
  }
  block = r;
  return q;
}

PivotedQR unpivoted_qr(const Eigen::MatrixXd& a) {
  const Index r = std::min(a.rows(), a.cols());
  Eigen::MatrixXd work = a;
  Eigen::MatrixXd q_full = retriangularize(work);
  PivotedQR out;
  out.q = q_full.leftCols(r);
  out.r = work.topRows(r);
  out.perm.resize(static_cast<std::size_t>(a.cols()));
  std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
  return out;
}

struct SpectralChoice {
  double sigma = 0.0;
  Eigen::VectorXd v;
};

// Right singular vector of `block` (rows zero-padded up to its column count
// so that index `which` always exists).
SpectralChoice singular_pair(const Eigen::MatrixXd& block, Index which) {
  const Index cols = block.cols();
  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(std::max(block.rows(), cols), cols);
  padded.topRows(block.rows()) = block;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(padded, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("SVD of an R block failed to converge");
  }
  return {svd.singularValues()(which), svd.matrixV().col(which)};
}

// Slot (relative to `offset`) of the largest |v| entry after sign
// normalization; near-ties go to the lowest original column index.
Index pivot_slot(Eigen::VectorXd v, const std::vector<std::size_t>& perm, Index offset) {
  Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  if (v(big) < 0.0) v = -v;
  const double top = v.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * top;
  Index best = -1;
  for (Index p = 0; p < v.size(); ++p) {
    if (std::abs(v(p)) < top - tol) continue;
    if (best < 0 || perm[static_cast<std::size_t>(offset + p)] <
                        perm[static_cast<std::size_t>(offset + best)]) {
      best = p;
    }
  }
  return best;
}

void swap_columns(std::vector<PivotedQR>& groups, std::vector<std::size_t>& perm, Index x,
                  Index y) {
  if (x == y) return;
  std::swap(perm[static_cast<std::size_t>(x)], perm[static_cast<std::size_t>(y)]);
  for (auto& g : groups) {
    g.r.col(x).swap(g.r.col(y));
    g.perm = perm;
  }
}

enum class Variant { low, high };

struct EngineResult {
  std::vector<PivotedQR> groups;
  std::vector<Index> consumed;
  std::vector<std::size_t> perm;
  std::vector<PivotStep> log;
};

// Folds column s into the part of R spanned by the selection. Rows
// [consumed, r) of columns [s, n) are re-triangularized; if column s has
// nothing left outside the span of earlier selections (a column that is
// zero, or dependent, within this group) no row is consumed, so the
// trailing block keeps the whole residual.
void absorb_column(PivotedQR& g, Index s, Index& consumed, double tol) {
  const Index rows = g.r.rows() - consumed;
  const Index n = g.r.cols();
  if (rows <= 0) return;
  const Eigen::MatrixXd q_hat = retriangularize(g.r.block(consumed, s, rows, n - s));
  g.q.middleCols(consumed, rows) = g.q.middleCols(consumed, rows) * q_hat;
  if (std::abs(g.r(consumed, s)) > tol) {
    ++consumed;
  } else {
    g.r.block(consumed, s, rows, 1).setZero();
  }
}

EngineResult run_engine(const std::vector<const Eigen::MatrixXd*>& matrices, Index k,
                        Variant variant) {
  EngineResult out;
  const Index n = matrices.front()->cols();
  std::vector<double> tol;
  for (const auto* m : matrices) {
    out.groups.push_back(unpivoted_qr(*m));
    out.consumed.push_back(0);
    tol.push_back(rank_threshold(m->rows(), m->cols(), m->norm()));
  }
  out.perm = out.groups.front().perm;

  auto record = [&](Index step, std::size_t winner, const std::vector<double>& sigmas,
                    Index from, Index to) {
    PivotStep ps;
    ps.step = step;
    ps.group = winner == 0 ? Group::a : Group::b;
    ps.sigma_a = sigmas[0];
    ps.sigma_b = sigmas.size() > 1 ? sigmas[1] : std::numeric_limits<double>::quiet_NaN();
    ps.column = out.perm[static_cast<std::size_t>(from)];
    ps.from = from;
    ps.to = to;
    out.log.push_back(ps);
  };

  if (variant == Variant::low) {
    for (Index s = 0; s < k; ++s) {
      std::vector<SpectralChoice> choices;
      std::vector<double> sigmas;
      for (std::size_t gi = 0; gi < out.groups.size(); ++gi) {
        const auto& g = out.groups[gi];
        const Index rows = std::max<Index>(g.r.rows() - out.consumed[gi], 0);
        const Eigen::MatrixXd block = g.r.bottomRightCorner(rows, n - s);
        choices.push_back(singular_pair(block, 0));
        sigmas.push_back(choices.back().sigma);
      }
      std::size_t winner = 0;
      for (std::size_t g = 1; g < choices.size(); ++g) {
        if (choices[g].sigma > choices[winner].sigma) winner = g;
      }
      const Index from = s + pivot_slot(choices[winner].v, out.perm, s);
      record(s, winner, sigmas, from, s);
      swap_columns(out.groups, out.perm, s, from);
      for (std::size_t gi = 0; gi < out.groups.size(); ++gi) {
        absorb_column(out.groups[gi], s, out.consumed[gi], tol[gi]);
      }
    }
  } else {
    Index step = 0;
    for (Index i = n; i > k; --i, ++step) {
      std::vector<SpectralChoice> choices;
      std::vector<double> sigmas;
      for (const auto& g : out.groups) {
        const Index rows = std::min(g.r.rows(), i);
        const Eigen::MatrixXd block = g.r.topLeftCorner(rows, i);
        choices.push_back(singular_pair(block, i - 1));
        sigmas.push_back(choices.back().sigma);
      }
      std::size_t winner = 0;
      for (std::size_t g = 1; g < choices.size(); ++g) {
        if (choices[g].sigma < choices[winner].sigma) winner = g;
      }
      const Index from = pivot_slot(choices[winner].v, out.perm, 0);
      record(step, winner, sigmas, from, i - 1);
      swap_columns(out.groups, out.perm, i - 1, from);
      for (auto& g : out.groups) {
        const Index rows = std::min(g.r.rows(), i);
        const Eigen::MatrixXd q_hat = retriangularize(g.r.topLeftCorner(rows, i));
        if (i < n) {
          g.r.topRightCorner(rows, n - i) = q_hat.transpose() * g.r.topRightCorner(rows, n - i);
        }
        g.q.leftCols(rows) = g.q.leftCols(rows) * q_hat;
      }
    }
    // Same bookkeeping as Low for the k survivors; only row rotations, so
    // the spectra used above are unaffected.
    for (std::size_t gi = 0; gi < out.groups.size(); ++gi) {
      for (Index s = 0; s < k; ++s) absorb_column(out.groups[gi], s, out.consumed[gi], tol[gi]);
    }
  }
  return out;
}

ColumnSet leading(const std::vector<std::size_t>& perm, Index k) {
  ColumnSet cols(perm.begin(), perm.begin() + k);
  std::sort(cols.begin(), cols.end());
  return cols;
}

void check_k(Index k, Index n) {
  if (k < 1 || k > n) {
    throw PreconditionError("k = " + std::to_string(k) + " must lie in [1, " +
                            std::to_string(n) + "]");
  }
}

RrqrResult run_fair(const GroupedData& data, Index k, Variant variant) {
  check_k(k, data.cols());
  for (Group g : {Group::a, Group::b}) {
    const Index rank = numeric_rank(data.group_matrix(g));
    if (k > rank) {
      throw RankError(std::string("group ") + to_string(g), rank, k, "k <= rank");
    }
  }
  auto engine = run_engine(
      {&data.group_matrix(Group::a).values(), &data.group_matrix(Group::b).values()}, k,
      variant);
  RrqrResult out;
  out.columns = leading(engine.perm, k);
  out.state.qr_a = std::move(engine.groups[0]);
  out.state.qr_b = std::move(engine.groups[1]);
  out.state.consumed_a = engine.consumed[0];
  out.state.consumed_b = engine.consumed[1];
  out.state.global_perm = std::move(engine.perm);
  out.state.step = static_cast<Index>(engine.log.size());
  out.state.log = std::move(engine.log);
  return out;
}

ClassicRrqrResult run_classic(const DenseMatrix& m, Index k, Variant variant) {
  check_k(k, m.cols());
  const Index rank = numeric_rank(m);
  if (k > rank) throw RankError("matrix", rank, k, "k <= rank");
  auto engine = run_engine({&m.values()}, k, variant);
  ClassicRrqrResult out;
  out.columns = leading(engine.perm, k);
  out.qr = std::move(engine.groups[0]);
  out.consumed = engine.consumed[0];
  out.log = std::move(engine.log);
  return out;
}

}  // namespace

RrqrResult fair_low_rrqr(const GroupedData& data, Index k) {
  return run_fair(data, k, Variant::low);
}

RrqrResult fair_high_rrqr(const GroupedData& data, Index k) {
  return run_fair(data, k, Variant::high);
}

ClassicRrqrResult low_rrqr(const DenseMatrix& m, Index k) {
  return run_classic(m, k, Variant::low);
}

ClassicRrqrResult high_rrqr(const DenseMatrix& m, Index k) {
  return run_classic(m, k, Variant::high);
}

double trailing_norm(const PivotedQR& qr, Index k, Index consumed) {
  const Index rows = qr.r.rows() - consumed;
  if (rows <= 0) return 0.0;
  return qr.r.bottomRightCorner(rows, qr.r.cols() - k).norm();
}

}  // namespace faircss
