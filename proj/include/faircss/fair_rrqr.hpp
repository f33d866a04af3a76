#pragma once

#include <vector>

#include "faircss/dataset.hpp"
#include "faircss/matrix.hpp"

namespace faircss {

/// One pivot of a fair RRQR run. Positions are 0-based slots of the shared
/// column order; `column` is the original index that moved.
struct PivotStep {
  Index step = 0;
  Group group = Group::a;  // group whose singular vector chose the pivot
  double sigma_a = 0.0;    // the compared singular value of each group
  double sigma_b = 0.0;
  std::size_t column = 0;
  Index from = 0;
  Index to = 0;
};

/// Per-group factorizations A P = Q_A R_A and B P = Q_B R_B under one shared
/// column order P. Both perms always equal global_perm. R is stored as
/// min(m_g, n) x n upper trapezoidal with a non-negative diagonal.
struct FairQrState {
  PivotedQR qr_a;
  PivotedQR qr_b;
  std::vector<std::size_t> global_perm;
  Index step = 0;
  // Rows of R_A / R_B spanned by the selected columns. Equal to k unless a
  // selected column is zero or dependent within that group.
  Index consumed_a = 0;
  Index consumed_b = 0;
  std::vector<PivotStep> log;
};

struct RrqrResult {
  ColumnSet columns;  // the first k entries of global_perm, sorted
  FairQrState state;
};

/// Both variants start from an unpivoted Householder QR of each group (the
/// identity order). Pivots are transpositions. Ties between the groups go to
/// A; ties inside a singular vector go to the lowest original column index.
/// Before choosing, v is flipped so its largest-magnitude entry is positive.
///
/// Low: for s = 0..k-1, take the trailing blocks R_g[s:, s:] (more rows if a
/// pick added no new direction to a group, see consumed_a), pick the group
/// with the larger top singular value, move the column where its top right
/// singular vector peaks to slot s, and re-triangularize both trailing
/// blocks (the already-fixed rows just have their columns swapped).
///
/// High: for i = n..k+1, take the leading i-column blocks, pick the group
/// with the smaller i-th singular value, move the column where the matching
/// right singular vector peaks to slot i-1, and re-triangularize both
/// leading blocks (the columns to their right are rotated along). Exactly
/// n - k columns are pushed out; the k that remain are selected.
///
/// Requires 1 <= k <= min(rank(A), rank(B)); throws RankError naming the
/// group otherwise.
RrqrResult fair_low_rrqr(const GroupedData& data, Index k);
RrqrResult fair_high_rrqr(const GroupedData& data, Index k);

/// Single-matrix versions with the same pivot rules. With two identical
/// groups the fair variants reduce to these exactly.
struct ClassicRrqrResult {
  ColumnSet columns;
  PivotedQR qr;
  Index consumed = 0;
  std::vector<PivotStep> log;
};

ClassicRrqrResult low_rrqr(const DenseMatrix& m, Index k);
ClassicRrqrResult high_rrqr(const DenseMatrix& m, Index k);

/// ||R[consumed:, k:]||_F: the residual of projecting the group onto its
/// first k permuted columns. consumed = k when those columns are independent.
double trailing_norm(const PivotedQR& qr, Index k, Index consumed);

}  // namespace faircss
