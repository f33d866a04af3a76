#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "faircss/dataset.hpp"
#include "faircss/matrix.hpp"

namespace faircss {

/// Best rank-k error of one group, ||G - G_k||_F. Requires rank(G) > k
/// (RankError otherwise). Cached process-wide by (data fingerprint, group,
/// k); the cache is thread-safe.
double group_denominator(const GroupedData& data, Group group, Index k);

/// ||G - C_G C_G^+ G||_F / ||G - G_k||_F for the group's rows of the chosen
/// columns. Unsquared.
double nloss(const GroupedData& data, Group group, std::span<const std::size_t> columns,
             Index k);

/// max(Nloss_A, Nloss_B).
double minmax_loss(const GroupedData& data, std::span<const std::size_t> columns, Index k);

/// The fair objective with its two denominators fixed at construction. The
/// number of columns evaluated is independent of the target rank, so one
/// objective serves k-column selections, over-selections and candidate
/// pools alike. Holds a reference to `data`.
class MinMaxObjective {
 public:
  MinMaxObjective(const GroupedData& data, Index target_rank);

  const GroupedData& data() const noexcept { return *data_; }
  Index target_rank() const noexcept { return k_; }
  double denominator(Group g) const noexcept { return g == Group::a ? den_a_ : den_b_; }

  double residual(Group g, std::span<const std::size_t> columns) const;
  double nloss(Group g, std::span<const std::size_t> columns) const;
  double operator()(std::span<const std::size_t> columns) const;

 private:
  const GroupedData* data_;
  Index k_;
  double den_a_;
  double den_b_;
};

struct SelectionResult {
  ColumnSet columns;
  double nloss_a = 0.0;
  double nloss_b = 0.0;
  double minmax = 0.0;  // exactly max(nloss_a, nloss_b)
  double vanilla_residual = 0.0;  // ||M - P_C M||_F on the full matrix
  std::string algorithm;
  std::string dataset;
  Index k = 0;
  Index c = 0;  // stage-one size for two-stage runs, else |columns|
  double wall_time = 0.0;  // seconds
};

SelectionResult evaluate_selection(const GroupedData& data, const ColumnSet& columns,
                                   Index k, std::string algorithm = {},
                                   std::string dataset = {});

inline constexpr const char* kReportHeader = "# faircss report v1";
inline constexpr int kReportSchema = 1;

/// CSV columns: dataset, algorithm, k, c, nloss_a, nloss_b, minmax,
/// vanilla_residual, wall_time, columns (space separated).
void write_report_csv(std::ostream& out, const std::vector<SelectionResult>& rows);
nlohmann::json to_json(const SelectionResult& r);
nlohmann::json report_json(const std::vector<SelectionResult>& rows);

/// One row of the price-of-fairness table. opt_* describe the subset that
/// minimizes the residual of M, fair_* the subset that minimizes the MinMax
/// objective. opt_m and fair_m are unnormalized residuals of M; the group
/// entries are Nloss values. minmax_opt is the MinMax objective of the
/// vanilla optimum, minmax_fair that of the fair optimum.
struct PriceOfFairnessRow {
  Index k = 0;
  double opt_m = 0.0;
  double opt_a = 0.0;
  double opt_b = 0.0;
  double minmax_opt = 0.0;
  double fair_m = 0.0;
  double fair_a = 0.0;
  double fair_b = 0.0;
  double minmax_fair = 0.0;
  ColumnSet opt_columns;
  ColumnSet fair_columns;
};

/// Exhaustive over every k in [k_min, k_max]; throws BudgetExceededError if
/// any C(n, k) exceeds `budget`.
std::vector<PriceOfFairnessRow> price_of_fairness_report(const GroupedData& data,
                                                         Index k_min, Index k_max,
                                                         std::uint64_t budget);

inline constexpr const char* kPofHeader = "# faircss price-of-fairness v1";
void write_pof_csv(std::ostream& out, const std::vector<PriceOfFairnessRow>& rows);

/// Space-separated index list, e.g. "0 3 7".
std::string join_columns(const ColumnSet& columns);

}  // namespace faircss
