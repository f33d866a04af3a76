#include "faircss/evaluation.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>

#include "faircss/csv.hpp"
#include "faircss/errors.hpp"
#include "faircss/oracle.hpp"

namespace faircss {

namespace {

std::mutex g_cache_mutex;
std::map<std::tuple<std::uint64_t, int, Index>, double> g_denominators;

void check_columns(const GroupedData& data, std::span<const std::size_t> columns) {
  for (std::size_t c : columns) {
    if (c >= static_cast<std::size_t>(data.cols())) {
      throw PreconditionError("column index " + std::to_string(c) + " out of range (n = " +
                              std::to_string(data.cols()) + ")");
    }
  }
}

std::string format(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double group_denominator(const GroupedData& data, Group group, Index k) {
  const auto key = std::make_tuple(data.fingerprint(), static_cast<int>(group), k);
  {
    std::lock_guard lock(g_cache_mutex);
    if (auto it = g_denominators.find(key); it != g_denominators.end()) return it->second;
  }
  const DenseMatrix& g = data.group_matrix(group);
  const Eigen::VectorXd sigma = singular_values(g);
  const Index rank =
      sigma.size() == 0 || sigma(0) == 0.0
          ? 0
          : (sigma.array() > rank_threshold(g.rows(), g.cols(), sigma(0))).count();
  if (k < 1 || rank <= k) {
    throw RankError(std::string("group ") + to_string(group), rank, k, "rank > k");
  }
  const double value = sigma.tail(sigma.size() - k).norm();
  std::lock_guard lock(g_cache_mutex);
  g_denominators.emplace(key, value);
  return value;
}

double nloss(const GroupedData& data, Group group, std::span<const std::size_t> columns,
             Index k) {
  return MinMaxObjective(data, k).nloss(group, columns);
}

double minmax_loss(const GroupedData& data, std::span<const std::size_t> columns, Index k) {
  return MinMaxObjective(data, k)(columns);
}

MinMaxObjective::MinMaxObjective(const GroupedData& data, Index target_rank)
    : data_(&data),
      k_(target_rank),
      den_a_(group_denominator(data, Group::a, target_rank)),
      den_b_(group_denominator(data, Group::b, target_rank)) {}

double MinMaxObjective::residual(Group g, std::span<const std::size_t> columns) const {
  check_columns(*data_, columns);
  return projection_residual(data_->group_matrix(g).values(), columns);
}

double MinMaxObjective::nloss(Group g, std::span<const std::size_t> columns) const {
  return residual(g, columns) / denominator(g);
}

double MinMaxObjective::operator()(std::span<const std::size_t> columns) const {
  return std::max(nloss(Group::a, columns), nloss(Group::b, columns));
}

SelectionResult evaluate_selection(const GroupedData& data, const ColumnSet& columns,
                                   Index k, std::string algorithm, std::string dataset) {
  const MinMaxObjective objective(data, k);
  SelectionResult r;
  r.columns = columns;
  r.nloss_a = objective.nloss(Group::a, columns);
  r.nloss_b = objective.nloss(Group::b, columns);
  r.minmax = std::max(r.nloss_a, r.nloss_b);
  r.vanilla_residual = projection_residual(data.matrix().values(), columns);
  r.algorithm = std::move(algorithm);
  r.dataset = std::move(dataset);
  r.k = k;
  r.c = static_cast<Index>(columns.size());
  return r;
}

std::string join_columns(const ColumnSet& columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(columns[i]);
  }
  return out;
}

void write_report_csv(std::ostream& out, const std::vector<SelectionResult>& rows) {
  out << kReportHeader << '\n';
  csv::write_row(out, {"dataset", "algorithm", "k", "c", "nloss_a", "nloss_b", "minmax",
                       "vanilla_residual", "wall_time", "columns"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.dataset, r.algorithm, std::to_string(r.k), std::to_string(r.c),
                         format(r.nloss_a), format(r.nloss_b), format(r.minmax),
                         format(r.vanilla_residual), format(r.wall_time),
                         join_columns(r.columns)});
  }
}

nlohmann::json to_json(const SelectionResult& r) {
  return {{"dataset", r.dataset},   {"algorithm", r.algorithm},
          {"k", r.k},               {"c", r.c},
          {"nloss_a", r.nloss_a},   {"nloss_b", r.nloss_b},
          {"minmax", r.minmax},     {"vanilla_residual", r.vanilla_residual},
          {"wall_time", r.wall_time}, {"columns", r.columns}};
}

nlohmann::json report_json(const std::vector<SelectionResult>& rows) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) j["rows"].push_back(to_json(r));
  return j;
}

std::vector<PriceOfFairnessRow> price_of_fairness_report(const GroupedData& data,
                                                         Index k_min, Index k_max,
                                                         std::uint64_t budget) {
  if (k_min < 1 || k_max < k_min) {
    throw PreconditionError("price of fairness needs 1 <= k_min <= k_max");
  }
  for (Index k = k_min; k <= k_max; ++k) {
    const auto count = binomial(static_cast<std::uint64_t>(data.cols()),
                                static_cast<std::uint64_t>(k));
    if (count > budget) throw BudgetExceededError(count, budget);
  }
  std::vector<PriceOfFairnessRow> rows;
  for (Index k = k_min; k <= k_max; ++k) {
    const MinMaxObjective objective(data, k);
    const auto vanilla = brute_force_css(data.matrix(), k, budget);
    const auto fair = brute_force_fair_minmax(objective, k, budget);
    PriceOfFairnessRow row;
    row.k = k;
    row.opt_columns = vanilla.columns;
    row.opt_m = vanilla.residual;
    row.opt_a = objective.nloss(Group::a, vanilla.columns);
    row.opt_b = objective.nloss(Group::b, vanilla.columns);
    row.minmax_opt = std::max(row.opt_a, row.opt_b);
    row.fair_columns = fair.columns;
    row.fair_m = fair.residual_m;
    row.fair_a = fair.nloss_a;
    row.fair_b = fair.nloss_b;
    row.minmax_fair = fair.minmax;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_pof_csv(std::ostream& out, const std::vector<PriceOfFairnessRow>& rows) {
  out << kPofHeader << '\n';
  csv::write_row(out, {"k", "opt_m", "opt_a", "opt_b", "minmax_opt", "fair_m", "fair_a",
                       "fair_b", "minmax_fair", "opt_columns", "fair_columns"});
  for (const auto& r : rows) {
    csv::write_row(out, {std::to_string(r.k), format(r.opt_m), format(r.opt_a),
                         format(r.opt_b), format(r.minmax_opt), format(r.fair_m),
                         format(r.fair_a), format(r.fair_b), format(r.minmax_fair),
                         join_columns(r.opt_columns), join_columns(r.fair_columns)});
  }
}

}  // namespace faircss
