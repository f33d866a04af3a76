#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "faircss/baselines.hpp"
#include "faircss/dataset.hpp"
#include "faircss/evaluation.hpp"
#include "faircss/fair_sampler.hpp"

namespace faircss {

/// Algorithm names used by sweeps and the CLI: low-qr, high-qr, greedy,
/// random, s-low-qr, s-high-qr, s-greedy (the s- ones are two-stage runs).
bool is_known_algorithm(const std::string& name);
bool is_two_stage(const std::string& name);

/// One (dataset, algorithm, k, theta) run. For random the reported subset is
/// the lower median of the repetitions (position (r - 1) / 2 after sorting by
/// objective), so minmax stays equal to max(nloss_a, nloss_b).
SelectionResult run_cell(const GroupedData& data, const std::string& dataset,
                         const std::string& algorithm, Index k, ThetaPreset preset,
                         const RandomConfig& random);

struct DatasetEntry {
  std::string name;
  std::filesystem::path data;
  std::optional<std::filesystem::path> spec;
};

/// Declarative sweep, e.g.
///   { "datasets": [{"name": "heart", "data": "../data/heart.csv",
///                   "spec": "../data/heart.json"}],
///     "algorithms": ["greedy", "s-low-qr"], "k": [5, 10],
///     "theta_presets": ["k-minus-half"], "repetitions": 100, "seed": 7 }
/// Relative paths resolve against the config file's directory.
struct ExperimentConfig {
  std::vector<DatasetEntry> datasets;
  std::vector<std::string> algorithms;
  std::vector<Index> ks;
  std::vector<ThetaPreset> presets{ThetaPreset::k_minus_half};
  RandomConfig random;

  static ExperimentConfig from_json(const nlohmann::json& j,
                                    const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& path);
};

/// Runs every cell on the worker pool. Rows come back ordered by dataset,
/// k, algorithm and then theta preset (single-stage algorithms run once per
/// k), independent of scheduling.
std::vector<SelectionResult> run_experiment(const ExperimentConfig& config);

/// One line of the comparison table: stage-one size and the MinMax loss of
/// every algorithm (random: median over the repetitions).
struct Table2Row {
  std::string dataset;
  Index k = 0;
  double theta = 0.0;
  Index c = 0;
  double low_qr = 0.0;
  double high_qr = 0.0;
  double greedy = 0.0;
  double random_median = 0.0;
  double s_low_qr = 0.0;
  double s_high_qr = 0.0;
  double s_greedy = 0.0;
};

Table2Row table2_row(const GroupedData& data, const std::string& dataset, Index k,
                     ThetaPreset preset, const RandomConfig& random);

inline constexpr const char* kTable2Header = "# faircss table2 v1";
void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows);
nlohmann::json to_json(const Table2Row& row);

}  // namespace faircss
