#include "faircss/experiment.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "faircss/csv.hpp"
#include "faircss/errors.hpp"
#include "faircss/fair_rrqr.hpp"
#include "faircss/log.hpp"
#include "faircss/parallel.hpp"
#include "faircss/two_stage.hpp"

namespace faircss {

namespace {

constexpr std::array<const char*, 7> kAlgorithms = {
    "low-qr", "high-qr", "greedy", "random", "s-low-qr", "s-high-qr", "s-greedy"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

bool is_known_algorithm(const std::string& name) {
  return std::find(kAlgorithms.begin(), kAlgorithms.end(), name) != kAlgorithms.end();
}

bool is_two_stage(const std::string& name) { return name.rfind("s-", 0) == 0; }

SelectionResult run_cell(const GroupedData& data, const std::string& dataset,
                         const std::string& algorithm, Index k, ThetaPreset preset,
                         const RandomConfig& random) {
  const auto start = std::chrono::steady_clock::now();
  ColumnSet columns;
  Index c = k;
  if (algorithm == "low-qr") {
    columns = fair_low_rrqr(data, k).columns;
  } else if (algorithm == "high-qr") {
    columns = fair_high_rrqr(data, k).columns;
  } else if (algorithm == "greedy") {
    columns = greedy_minmax(data, k);
    std::sort(columns.begin(), columns.end());
  } else if (algorithm == "random") {
    const auto summary = random_subsets(data, k, random);
    std::vector<std::size_t> order(summary.objectives.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return summary.objectives[a] < summary.objectives[b];
    });
    columns = summary.subsets[order[(order.size() - 1) / 2]];
  } else if (is_two_stage(algorithm) && is_known_algorithm(algorithm)) {
    const double theta = theta_for(preset, k);
    const auto refiner = *parse_refiner(algorithm.substr(2));
    const auto report = two_stage_select(data, k, {theta, theta}, refiner);
    columns = report.columns;
    c = report.c;
  } else {
    throw PreconditionError("unknown algorithm '" + algorithm + "'");
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto result = evaluate_selection(data, columns, k, algorithm, dataset);
  result.c = c;
  result.wall_time = elapsed;
  return result;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j,
                                             const std::filesystem::path& base_dir) {
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };
  ExperimentConfig config;
  try {
    for (const auto& d : j.at("datasets")) {
      DatasetEntry entry;
      entry.name = d.at("name").get<std::string>();
      entry.data = resolve(d.at("data").get<std::string>());
      if (d.contains("spec")) entry.spec = resolve(d.at("spec").get<std::string>());
      config.datasets.push_back(std::move(entry));
    }
    config.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    config.ks = j.at("k").get<std::vector<Index>>();
    if (j.contains("theta_presets")) {
      config.presets.clear();
      for (const auto& p : j.at("theta_presets")) {
        const auto preset = parse_theta_preset(p.get<std::string>());
        if (!preset) {
          throw DataError(DataErrorCode::bad_spec,
                          "unknown theta preset '" + p.get<std::string>() + "'");
        }
        config.presets.push_back(*preset);
      }
    }
    config.random.repetitions = j.value("repetitions", config.random.repetitions);
    config.random.seed = j.value("seed", config.random.seed);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(DataErrorCode::bad_spec, std::string("invalid experiment config: ") +
                                                 e.what());
  }
  for (const auto& a : config.algorithms) {
    if (!is_known_algorithm(a)) {
      throw DataError(DataErrorCode::bad_spec, "unknown algorithm '" + a + "'");
    }
  }
  if (config.datasets.empty() || config.algorithms.empty() || config.ks.empty() ||
      config.presets.empty()) {
    throw DataError(DataErrorCode::bad_spec,
                    "experiment config needs datasets, algorithms, k and theta_presets");
  }
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open experiment config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(DataErrorCode::bad_spec, path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

std::vector<SelectionResult> run_experiment(const ExperimentConfig& config) {
  std::vector<GroupedData> data;
  for (const auto& d : config.datasets) {
    std::optional<PreprocessSpec> spec;
    if (d.spec) spec = PreprocessSpec::load(*d.spec);
    data.push_back(load_dataset(d.data, spec));
  }

  struct Cell {
    std::size_t dataset;
    Index k;
    std::string algorithm;
    ThetaPreset preset;
  };
  std::vector<Cell> cells;
  for (std::size_t d = 0; d < data.size(); ++d) {
    for (Index k : config.ks) {
      for (const auto& a : config.algorithms) {
        if (is_two_stage(a)) {
          for (auto p : config.presets) cells.push_back({d, k, a, p});
        } else {
          cells.push_back({d, k, a, config.presets.front()});
        }
      }
    }
  }

  std::vector<SelectionResult> rows(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const auto& cell = cells[i];
    const auto& name = config.datasets[cell.dataset].name;
    log::info(name + " k=" + std::to_string(cell.k) + " " + cell.algorithm);
    rows[i] = run_cell(data[cell.dataset], name, cell.algorithm, cell.k, cell.preset,
                       config.random);
    if (is_two_stage(cell.algorithm)) {
      rows[i].algorithm += std::string("@") + to_string(cell.preset);
    }
  });
  return rows;
}

Table2Row table2_row(const GroupedData& data, const std::string& dataset, Index k,
                     ThetaPreset preset, const RandomConfig& random) {
  Table2Row row;
  row.dataset = dataset;
  row.k = k;
  row.theta = theta_for(preset, k);
  std::map<std::string, double> loss;
  std::vector<std::string> names(kAlgorithms.begin(), kAlgorithms.end());
  std::vector<SelectionResult> results(names.size());
  parallel_for(names.size(), [&](std::size_t i) {
    results[i] = run_cell(data, dataset, names[i], k, preset, random);
  });
  for (std::size_t i = 0; i < names.size(); ++i) loss[names[i]] = results[i].minmax;
  row.c = results[4].c;
  row.low_qr = loss["low-qr"];
  row.high_qr = loss["high-qr"];
  row.greedy = loss["greedy"];
  row.random_median = random_subsets(data, k, random).median;
  row.s_low_qr = loss["s-low-qr"];
  row.s_high_qr = loss["s-high-qr"];
  row.s_greedy = loss["s-greedy"];
  return row;
}

void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows) {
  out << kTable2Header << '\n';
  csv::write_row(out, {"dataset", "k", "theta", "c", "low_qr", "high_qr", "greedy",
                       "random_median", "s_low_qr", "s_high_qr", "s_greedy"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.dataset, std::to_string(r.k), fmt(r.theta), std::to_string(r.c),
                         fmt(r.low_qr), fmt(r.high_qr), fmt(r.greedy), fmt(r.random_median),
                         fmt(r.s_low_qr), fmt(r.s_high_qr), fmt(r.s_greedy)});
  }
}

nlohmann::json to_json(const Table2Row& r) {
  return {{"dataset", r.dataset},     {"k", r.k},
          {"theta", r.theta},         {"c", r.c},
          {"low_qr", r.low_qr},       {"high_qr", r.high_qr},
          {"greedy", r.greedy},       {"random_median", r.random_median},
          {"s_low_qr", r.s_low_qr},   {"s_high_qr", r.s_high_qr},
          {"s_greedy", r.s_greedy}};
}

}  // namespace faircss
