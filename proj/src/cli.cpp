#include "faircss/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "faircss/baselines.hpp"
#include "faircss/csv.hpp"
#include "faircss/dataset.hpp"
#include "faircss/errors.hpp"
#include "faircss/evaluation.hpp"
#include "faircss/experiment.hpp"
#include "faircss/fair_rrqr.hpp"
#include "faircss/fair_sampler.hpp"
#include "faircss/leverage.hpp"
#include "faircss/log.hpp"
#include "faircss/oracle.hpp"
#include "faircss/two_stage.hpp"

namespace faircss::cli {

namespace {

using nlohmann::json;

constexpr int kJsonSchema = 1;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct DataArgs {
  std::string data;
  std::string spec;
  std::string name;

  void attach(CLI::App* sub) {
    sub->add_option("--data", data, "Raw CSV or grouped data file")->required();
    sub->add_option("--spec", spec, "Preprocess spec (JSON) for raw CSV input");
    sub->add_option("--name", name, "Dataset label for reports (default: file stem)");
  }

  GroupedData load() const {
    std::optional<PreprocessSpec> s;
    if (!spec.empty()) s = PreprocessSpec::load(spec);
    return load_dataset(data, s);
  }

  std::string label() const {
    return name.empty() ? std::filesystem::path(data).stem().string() : name;
  }
};

// Writes to --out when given, else to the default stream.
void emit(std::ostream& out, const std::string& path,
          const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write " + path);
  writer(file);
  if (!file) throw IoError("write failed for " + path);
}

void emit_json(std::ostream& out, const std::string& path, json j, const char* kind) {
  json wrapped = {{"schema", kJsonSchema}, {"kind", kind}};
  wrapped.update(j);
  emit(out, path, [&](std::ostream& os) { os << wrapped.dump(2) << '\n'; });
}

// Either explicit --theta-a/--theta-b or a named --theta preset.
struct ThetaArgs {
  std::optional<double> theta_a;
  std::optional<double> theta_b;
  std::string preset;

  void attach(CLI::App* sub) {
    sub->add_option("--theta-a", theta_a, "Threshold for group A");
    sub->add_option("--theta-b", theta_b, "Threshold for group B");
    sub->add_option("--theta,--theta-preset", preset,
                    "Preset: k-1/2 (k-minus-half) or 3k/4 (three-quarter-k)");
  }

  SamplerConfig resolve(Index k) const {
    SamplerConfig config;
    if (!preset.empty()) {
      const auto p = parse_theta_preset(preset);
      if (!p) throw PreconditionError("unknown theta preset '" + preset + "'");
      config.theta_a = config.theta_b = theta_for(*p, k);
    } else {
      config.theta_a = config.theta_b = theta_for(ThetaPreset::k_minus_half, k);
    }
    if (theta_a) config.theta_a = *theta_a;
    if (theta_b) config.theta_b = *theta_b;
    return config;
  }
};

std::vector<std::size_t> parse_columns(const std::string& text) {
  std::vector<std::size_t> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto first = token.find_first_not_of(" ");
    if (first == std::string::npos) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(token, &used);
      if (v < 0 || token.find_first_not_of(" ", used) != std::string::npos) throw 0;
      out.push_back(static_cast<std::size_t>(v));
    } catch (...) {
      throw PreconditionError("bad column index '" + token + "' in --columns");
    }
  }
  if (out.empty()) throw PreconditionError("--columns is empty");
  return out;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io: return kIo;
    case ErrorKind::precondition: return kPrecondition;
    case ErrorKind::infeasible: return kInfeasible;
    case ErrorKind::budget: return kBudget;
    case ErrorKind::numerical: return kNumerical;
  }
  return kInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair column subset selection toolkit", "faircss"};
  app.require_subcommand(1);
  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "Progress messages on stderr");
  app.add_flag("-q,--quiet", quiet, "Suppress warnings");

  std::string out_path;
  Index k = 0;
  DataArgs data_args;
  ThetaArgs theta_args;

  // preprocess
  auto* preprocess = app.add_subcommand("preprocess", "Load a CSV and write grouped data");
  data_args.attach(preprocess);
  preprocess->add_option("--out", out_path, "Output path (default stdout)");

  // leverage
  bool sorted = false;
  auto* leverage = app.add_subcommand("leverage", "Rank-k leverage scores per group (CSV)");
  data_args.attach(leverage);
  leverage->add_option("--k", k, "Target rank")->required();
  leverage->add_flag("--sorted", sorted, "Each group's scores in descending order");
  leverage->add_option("--out", out_path, "Output path (default stdout)");

  // sample
  std::string trace_path;
  auto* sample = app.add_subcommand("sample", "Two-group leverage threshold sampler");
  data_args.attach(sample);
  theta_args.attach(sample);
  sample->add_option("--k", k, "Target rank")->required();
  sample->add_option("--trace", trace_path, "Write the per-pick trace CSV here");
  sample->add_option("--out", out_path, "Output path (default stdout)");

  // rrqr
  std::string variant = "low";
  std::string log_path;
  auto* rrqr = app.add_subcommand("rrqr", "Fair rank-revealing QR pivoting");
  data_args.attach(rrqr);
  rrqr->add_option("--variant", variant, "low or high")
      ->check(CLI::IsMember({"low", "high"}));
  rrqr->add_option("--k", k, "Columns to select")->required();
  rrqr->add_option("--log", log_path, "Write the pivot log CSV here");
  rrqr->add_option("--out", out_path, "Output path (default stdout)");

  // greedy
  auto* greedy = app.add_subcommand("greedy", "Greedy MinMax selection");
  data_args.attach(greedy);
  greedy->add_option("--k", k, "Columns to select")->required();
  greedy->add_option("--out", out_path, "Output path (default stdout)");

  // random
  RandomConfig random_config;
  auto* random = app.add_subcommand("random", "Random k-subsets baseline");
  data_args.attach(random);
  random->add_option("--k", k, "Columns per subset")->required();
  random->add_option("--reps", random_config.repetitions, "Repetitions")
      ->check(CLI::PositiveNumber);
  random->add_option("--seed", random_config.seed, "Seed");
  random->add_option("--out", out_path, "Output path (default stdout)");

  // two-stage
  std::string refiner_name = "low-qr";
  auto* two_stage = app.add_subcommand("two-stage", "Sampler followed by a refiner");
  data_args.attach(two_stage);
  theta_args.attach(two_stage);
  two_stage->add_option("--k", k, "Columns to select")->required();
  two_stage->add_option("--refiner", refiner_name, "low-qr, high-qr or greedy")
      ->check(CLI::IsMember({"low-qr", "high-qr", "greedy"}));
  two_stage->add_option("--out", out_path, "Output path (default stdout)");

  // brute
  std::string objective_name = "fair-minmax";
  std::uint64_t budget = kDefaultBudget;
  auto* brute = app.add_subcommand("brute", "Exhaustive oracles");
  data_args.attach(brute);
  theta_args.attach(brute);
  brute->add_option("--objective", objective_name, "css, fair-minmax or min-scores")
      ->check(CLI::IsMember({"css", "fair-minmax", "min-scores"}));
  brute->add_option("--k", k, "Subset size (rank for min-scores)")->required();
  brute->add_option("--budget", budget, "Maximum number of subsets to enumerate");
  brute->add_option("--out", out_path, "Output path (default stdout)");

  // eval
  std::string columns_text;
  bool pof = false;
  Index k_min = 0;
  Index k_max = 0;
  auto* eval = app.add_subcommand("eval", "Score a column set, or the price of fairness");
  data_args.attach(eval);
  eval->add_option("--k", k, "Target rank");
  eval->add_option("--columns", columns_text, "Comma-separated column indices");
  eval->add_flag("--pof", pof, "Price-of-fairness table over --k-min..--k-max (CSV)");
  eval->add_option("--k-min", k_min, "First k for --pof");
  eval->add_option("--k-max", k_max, "Last k for --pof");
  eval->add_option("--budget", budget, "Enumeration budget for --pof");
  eval->add_option("--out", out_path, "Output path (default stdout)");

  // experiment
  std::string config_path;
  bool table2 = false;
  std::string dataset_name;
  std::string data_dir = "data";
  std::string format = "csv";
  std::string preset_name = "k-minus-half";
  auto* experiment = app.add_subcommand("experiment", "Sweeps and comparison tables");
  experiment->add_option("--config", config_path, "Sweep config (JSON)");
  experiment->add_flag("--table2", table2, "One comparison-table row");
  experiment->add_option("--dataset", dataset_name, "Dataset name for --table2");
  experiment->add_option("--data-dir", data_dir,
                         "Directory holding <name>.csv and <name>.json");
  experiment->add_option("--k", k, "k for --table2");
  experiment->add_option("--theta-preset", preset_name, "k-minus-half or three-quarter-k");
  experiment->add_option("--reps", random_config.repetitions, "Random repetitions")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--seed", random_config.seed, "Seed");
  experiment->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  experiment->add_option("--out", out_path, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kUsage;
  }

  log::set_level(quiet ? log::Level::silent : verbose ? log::Level::info : log::Level::warning);
  log::set_sink(&err);

  try {
    if (preprocess->parsed()) {
      const auto data = data_args.load();
      log::info("loaded " + std::to_string(data.rows()) + " x " +
                std::to_string(data.cols()));
      emit(out, out_path, [&](std::ostream& os) { write_grouped(os, data); });
    } else if (leverage->parsed()) {
      const auto data = data_args.load();
      const auto pairs = leverage_pairs(data, k);
      emit(out, out_path, [&](std::ostream& os) {
        os << "# faircss leverage v1\n";
        if (!sorted) {
          csv::write_row(os, {"index", "alpha", "beta"});
          for (std::size_t i = 0; i < pairs.size(); ++i) {
            csv::write_row(os, {std::to_string(i), fmt(pairs.alphas[i]), fmt(pairs.betas[i])});
          }
          return;
        }
        auto order = [](const std::vector<double>& s) {
          std::vector<std::size_t> idx(s.size());
          for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
          std::stable_sort(idx.begin(), idx.end(),
                           [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
          return idx;
        };
        const auto oa = order(pairs.alphas);
        const auto ob = order(pairs.betas);
        csv::write_row(os, {"rank", "index_a", "alpha", "index_b", "beta"});
        for (std::size_t r = 0; r < pairs.size(); ++r) {
          csv::write_row(os, {std::to_string(r), std::to_string(oa[r]),
                              fmt(pairs.alphas[oa[r]]), std::to_string(ob[r]),
                              fmt(pairs.betas[ob[r]])});
        }
      });
    } else if (sample->parsed()) {
      const auto data = data_args.load();
      const auto config = theta_args.resolve(k);
      config.validate(k);
      const auto pairs = leverage_pairs(data, k);
      const auto result = fair_scores_sample(pairs, config);
      double mass_a = 0.0;
      double mass_b = 0.0;
      for (std::size_t i : result.columns) {
        mass_a += pairs.alphas[i];
        mass_b += pairs.betas[i];
      }
      emit_json(out, out_path,
                {{"k", k},
                 {"theta_a", config.theta_a},
                 {"theta_b", config.theta_b},
                 {"columns", result.columns},
                 {"c", result.columns.size()},
                 {"mass_a", mass_a},
                 {"mass_b", mass_b},
                 {"satisfied_first", to_string(result.trace.satisfied_first)},
                 {"phase_one", result.trace.phase_one_picks},
                 {"phase_two", result.trace.phase_two_picks}},
                "sample");
      if (!trace_path.empty()) {
        emit(out, trace_path, [&](std::ostream& os) {
          os << "# faircss sampler-trace v1\n";
          csv::write_row(os, {"phase", "order", "index", "alpha", "beta"});
          std::size_t order = 0;
          for (std::size_t i : result.trace.phase_one_picks) {
            csv::write_row(os, {"1", std::to_string(order++), std::to_string(i),
                                fmt(pairs.alphas[i]), fmt(pairs.betas[i])});
          }
          for (std::size_t i : result.trace.phase_two_picks) {
            csv::write_row(os, {"2", std::to_string(order++), std::to_string(i),
                                fmt(pairs.alphas[i]), fmt(pairs.betas[i])});
          }
        });
      }
    } else if (rrqr->parsed()) {
      const auto data = data_args.load();
      const auto result = variant == "low" ? fair_low_rrqr(data, k) : fair_high_rrqr(data, k);
      const auto eval_result =
          evaluate_selection(data, result.columns, k, variant + "-qr", data_args.label());
      emit_json(out, out_path,
                {{"variant", variant},
                 {"k", k},
                 {"columns", result.columns},
                 {"perm", result.state.global_perm},
                 {"residual_a", trailing_norm(result.state.qr_a, k, result.state.consumed_a)},
                 {"residual_b", trailing_norm(result.state.qr_b, k, result.state.consumed_b)},
                 {"evaluation", to_json(eval_result)}},
                "rrqr");
      if (!log_path.empty()) {
        emit(out, log_path, [&](std::ostream& os) {
          os << "# faircss pivot-log v1\n";
          csv::write_row(os, {"step", "group", "sigma_a", "sigma_b", "column", "from", "to"});
          for (const auto& s : result.state.log) {
            csv::write_row(os, {std::to_string(s.step), to_string(s.group), fmt(s.sigma_a),
                                fmt(s.sigma_b), std::to_string(s.column),
                                std::to_string(s.from), std::to_string(s.to)});
          }
        });
      }
    } else if (greedy->parsed()) {
      const auto data = data_args.load();
      const auto picks = greedy_minmax(data, k);
      ColumnSet columns = picks;
      std::sort(columns.begin(), columns.end());
      emit_json(out, out_path,
                {{"k", k},
                 {"columns", columns},
                 {"pick_order", picks},
                 {"evaluation", to_json(evaluate_selection(data, columns, k, "greedy",
                                                           data_args.label()))}},
                "greedy");
    } else if (random->parsed()) {
      const auto data = data_args.load();
      const auto summary = random_subsets(data, k, random_config);
      emit_json(out, out_path,
                {{"k", k},
                 {"repetitions", random_config.repetitions},
                 {"seed", random_config.seed},
                 {"mean", summary.mean},
                 {"median", summary.median},
                 {"min", summary.min},
                 {"objectives", summary.objectives},
                 {"subsets", summary.subsets}},
                "random");
    } else if (two_stage->parsed()) {
      const auto data = data_args.load();
      const auto config = theta_args.resolve(k);
      const auto report = two_stage_select(data, k, config, *parse_refiner(refiner_name));
      auto evaluation = evaluate_selection(data, report.columns, k, "s-" + refiner_name,
                                           data_args.label());
      evaluation.c = report.c;
      evaluation.wall_time = report.stage_one_seconds + report.stage_two_seconds;
      emit_json(out, out_path,
                {{"k", k},
                 {"theta_a", config.theta_a},
                 {"theta_b", config.theta_b},
                 {"refiner", refiner_name},
                 {"stage_one", report.stage_one},
                 {"c", report.c},
                 {"columns", report.columns},
                 {"minmax", report.minmax},
                 {"stage_one_seconds", report.stage_one_seconds},
                 {"stage_two_seconds", report.stage_two_seconds},
                 {"evaluation", to_json(evaluation)}},
                "two-stage");
    } else if (brute->parsed()) {
      const auto data = data_args.load();
      if (objective_name == "css") {
        const auto r = brute_force_css(data.matrix(), k, budget);
        emit_json(out, out_path,
                  {{"objective", "css"},
                   {"k", k},
                   {"columns", r.columns},
                   {"residual", r.residual},
                   {"evaluated", r.evaluated}},
                  "brute");
      } else if (objective_name == "fair-minmax") {
        const auto r = brute_force_fair_minmax(data, k, budget);
        emit_json(out, out_path,
                  {{"objective", "fair-minmax"},
                   {"k", k},
                   {"columns", r.columns},
                   {"minmax", r.minmax},
                   {"nloss_a", r.nloss_a},
                   {"nloss_b", r.nloss_b},
                   {"residual_a", r.residual_a},
                   {"residual_b", r.residual_b},
                   {"residual_m", r.residual_m},
                   {"evaluated", r.evaluated}},
                  "brute");
      } else {
        const auto config = theta_args.resolve(k);
        const auto r = brute_force_min_fairness_scores(leverage_pairs(data, k),
                                                       config.theta_a, config.theta_b, budget);
        emit_json(out, out_path,
                  {{"objective", "min-scores"},
                   {"k", k},
                   {"theta_a", config.theta_a},
                   {"theta_b", config.theta_b},
                   {"size", r.size},
                   {"witness", r.witness},
                   {"evaluated", r.evaluated}},
                  "brute");
      }
    } else if (eval->parsed()) {
      const auto data = data_args.load();
      if (pof) {
        if (k_min < 1 || k_max < k_min) {
          throw PreconditionError("--pof needs 1 <= --k-min <= --k-max");
        }
        const auto rows = price_of_fairness_report(data, k_min, k_max, budget);
        emit(out, out_path, [&](std::ostream& os) { write_pof_csv(os, rows); });
      } else {
        if (columns_text.empty() || k < 1) {
          throw PreconditionError("eval needs --k and --columns (or --pof)");
        }
        auto columns = parse_columns(columns_text);
        std::sort(columns.begin(), columns.end());
        columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
        const auto r = evaluate_selection(data, columns, k, "manual", data_args.label());
        emit_json(out, out_path, to_json(r), "eval");
      }
    } else if (experiment->parsed()) {
      if (table2) {
        if (dataset_name.empty() || k < 1) {
          throw PreconditionError("--table2 needs --dataset and --k");
        }
        const auto preset = parse_theta_preset(preset_name);
        if (!preset) throw PreconditionError("unknown theta preset '" + preset_name + "'");
        const std::filesystem::path dir(data_dir);
        const auto spec_path = dir / (dataset_name + ".json");
        std::optional<PreprocessSpec> spec;
        if (std::filesystem::exists(spec_path)) spec = PreprocessSpec::load(spec_path);
        const auto data = load_dataset(dir / (dataset_name + ".csv"), spec);
        const auto row = table2_row(data, dataset_name, k, *preset, random_config);
        if (format == "json") {
          emit_json(out, out_path, {{"rows", json::array({to_json(row)})}}, "table2");
        } else {
          emit(out, out_path, [&](std::ostream& os) { write_table2_csv(os, {row}); });
        }
      } else {
        if (config_path.empty()) throw PreconditionError("experiment needs --config or --table2");
        const auto rows = run_experiment(ExperimentConfig::load(config_path));
        if (format == "json") {
          const auto j = report_json(rows);
          emit(out, out_path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
        } else {
          emit(out, out_path, [&](std::ostream& os) { write_report_csv(os, rows); });
        }
      }
    }
  } catch (const DataError& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace faircss::cli
