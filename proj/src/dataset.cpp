#include "faircss/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "faircss/csv.hpp"
#include "faircss/errors.hpp"

namespace faircss {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string format_real(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::vector<std::string> string_list(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const auto& value = j.at(key);
  if (!value.is_array()) {
    throw DataError(DataErrorCode::bad_spec, std::string("spec key '") + key +
                                                 "' must be a list of column names");
  }
  for (const auto& item : value) out.push_back(item.get<std::string>());
  return out;
}

std::uint64_t fnv1a(std::uint64_t hash, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

PreprocessSpec PreprocessSpec::from_json(const nlohmann::json& j) {
  try {
    PreprocessSpec spec;
    spec.group_column = j.at("group_column").get<std::string>();
    const auto& a_value = j.at("group_a_value");
    spec.group_a_value = a_value.is_string() ? a_value.get<std::string>() : a_value.dump();
    spec.protected_columns = string_list(j, "protected");
    spec.excluded_columns = string_list(j, "exclude");
    if (j.contains("categoricals")) {
      const auto& cats = j.at("categoricals");
      if (cats.is_string()) {
        if (cats.get<std::string>() != "auto") {
          throw DataError(DataErrorCode::bad_spec,
                          "'categoricals' must be a list or the string \"auto\"");
        }
        spec.auto_categoricals = true;
      } else {
        spec.categorical_columns = string_list(j, "categoricals");
      }
    }
    spec.normalize = j.value("normalize", true);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(DataErrorCode::bad_spec, std::string("invalid preprocess spec: ") + e.what());
  }
}

PreprocessSpec PreprocessSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(DataErrorCode::bad_spec, path.string() + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json PreprocessSpec::to_json() const {
  nlohmann::json j;
  j["group_column"] = group_column;
  j["group_a_value"] = group_a_value;
  j["protected"] = protected_columns;
  j["exclude"] = excluded_columns;
  if (auto_categoricals) {
    j["categoricals"] = "auto";
  } else {
    j["categoricals"] = categorical_columns;
  }
  j["normalize"] = normalize;
  return j;
}

GroupedData::GroupedData(DenseMatrix matrix, std::vector<std::size_t> group_a_rows,
                         std::vector<std::size_t> group_b_rows,
                         std::vector<std::string> column_names)
    : matrix_(std::move(matrix)),
      a_(matrix_.select_rows(group_a_rows.empty() ? std::vector<std::size_t>{0}
                                                  : group_a_rows)),
      b_(matrix_.select_rows(group_b_rows.empty() ? std::vector<std::size_t>{0}
                                                  : group_b_rows)),
      rows_a_(std::move(group_a_rows)),
      rows_b_(std::move(group_b_rows)),
      names_(std::move(column_names)) {
  if (rows_a_.empty() || rows_b_.empty()) {
    throw DataError(DataErrorCode::empty_group,
                    std::string("group ") + (rows_a_.empty() ? "A" : "B") + " is empty");
  }
  const auto m = static_cast<std::size_t>(matrix_.rows());
  std::vector<char> seen(m, 0);
  for (const auto* rows : {&rows_a_, &rows_b_}) {
    if (!std::is_sorted(rows->begin(), rows->end())) {
      throw PreconditionError("group row indices must be sorted");
    }
    for (std::size_t r : *rows) {
      if (r >= m) throw PreconditionError("group row index " + std::to_string(r) + " out of range");
      if (seen[r]++) throw PreconditionError("row " + std::to_string(r) + " is in both groups");
    }
  }
  if (rows_a_.size() + rows_b_.size() != m) {
    throw PreconditionError("groups A and B must cover every row");
  }
  if (names_.empty()) {
    for (Index j = 0; j < matrix_.cols(); ++j) names_.push_back("c" + std::to_string(j));
  } else if (static_cast<Index>(names_.size()) != matrix_.cols()) {
    throw PreconditionError("column_names has " + std::to_string(names_.size()) +
                            " entries for " + std::to_string(matrix_.cols()) + " columns");
  }

  std::uint64_t h = 14695981039346656037ULL;
  const Index dims[2] = {matrix_.rows(), matrix_.cols()};
  h = fnv1a(h, dims, sizeof dims);
  h = fnv1a(h, matrix_.values().data(),
            static_cast<std::size_t>(matrix_.values().size()) * sizeof(double));
  h = fnv1a(h, rows_a_.data(), rows_a_.size() * sizeof(std::size_t));
  fingerprint_ = h;
}

GroupedData GroupedData::stack(const DenseMatrix& a, const DenseMatrix& b,
                               std::vector<std::string> column_names) {
  if (a.cols() != b.cols()) {
    throw PreconditionError("stack: group matrices differ in column count");
  }
  Eigen::MatrixXd m(a.rows() + b.rows(), a.cols());
  m.topRows(a.rows()) = a.values();
  m.bottomRows(b.rows()) = b.values();
  std::vector<std::size_t> rows_a(static_cast<std::size_t>(a.rows()));
  std::vector<std::size_t> rows_b(static_cast<std::size_t>(b.rows()));
  for (std::size_t i = 0; i < rows_a.size(); ++i) rows_a[i] = i;
  for (std::size_t i = 0; i < rows_b.size(); ++i) rows_b[i] = rows_a.size() + i;
  return GroupedData(DenseMatrix(std::move(m)), std::move(rows_a), std::move(rows_b),
                     std::move(column_names));
}

GroupedData GroupedData::restrict_columns(std::span<const std::size_t> columns) const {
  std::vector<std::string> names;
  names.reserve(columns.size());
  for (std::size_t c : columns) {
    if (c >= names_.size()) {
      throw PreconditionError("restrict_columns: column " + std::to_string(c) + " out of range");
    }
    names.push_back(names_[c]);
  }
  return GroupedData(matrix_.select_columns(columns), rows_a_, rows_b_, std::move(names));
}

DenseMatrix submatrix_rows(const GroupedData& data, Group group) {
  return data.group_matrix(group);
}

GroupedData parse_csv(std::istream& in, const PreprocessSpec& spec) {
  const auto records = csv::read(in);
  if (records.empty()) throw DataError(DataErrorCode::malformed_csv, "CSV has no header row");
  const auto& header = records.front().fields;
  const std::size_t width = header.size();

  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t j = 0; j < width; ++j) position.emplace(std::string(trim(header[j])), j);

  auto require = [&](const std::string& name, DataErrorCode code) {
    const auto it = position.find(name);
    if (it == position.end()) {
      throw DataError(code, "column '" + name + "' not found in CSV header", 1, name);
    }
    return it->second;
  };

  const std::size_t group_col = require(spec.group_column, DataErrorCode::missing_group_column);
  std::vector<char> dropped(width, 0);
  dropped[group_col] = 1;
  for (const auto& name : spec.protected_columns) {
    dropped[require(name, DataErrorCode::unknown_column)] = 1;
  }
  for (const auto& name : spec.excluded_columns) {
    dropped[require(name, DataErrorCode::unknown_column)] = 1;
  }
  std::vector<char> categorical(width, 0);
  for (const auto& name : spec.categorical_columns) {
    categorical[require(name, DataErrorCode::unknown_column)] = 1;
  }

  const std::size_t m = records.size() - 1;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].fields.size() != width) {
      throw DataError(DataErrorCode::malformed_csv,
                      "line " + std::to_string(records[i].line) + " has " +
                          std::to_string(records[i].fields.size()) + " fields, header has " +
                          std::to_string(width),
                      records[i].line);
    }
  }
  if (spec.auto_categoricals) {
    for (std::size_t j = 0; j < width; ++j) {
      if (dropped[j] || categorical[j]) continue;
      for (std::size_t i = 1; i < records.size(); ++i) {
        if (!parse_real(records[i].fields[j])) {
          categorical[j] = 1;
          break;
        }
      }
    }
  }

  std::vector<std::size_t> rows_a;
  std::vector<std::size_t> rows_b;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto value = trim(records[i].fields[group_col]);
    if (value.empty()) {
      throw DataError(DataErrorCode::malformed_csv,
                      "line " + std::to_string(records[i].line) + ": empty group value",
                      records[i].line, spec.group_column);
    }
    (value == spec.group_a_value ? rows_a : rows_b).push_back(i - 1);
  }
  if (rows_a.empty() || rows_b.empty()) {
    throw DataError(DataErrorCode::empty_group,
                    std::string("group ") + (rows_a.empty() ? "A" : "B") + " is empty: " +
                        spec.group_column + " = '" + spec.group_a_value + "' matches " +
                        std::to_string(rows_a.size()) + " of " + std::to_string(m) + " rows",
                    0, spec.group_column);
  }

  std::vector<Eigen::VectorXd> columns;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < width; ++j) {
    if (dropped[j]) continue;
    const std::string name(trim(header[j]));
    if (categorical[j]) {
      std::vector<std::string> levels;
      std::map<std::string, std::size_t> level_index;
      std::vector<std::size_t> codes(m);
      for (std::size_t i = 0; i < m; ++i) {
        std::string level(trim(records[i + 1].fields[j]));
        auto [it, inserted] = level_index.emplace(level, levels.size());
        if (inserted) levels.push_back(level);
        codes[i] = it->second;
      }
      for (std::size_t l = 0; l < levels.size(); ++l) {
        Eigen::VectorXd indicator = Eigen::VectorXd::Zero(static_cast<Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
          if (codes[i] == l) indicator(static_cast<Index>(i)) = 1.0;
        }
        columns.push_back(std::move(indicator));
        names.push_back(name + "=" + levels[l]);
      }
    } else {
      Eigen::VectorXd values(static_cast<Index>(m));
      for (std::size_t i = 0; i < m; ++i) {
        const auto& field = records[i + 1].fields[j];
        const auto parsed = parse_real(field);
        if (!parsed) {
          throw DataError(DataErrorCode::non_numeric_value,
                          "line " + std::to_string(records[i + 1].line) + ", column '" + name +
                              "': cannot parse '" + field + "' as a number",
                          records[i + 1].line, name);
        }
        values(static_cast<Index>(i)) = *parsed;
      }
      columns.push_back(std::move(values));
      names.push_back(name);
    }
  }
  if (columns.empty()) {
    throw DataError(DataErrorCode::bad_spec, "no feature columns left after preprocessing");
  }

  Eigen::MatrixXd matrix(static_cast<Index>(m), static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    matrix.col(static_cast<Index>(j)) = columns[j];
    if (spec.normalize) {
      const double norm = matrix.col(static_cast<Index>(j)).norm();
      if (norm == 0.0) {
        throw DataError(DataErrorCode::degenerate_column,
                        "column '" + names[j] + "' is identically zero and cannot be normalized",
                        0, names[j]);
      }
      matrix.col(static_cast<Index>(j)) /= norm;
    }
  }
  return GroupedData(DenseMatrix(std::move(matrix)), std::move(rows_a), std::move(rows_b),
                     std::move(names));
}

GroupedData load_csv(const std::filesystem::path& path, const PreprocessSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open data file " + path.string());
  return parse_csv(in, spec);
}

void write_grouped(std::ostream& out, const GroupedData& data) {
  out << kGroupedHeader << '\n';
  std::vector<std::string> row{"group"};
  row.insert(row.end(), data.column_names().begin(), data.column_names().end());
  csv::write_row(out, row);

  std::vector<char> in_a(static_cast<std::size_t>(data.rows()), 0);
  for (std::size_t r : data.group_rows(Group::a)) in_a[r] = 1;
  const auto& m = data.matrix().values();
  for (Index i = 0; i < m.rows(); ++i) {
    out << (in_a[static_cast<std::size_t>(i)] ? 'A' : 'B');
    for (Index j = 0; j < m.cols(); ++j) out << ',' << format_real(m(i, j));
    out << '\n';
  }
}

GroupedData read_grouped(std::istream& in) {
  std::string first;
  std::getline(in, first);
  if (!first.empty() && first.back() == '\r') first.pop_back();
  if (first != kGroupedHeader) {
    throw DataError(DataErrorCode::bad_format,
                    "expected header '" + std::string(kGroupedHeader) + "', got '" + first + "'",
                    1);
  }
  const auto records = csv::read(in);
  if (records.empty() || records.front().fields.empty() ||
      records.front().fields.front() != "group") {
    throw DataError(DataErrorCode::bad_format, "missing column header line", 2);
  }
  std::vector<std::string> names(records.front().fields.begin() + 1,
                                 records.front().fields.end());
  const std::size_t n = names.size();
  const std::size_t m = records.size() - 1;
  if (m == 0 || n == 0) throw DataError(DataErrorCode::bad_format, "grouped file has no data");

  Eigen::MatrixXd values(static_cast<Index>(m), static_cast<Index>(n));
  std::vector<std::size_t> rows_a;
  std::vector<std::size_t> rows_b;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& rec = records[i + 1];
    const std::size_t line = rec.line + 1;
    if (rec.fields.size() != n + 1) {
      throw DataError(DataErrorCode::bad_format,
                      "line " + std::to_string(line) + " has the wrong number of fields", line);
    }
    if (rec.fields[0] == "A") {
      rows_a.push_back(i);
    } else if (rec.fields[0] == "B") {
      rows_b.push_back(i);
    } else {
      throw DataError(DataErrorCode::bad_format,
                      "line " + std::to_string(line) + ": group tag must be A or B", line);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto parsed = parse_real(rec.fields[j + 1]);
      if (!parsed) {
        throw DataError(DataErrorCode::non_numeric_value,
                        "line " + std::to_string(line) + ": bad value '" + rec.fields[j + 1] + "'",
                        line, names[j]);
      }
      values(static_cast<Index>(i), static_cast<Index>(j)) = *parsed;
    }
  }
  return GroupedData(DenseMatrix(std::move(values)), std::move(rows_a), std::move(rows_b),
                     std::move(names));
}

void save_grouped(const std::filesystem::path& path, const GroupedData& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_grouped(out, data);
  if (!out) throw IoError("write failed for " + path.string());
}

GroupedData load_grouped(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open grouped data file " + path.string());
  return read_grouped(in);
}

GroupedData load_dataset(const std::filesystem::path& path,
                         const std::optional<PreprocessSpec>& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open data file " + path.string());
  std::string first;
  std::getline(in, first);
  if (!first.empty() && first.back() == '\r') first.pop_back();
  in.clear();
  in.seekg(0);
  if (first == kGroupedHeader) return read_grouped(in);
  if (!spec) {
    throw DataError(DataErrorCode::bad_spec,
                    path.string() + " is a raw CSV; a preprocess spec (--spec) is required");
  }
  return parse_csv(in, *spec);
}

}  // namespace faircss
