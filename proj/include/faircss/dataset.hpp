#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "faircss/matrix.hpp"

namespace faircss {

/// How a raw CSV becomes a grouped feature matrix.
///
/// JSON form:
///   { "group_column": "sex", "group_a_value": "1",
///     "protected": ["age"], "exclude": ["target"],
///     "categoricals": ["thal", "exang"] | "auto",
///     "normalize": true }
///
/// "exclude" is for non-protected columns that are still not features
/// (labels, ids). With "auto", every column holding a non-numeric value is
/// one-hot encoded.
struct PreprocessSpec {
  std::string group_column;
  std::string group_a_value;
  std::vector<std::string> protected_columns;
  std::vector<std::string> excluded_columns;
  std::vector<std::string> categorical_columns;
  bool auto_categoricals = false;
  bool normalize = true;

  static PreprocessSpec from_json(const nlohmann::json& j);
  static PreprocessSpec load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

/// Matrix M with its rows split into groups A and B. The two row lists are
/// disjoint, non-empty, sorted, and together cover every row.
class GroupedData {
 public:
  GroupedData(DenseMatrix matrix, std::vector<std::size_t> group_a_rows,
              std::vector<std::size_t> group_b_rows,
              std::vector<std::string> column_names = {});

  /// M = [a; b] with the first a.rows() rows in group A.
  static GroupedData stack(const DenseMatrix& a, const DenseMatrix& b,
                           std::vector<std::string> column_names = {});

  const DenseMatrix& matrix() const noexcept { return matrix_; }
  const DenseMatrix& group_matrix(Group g) const noexcept {
    return g == Group::a ? a_ : b_;
  }
  const std::vector<std::size_t>& group_rows(Group g) const noexcept {
    return g == Group::a ? rows_a_ : rows_b_;
  }
  const std::vector<std::string>& column_names() const noexcept { return names_; }

  Index rows() const noexcept { return matrix_.rows(); }
  Index cols() const noexcept { return matrix_.cols(); }

  /// Same rows and partition, keeping only `columns` in the given order.
  /// No renormalization.
  GroupedData restrict_columns(std::span<const std::size_t> columns) const;

  /// FNV-1a over dimensions, entries and partition. Used as a cache key.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  DenseMatrix matrix_;
  DenseMatrix a_;
  DenseMatrix b_;
  std::vector<std::size_t> rows_a_;
  std::vector<std::size_t> rows_b_;
  std::vector<std::string> names_;
  std::uint64_t fingerprint_ = 0;
};

/// Row slice of one group, columns in original order.
DenseMatrix submatrix_rows(const GroupedData& data, Group group);

/// Drops the group, protected and excluded columns. One-hot expands
/// categoricals (levels in first-appearance order, every level kept), parses
/// the rest as reals, then scales each column of the full matrix to unit L2
/// norm if requested.
GroupedData load_csv(const std::filesystem::path& path, const PreprocessSpec& spec);
GroupedData parse_csv(std::istream& in, const PreprocessSpec& spec);

/// Text round-trip format:
///   # faircss-grouped v1
///   group,<column names...>
///   A,<values...>
/// Values use the shortest decimal form that parses back to the same double,
/// so reloading is bit-exact.
inline constexpr const char* kGroupedHeader = "# faircss-grouped v1";

void write_grouped(std::ostream& out, const GroupedData& data);
GroupedData read_grouped(std::istream& in);
void save_grouped(const std::filesystem::path& path, const GroupedData& data);
GroupedData load_grouped(const std::filesystem::path& path);

/// Loads a grouped file if `path` starts with the format header, otherwise a
/// raw CSV, which then needs a spec.
GroupedData load_dataset(const std::filesystem::path& path,
                         const std::optional<PreprocessSpec>& spec);

}  // namespace faircss
